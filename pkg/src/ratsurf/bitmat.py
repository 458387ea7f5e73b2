"""Dense F2 linear algebra on int bitrows.

Rows are Python ints; bit j is column j.  Pivoting is fixed (leftmost pivot
column, lowest available row) so echelon forms, kernels and ranks are
deterministic and reproducible.
"""

from __future__ import annotations

__all__ = ["BitMatrix"]


class BitMatrix:
    """rows x cols matrix over F2, one int per row."""

    __slots__ = ("rows", "ncols", "_rref")

    def __init__(self, rows, ncols: int):
        self.rows = list(rows)
        self.ncols = ncols
        self._rref = None

    def __repr__(self):
        return f"BitMatrix({len(self.rows)}x{self.ncols})"

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.ncols)

    def rref(self):
        """(pivot column list, reduced rows); cached."""
        if self._rref is not None:
            return self._rref
        work = self.rows[:]
        pivots = []
        pivot_rows = []
        nrows = len(work)
        row = 0
        for col in range(self.ncols):
            bit = 1 << col
            sel = None
            for r in range(row, nrows):
                if work[r] & bit:
                    sel = r
                    break
            if sel is None:
                continue
            work[row], work[sel] = work[sel], work[row]
            for r in range(nrows):
                if r != row and work[r] & bit:
                    work[r] ^= work[row]
            pivots.append(col)
            pivot_rows.append(work[row])
            row += 1
            if row == nrows:
                break
        self._rref = (pivots, pivot_rows)
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[0])

    def kernel_basis(self) -> list[int]:
        """Right kernel: bitvectors v (bit j = coord j) with M.v = 0."""
        pivots, rows = self.rref()
        pivset = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivset]
        basis = []
        for f in free:
            v = 1 << f
            fbit = 1 << f
            for prow, pcol in zip(rows, pivots):
                if prow & fbit:
                    v |= 1 << pcol
            basis.append(v)
        return basis

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for r, row in enumerate(self.rows):
            while row:
                low = row & -row
                c = low.bit_length() - 1
                cols[c] |= 1 << r
                row ^= low
        return BitMatrix(cols, len(self.rows))

    def left_kernel_basis(self) -> list[int]:
        """Vectors w (bit i = row i) with w.M = 0."""
        return self.transpose().kernel_basis()

    def mul_vec(self, v: int) -> int:
        out = 0
        for i, row in enumerate(self.rows):
            if (row & v).bit_count() & 1:
                out |= 1 << i
        return out

    def row_space_matrix(self) -> "BitMatrix":
        pivots, rows = self.rref()
        return BitMatrix(rows, self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )
