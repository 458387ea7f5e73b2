"""Multiplicity-condition matrices on degree-a plane forms, over F2.

For an orbit representative p = (u, v, 1) over GF(2^n) and a Hasse
multi-index alpha with |alpha| < m, the functional

    f  |->  (D^alpha f~)(u, v)        (f~ = f with z set to 1)

is GF(2^n)-valued and linear in f.  Writing its values on the degree-a
monomial basis in the F2-basis 1, t, ..., t^(n-1) turns each functional into
n rows over F2; stacking all orbits gives the condition matrix whose kernel
is exactly the degree-a piece of the F2 ideal of the fat orbits.  A single
representative accounts for the whole orbit because the conditions at the
conjugate points are the Frobenius conjugates of the conditions at p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitmat import BitMatrix
from .orbits import OrbitSpec, plane_ring
from .poly import Poly, Ring

__all__ = [
    "BitMatrix",
    "ConditionMatrix",
    "condition_matrix",
    "condition_row_count",
    "hasse_indices",
    "system_basis",
]


def hasse_indices(m: int) -> list[tuple[int, int]]:
    """Multi-indices alpha with |alpha| < m, ordered by (|alpha|, alpha1)."""
    return [(a1, s - a1) for s in range(m) for a1 in range(s, -1, -1)]


def condition_row_count(groups) -> int:
    return sum(spec.n * (m * (m + 1)) // 2 for spec, m in groups)


@dataclass
class ConditionMatrix:
    """Condition rows with provenance (group index, alpha, basis slot)."""

    matrix: BitMatrix
    provenance: list[tuple]
    monomials: list[tuple]
    degree: int
    ring: Ring

    def rank(self) -> int:
        return self.matrix.rank()

    def kernel_dim(self) -> int:
        return self.matrix.ncols - self.matrix.rank()


def condition_matrix(a: int, groups, ring: Ring | None = None) -> ConditionMatrix:
    """Rows = Hasse vanishing conditions of the fat orbits on degree-a forms.

    groups: iterable of (OrbitSpec, multiplicity); every representative must
    lie in the chart z = 1.
    """
    if ring is None:
        ring = plane_ring()
    monos = ring.monomials_of_degree(a)
    ncols = len(monos)
    rows: list[int] = []
    prov: list[tuple] = []
    for gi, (spec, m) in enumerate(groups):
        p = spec.point
        if p.coords[2] != 1:
            raise ValueError(
                f"representative {p} lies on z = 0; recoordinate into the z = 1 chart"
            )
        ctx = p.ctx
        n = ctx.n
        u, v = p.coords[0], p.coords[1]
        # power tables up to degree a
        upow = [1]
        vpow = [1]
        for _ in range(a):
            upow.append(ctx.mul(upow[-1], u))
            vpow.append(ctx.mul(vpow[-1], v))
        for alpha in hasse_indices(m):
            a1, a2 = alpha
            vals = []
            for i, j, _k in monos:
                # D^alpha (x^i y^j) = binom(i,a1) binom(j,a2) x^(i-a1) y^(j-a2)
                if (i & a1) == a1 and (j & a2) == a2:
                    vals.append(ctx.mul(upow[i - a1], vpow[j - a2]))
                else:
                    vals.append(0)
            for slot in range(n):
                row = 0
                for c, val in enumerate(vals):
                    if (val >> slot) & 1:
                        row |= 1 << c
                rows.append(row)
                prov.append((gi, alpha, slot))
    return ConditionMatrix(
        matrix=BitMatrix(rows, ncols),
        provenance=prov,
        monomials=monos,
        degree=a,
        ring=ring,
    )


def system_basis(cm: ConditionMatrix) -> list[Poly]:
    """Kernel vectors as degree-a forms; deterministic echelon basis."""
    ring = cm.ring
    out = []
    for vec in cm.matrix.kernel_basis():
        terms = []
        c = 0
        while vec:
            if vec & 1:
                terms.append((cm.monomials[c], 1))
            vec >>= 1
            c += 1
        out.append(ring.from_exp_terms(terms))
    return out
