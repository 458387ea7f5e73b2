"""Hilbert series and polynomial data of homogeneous ideals.

Everything is exact integer arithmetic: the series numerator comes from the
initial ideal by the variable-pivot recursion, and Hilbert polynomials are
held in the binomial basis binom(tau, k) with integer coefficients (an
integer-valued polynomial always has such an expansion).

Dimension conventions are projective: the unit ideal has dimension -1 and
degree 0.  The genera list follows successive hyperplane sections: entry i is
(-1)^(dim - i) * (P_i(0) - 1) where P_i is the i-th difference of the Hilbert
polynomial, so a smooth surface reports (genus of surface, sectional genus,
point-section genus).
"""

from __future__ import annotations

import functools
from math import comb

from .groebner import Ideal

__all__ = [
    "HilbertPoly",
    "codim",
    "degree",
    "dimension",
    "genera",
    "hilbert_function",
    "hilbert_series_numerator",
    "series_data",
]

def _gbinom(n: int, k: int) -> int:
    """binom(n, k) for any integer n, k >= 0."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


def _minimal_monomials(gens) -> tuple:
    """Minimal generating set of a monomial ideal on exponent tuples."""
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(f, g)) for f in out):
            out.append(g)
    return tuple(out)


def _poly_add(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _poly_shift(a: tuple, k: int) -> tuple:
    return (0,) * k + tuple(a)


@functools.lru_cache(maxsize=None)
def _numerator_rec(gens: tuple, nvars: int) -> tuple:
    """Numerator of the Hilbert series of R/I for a monomial ideal I."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    # pairwise coprime generators form a regular sequence
    support = [set(i for i, e in enumerate(g) if e) for g in gens]
    if all(
        not (support[i] & support[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ):
        num = (1,)
        for g in gens:
            d = sum(g)
            num = _poly_add(num, tuple(-c for c in _poly_shift(num, d)))
        return num
    # pivot on the most frequent variable
    counts = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = counts.index(max(counts))
    # I : x_v
    quo = _minimal_monomials(
        tuple(tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gens)
    )
    # I + (x_v)
    xv = tuple(1 if i == v else 0 for i in range(nvars))
    add = _minimal_monomials(tuple(g for g in gens if g[v] == 0) + (xv,))
    n_quo = _numerator_rec(quo, nvars)
    n_add = _numerator_rec(add, nvars)
    return _poly_add(_poly_shift(n_quo, 1), n_add)


def _lead_exps(I: Ideal) -> tuple:
    ring = I.ring
    return tuple(ring.exps(E) for E in I.lead_Es())


def hilbert_series_numerator(I: Ideal) -> list[int]:
    """Coefficients of N with HS(R/I) = N(tau) / (1-tau)^nvars."""
    return list(_numerator_rec(_minimal_monomials(_lead_exps(I)), I.ring.nvars))


def series_data(I: Ideal):
    """(projective dimension, degree, reduced numerator N1, pole order D).

    HS(R/I) = N1(tau)/(1-tau)^D with N1(1) != 0;  projective dim = D - 1,
    degree = N1(1).  The unit ideal gives (-1, 0, (0,), 0).
    """
    num = _numerator_rec(_minimal_monomials(_lead_exps(I)), I.ring.nvars)
    nvars = I.ring.nvars
    if all(c == 0 for c in num):
        return (-1, 0, (0,), 0)
    cancels = 0
    cur = list(num)
    while cancels < nvars and sum(cur) == 0:
        # divide by (1 - tau): q_i = c_i + q_{i-1}
        q = []
        acc = 0
        for c in cur:
            acc += c
            q.append(acc)
        assert q[-1] == 0
        while q and q[-1] == 0:
            q.pop()
        cur = q if q else [0]
        cancels += 1
    D = nvars - cancels
    deg = sum(cur)
    if D == 0:
        # finite-length module: empty projective scheme
        return (-1, 0, tuple(cur), 0)
    return (D - 1, deg, tuple(cur), D)


def dimension(I: Ideal) -> int:
    """Projective dimension (dim of the scheme in P^(nvars-1)); empty = -1."""
    return series_data(I)[0]


def codim(I: Ideal) -> int:
    return (I.ring.nvars - 1) - dimension(I)


def degree(I: Ideal) -> int:
    return series_data(I)[1]


def hilbert_function(I: Ideal, d: int) -> int:
    """dim of (R/I)_d, exact, via series expansion of N/(1-tau)^nvars."""
    if d < 0:
        return 0
    num = _numerator_rec(_minimal_monomials(_lead_exps(I)), I.ring.nvars)
    n = I.ring.nvars
    total = 0
    for a, c in enumerate(num):
        if c and a <= d:
            total += c * comb(d - a + n - 1, n - 1)
    return total


class HilbertPoly:
    """Integer-valued polynomial stored as integer coords over binom(tau,k)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def from_series(cls, numerator, D: int) -> "HilbertPoly":
        """Hilbert polynomial of a series Sum c_a tau^a / (1-tau)^D."""
        # each c_a tau^a/(1-tau)^D contributes c_a * binom(tau - a + D - 1, D - 1)
        out: dict[int, int] = {}
        for a, c in enumerate(numerator):
            if not c:
                continue
            s = D - 1 - a
            for k in range(D):
                out[k] = out.get(k, 0) + c * _gbinom(s, D - 1 - k)
        size = max(out) + 1 if out else 0
        return cls(tuple(out.get(k, 0) for k in range(size)))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: int) -> int:
        return sum(c * _gbinom(m, k) for k, c in enumerate(self.coeffs))

    def shift(self, s: int) -> "HilbertPoly":
        """P(tau + s) via Vandermonde: binom(tau+s, r) = sum binom(s, r-k) binom(tau, k)."""
        out = [0] * len(self.coeffs)
        for r, c in enumerate(self.coeffs):
            if not c:
                continue
            for k in range(r + 1):
                out[k] += c * _gbinom(s, r - k)
        return HilbertPoly(out)

    def diff(self) -> "HilbertPoly":
        """First difference P(tau) - P(tau - 1)."""
        shifted = self.shift(-1)
        n = max(len(self.coeffs), len(shifted.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(shifted.coeffs) + [0] * (n - len(shifted.coeffs))
        return HilbertPoly([x - y for x, y in zip(a, b)])

    def __eq__(self, other):
        return isinstance(other, HilbertPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HilbertPoly({self.coeffs})"


def hilbert_polynomial(I: Ideal) -> HilbertPoly:
    dim, deg, num, D = series_data(I)
    if dim < 0:
        return HilbertPoly.zero()
    return HilbertPoly.from_series(num, D)


def genera(I: Ideal) -> list[int]:
    """Successive hyperplane-section genera, outermost scheme first."""
    dim, deg, num, D = series_data(I)
    if dim < 0:
        raise ValueError("genera need a nonempty projective scheme")
    P = HilbertPoly.from_series(num, D)
    out = []
    cur = P
    for i in range(dim + 1):
        out.append((-1) ** (dim - i) * (cur(0) - 1))
        cur = cur.diff()
    return out
