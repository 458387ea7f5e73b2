"""Projective points over GF(2^n), Frobenius orbits, and their F2 ideals.

An orbit of a point with coordinates in GF(2^n) is a single Frobenius cycle;
its union is cut out by polynomials with F2 coefficients.  The F2 ideal of an
orbit with multiplicity m is computed by lifting the coordinates to a modulus
variable t: take the m-th power of the point ideal in F2[t,x,y,z], add the
modulus polynomial of t, and eliminate t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2n import FieldCtx, field_new
from .groebner import Ideal, _cast, eliminate, power
from .poly import Poly, Ring

__all__ = [
    "OrbitSpec",
    "ProjPoint",
    "orbit_ideal",
    "orbit_points",
    "orbits_disjoint",
    "point_from_json",
    "point_to_json",
    "plane_ring",
]


def plane_ring() -> Ring:
    """The coordinate ring F2[x, y, z] of the source plane."""
    return _PLANE


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^2 over GF(2^n), scaled so its last nonzero coordinate is 1."""

    ctx: FieldCtx
    coords: tuple[int, int, int]

    @classmethod
    def make(cls, ctx: FieldCtx, coords) -> "ProjPoint":
        c = list(coords)
        if len(c) != 3:
            raise ValueError("need 3 coordinates")
        if any(v < 0 or v >= (1 << ctx.n) for v in c):
            raise ValueError("coordinate out of field range")
        if not any(c):
            raise ValueError("(0:0:0) is not a projective point")
        last = max(i for i, v in enumerate(c) if v)
        inv = ctx.inv(c[last])
        if inv != 1:
            c = [ctx.mul(v, inv) for v in c]
        return cls(ctx, tuple(c))

    def frobenius(self) -> "ProjPoint":
        sq = self.ctx.sq
        return ProjPoint.make(self.ctx, tuple(sq(v) for v in self.coords))

    def render(self) -> list[str]:
        return [self.ctx.render(v) for v in self.coords]

    def __str__(self):
        return "(" + " : ".join(self.render()) + ")"


def point_from_json(obj: dict) -> ProjPoint:
    ctx = field_new(int(obj["n"]))
    coords = tuple(ctx.parse(s) for s in obj["coords"])
    return ProjPoint.make(ctx, coords)


def point_to_json(p: ProjPoint) -> dict:
    return {"n": p.ctx.n, "coords": p.render()}


@dataclass(frozen=True)
class OrbitSpec:
    """A representative plus the orbit degree demanded of it."""

    point: ProjPoint
    n: int

    @classmethod
    def of(cls, point: ProjPoint) -> "OrbitSpec":
        return cls(point, point.ctx.n)

    def orbit(self) -> list[ProjPoint]:
        return orbit_points(self.point)

    def is_full(self) -> bool:
        return len(self.orbit()) == self.n


def orbit_points(p: ProjPoint) -> list[ProjPoint]:
    """Distinct coordinatewise-Frobenius iterates, starting at p."""
    out = [p]
    q = p.frobenius()
    while q != p:
        out.append(q)
        q = q.frobenius()
    return out


def _point_linear_forms(ring: Ring, p: ProjPoint) -> list[Poly]:
    """Two independent linear forms over GF(2^n) vanishing at p."""
    last = max(i for i, v in enumerate(p.coords) if v)
    forms = []
    for i in range(3):
        if i == last:
            continue
        # var_i + p_i * var_last
        terms = [(tuple(1 if j == i else 0 for j in range(3)), 1)]
        if p.coords[i]:
            terms.append((tuple(1 if j == last else 0 for j in range(3)), p.coords[i]))
        forms.append(ring.from_exp_terms(terms))
    return forms


def _lift_to_modulus_var(f: Poly, work: Ring, ctx: FieldCtx) -> Poly:
    """Rewrite GF(2^n) coefficients as t-polynomials in F2[t,x,y,z]."""
    d: dict[int, int] = {}
    src = f.ring
    for E, c in f.terms.items():
        exps = src.exps(E)
        base = [0, exps[0], exps[1], exps[2]]
        k = 0
        cc = c
        while cc:
            if cc & 1:
                base[0] = k
                Et = work.E(base)
                if Et in d:
                    del d[Et]
                else:
                    d[Et] = 1
            cc >>= 1
            k += 1
    return Poly(work, d)


def orbit_ideal(p: ProjPoint, m: int, ring: Ring | None = None) -> Ideal:
    """F2 ideal of the orbit of p taken with multiplicity m."""
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    if ring is None:
        ring = plane_ring()
    ctx = p.ctx
    if ctx.n == 1:
        # F2-rational point: no descent needed
        I = Ideal(ring, _point_linear_forms(ring, p))
        return power(I, m) if m > 1 else I
    ext_ring = Ring(("x", "y", "z"), ctx)
    I_p = Ideal(ext_ring, _point_linear_forms(ext_ring, p))
    gens = I_p.gens if m == 1 else power(I_p, m).gens
    work = Ring(("t", "x", "y", "z"), field_new(1))
    lifted = [_lift_to_modulus_var(g, work, ctx) for g in gens]
    # the modulus polynomial of t
    mod_terms = []
    mm = ctx.modulus
    k = 0
    while mm:
        if mm & 1:
            mod_terms.append(((k, 0, 0, 0), 1))
        mm >>= 1
        k += 1
    lifted.append(work.from_exp_terms(mod_terms))
    elim = eliminate(Ideal(work, lifted), ["t"])
    return Ideal(ring, [_cast(g, ring) for g in elim.gens])


def orbits_disjoint(specs) -> bool:
    """True iff all orbits are full and pairwise disjoint as point sets.

    Points on a full orbit of degree d have minimal field of definition
    GF(2^d), so orbits demanding different degrees can only collide when one
    of them is not full; same-degree orbits share a context and are compared
    directly.
    """
    specs = list(specs)
    orbits = []
    for spec in specs:
        pts = spec.orbit()
        if len(pts) != spec.n:
            return False
        orbits.append(pts)
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            if specs[i].n != specs[j].n:
                continue
            if specs[i].point.ctx != specs[j].point.ctx:
                raise ValueError("same-degree orbits must share a field context")
            si = {q.coords for q in orbits[i]}
            if any(q.coords in si for q in orbits[j]):
                return False
    return True


_PLANE = Ring(("x", "y", "z"), field_new(1))
