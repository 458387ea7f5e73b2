"""Sparse multivariate polynomials over GF(2^n) with packed-int monomials.

A monomial in v variables is a single int E: a 16-bit field per variable
holds its exponent (variable i at bits 16i..16i+15).  Multiplying monomials
is integer addition; divisibility is a two-op SWAR test against guard bits.
Monomial orders (grevlex, lex, block elimination orders) each map E to an
order key, again an int, chosen so that key comparison is order comparison
and key addition is monomial multiplication.  The Groebner engine works
entirely in key space; this module owns the encodings.

Polynomials store {E: coeff} dicts with nonzero int coefficients in the
ring's field context.  Hasse (divided-power) derivatives are supported,
which is what makes multiplicity conditions work in characteristic 2:
D^a x^b = binom(b, a) x^(b-a) with the binomial taken mod 2 via Lucas.
"""

from __future__ import annotations

import itertools

from .gf2n import FieldCtx, field_new

__all__ = [
    "BITS",
    "GREVLEX",
    "LEX",
    "Poly",
    "Ring",
    "block_order",
    "hasse_composition_check",
    "lucas_binom_mod2",
]

BITS = 16
_FMASK = (1 << BITS) - 1

GREVLEX = ("grevlex",)
LEX = ("lex",)


def block_order(k: int) -> tuple:
    """Elimination order: the first k variables dominate (grevlex blocks)."""
    return ("block", k)


def lucas_binom_mod2(m: int, k: int) -> int:
    """binom(m, k) mod 2: 1 iff k's bits are a submask of m's bits."""
    if k < 0 or k > m:
        return 0
    return 1 if (m & k) == k else 0


def hasse_composition_check(alpha: tuple, beta: tuple) -> int:
    """binom(alpha+beta, alpha) mod 2, componentwise (D^b . D^a factor)."""
    r = 1
    for a, b in zip(alpha, beta):
        r &= lucas_binom_mod2(a + b, a)
    return r


class _OrderKeys:
    """Two-way memoized map between exponent packs E and order keys."""

    __slots__ = ("ring", "descriptor", "_blocks", "_key", "_unkey")

    def __init__(self, ring: Ring, descriptor: tuple):
        self.ring = ring
        self.descriptor = descriptor
        n = ring.nvars
        if descriptor == GREVLEX:
            self._blocks = (tuple(range(n)),)
        elif descriptor == LEX:
            self._blocks = None
        elif descriptor[0] == "block":
            k = descriptor[1]
            if not 0 < k < n:
                raise ValueError(f"block({k}) needs 0 < k < {n}")
            self._blocks = (tuple(range(k)), tuple(range(k, n)))
        else:
            raise ValueError(f"unknown order {descriptor!r}")
        self._key = {0: 0}
        self._unkey = {0: 0}

    def key(self, E: int) -> int:
        k = self._key.get(E)
        if k is None:
            k = self._compute(E)
            self._key[E] = k
            self._unkey[k] = E
        return k

    def unkey(self, key: int) -> int:
        E = self._unkey.get(key)
        if E is None:
            E = self._decompute(key)
            self._unkey[key] = E
            self._key[E] = key
        return E

    def _compute(self, E: int) -> int:
        n = self.ring.nvars
        if self._blocks is None:  # lex: first variable most significant
            key = 0
            for i in range(n):
                key |= ((E >> (BITS * i)) & _FMASK) << (BITS * (n - 1 - i))
            return key
        key = 0
        for block in self._blocks:
            nb = len(block)
            deg = 0
            low = 0
            for pos, i in enumerate(block):
                e = (E >> (BITS * i)) & _FMASK
                deg += e
                low |= e << (BITS * pos)
            part = (deg << (BITS * nb)) - low
            key = (key << (BITS * (nb + 1))) | part
        return key

    def _decompute(self, key: int) -> int:
        n = self.ring.nvars
        E = 0
        if self._blocks is None:
            for i in range(n):
                e = (key >> (BITS * (n - 1 - i))) & _FMASK
                E |= e << (BITS * i)
            return E
        rest = key
        for block in reversed(self._blocks):
            nb = len(block)
            width = BITS * (nb + 1)
            part = rest & ((1 << width) - 1)
            rest >>= width
            low = (-part) % (1 << (BITS * nb))
            for pos, i in enumerate(block):
                e = (low >> (BITS * pos)) & _FMASK
                E |= e << (BITS * i)
        return E


class Ring:
    """Polynomial ring: named variables over a field context, default grevlex.

    weights enter sugar/degree bookkeeping for the Groebner engine (used to
    keep graph ideals of ring maps homogeneous); they do not alter orders.
    """

    def __init__(self, names, ctx: FieldCtx | None = None, weights=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.ctx = ctx if ctx is not None else field_new(1)
        self.nvars = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars:
            raise ValueError("weights length mismatch")
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.guard = 0
        for i in range(self.nvars):
            self.guard |= 1 << (BITS * i + BITS - 1)
        self._orders: dict[tuple, _OrderKeys] = {}
        self._deg = {0: 0}
        self._wdeg = {0: 0}
        self._exps = {0: (0,) * self.nvars}
        self._dmask = {0: 0}

    def __repr__(self):
        return f"Ring({','.join(self.names)}; {self.ctx!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.ctx == other.ctx
        )

    def __hash__(self):
        return hash((self.names, self.ctx))

    # --- monomial (E-pack) helpers ---

    def E(self, exps) -> int:
        E = 0
        for i, e in enumerate(exps):
            if e:
                if e < 0 or e >= (1 << (BITS - 1)):
                    raise ValueError(f"exponent {e} out of range")
                E |= e << (BITS * i)
        return E

    def exps(self, E: int) -> tuple:
        t = self._exps.get(E)
        if t is None:
            t = tuple((E >> (BITS * i)) & _FMASK for i in range(self.nvars))
            self._exps[E] = t
        return t

    def deg(self, E: int) -> int:
        d = self._deg.get(E)
        if d is None:
            d = sum(self.exps(E))
            self._deg[E] = d
        return d

    def wdeg(self, E: int) -> int:
        d = self._wdeg.get(E)
        if d is None:
            t = self.exps(E)
            d = sum(w * e for w, e in zip(self.weights, t))
            self._wdeg[E] = d
        return d

    def divides(self, Ea: int, Eb: int) -> bool:
        g = self.guard
        return ((Eb | g) - Ea) & g == g

    def lcm(self, Ea: int, Eb: int) -> int:
        if Ea == Eb:
            return Ea
        a = self.exps(Ea)
        b = self.exps(Eb)
        return self.E(tuple(x if x > y else y for x, y in zip(a, b)))

    def divmask(self, E: int) -> int:
        """Coarse per-variable threshold mask; fast non-divisibility filter."""
        m = self._dmask.get(E)
        if m is None:
            m = 0
            for i, e in enumerate(self.exps(E)):
                if e:
                    m |= 1 << (3 * i)
                    if e >= 2:
                        m |= 2 << (3 * i)
                        if e >= 4:
                            m |= 4 << (3 * i)
            self._dmask[E] = m
        return m

    def order(self, descriptor: tuple = GREVLEX) -> _OrderKeys:
        ok = self._orders.get(descriptor)
        if ok is None:
            ok = _OrderKeys(self, descriptor)
            self._orders[descriptor] = ok
        return ok

    def monomial_Es_of_degree(self, d: int) -> list[int]:
        """All E-packs of total degree d, descending in the default order."""
        if d < 0:
            return []
        out = []
        for combo in itertools.combinations_with_replacement(range(self.nvars), d):
            exps = [0] * self.nvars
            for i in combo:
                exps[i] += 1
            out.append(self.E(exps))
        ok = self.order(GREVLEX)
        out = sorted(set(out), key=ok.key, reverse=True)
        return out

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """Exponent tuples of total degree d; fixes condition-matrix columns."""
        return [self.exps(E) for E in self.monomial_Es_of_degree(d)]

    # --- polynomial constructors ---

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return Poly(self, {0: 1})

    def var(self, name: str) -> Poly:
        i = self.index[name]
        return Poly(self, {1 << (BITS * i): 1})

    def variables(self) -> list[Poly]:
        return [self.var(nm) for nm in self.names]

    def monomial(self, exps, coeff: int = 1) -> Poly:
        if coeff == 0:
            return self.zero
        return Poly(self, {self.E(exps): coeff})

    def from_exp_terms(self, terms) -> Poly:
        d: dict[int, int] = {}
        for exps, c in terms:
            if c:
                E = self.E(exps)
                c0 = d.get(E, 0) ^ c
                if c0:
                    d[E] = c0
                else:
                    del d[E]
        return Poly(self, d)

    def parse(self, text: str) -> Poly:
        """Parse sums of *-joined power products over F2, e.g. "x^2*y+z^3+1"."""
        if self.ctx.n != 1:
            raise ValueError("text parsing only supported over F2 rings")
        d: dict[int, int] = {}
        for chunk in text.replace(" ", "").split("+"):
            if not chunk:
                raise ValueError(f"empty term in {text!r}")
            if chunk == "0":
                continue
            exps = [0] * self.nvars
            for factor in chunk.split("*"):
                if factor == "1":
                    continue
                name, _, pw = factor.partition("^")
                if name not in self.index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                exps[self.index[name]] += int(pw) if pw else 1
            E = self.E(exps)
            if E in d:
                del d[E]
            else:
                d[E] = 1
        return Poly(self, d)


class Poly:
    """Immutable-by-convention sparse polynomial over its ring's field."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # --- basic ring ops ---

    def _check(self, other):
        if not isinstance(other, Poly) or other.ring != self.ring:
            raise ValueError("polynomial ring mismatch")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        add = self.ring.ctx.add
        for E, c in other.terms.items():
            c0 = add(d.get(E, 0), c)
            if c0:
                d[E] = c0
            else:
                d.pop(E, None)
        return Poly(self.ring, d)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        ctx = self.ring.ctx
        d: dict[int, int] = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        if ctx.n == 1:
            for Ea in a.terms:
                for Eb in b.terms:
                    E = Ea + Eb
                    if E in d:
                        del d[E]
                    else:
                        d[E] = 1
        else:
            mul = ctx.mul
            for Ea, ca in a.terms.items():
                for Eb, cb in b.terms.items():
                    E = Ea + Eb
                    c = mul(ca, cb)
                    c0 = d.get(E, 0) ^ c
                    if c0:
                        d[E] = c0
                    else:
                        del d[E]
        return Poly(self.ring, d)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = self.ring.one
        b = self
        while k:
            if k & 1:
                r = r * b
            if k > 1:
                b = b * b
            k >>= 1
        return r

    def scale(self, c: int) -> Poly:
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        mul = self.ring.ctx.mul
        return Poly(self.ring, {E: mul(cc, c) for E, cc in self.terms.items()})

    def monomial_mul(self, E: int, coeff: int = 1) -> Poly:
        if coeff == 0:
            return self.ring.zero
        if coeff == 1:
            return Poly(self.ring, {Et + E: c for Et, c in self.terms.items()})
        mul = self.ring.ctx.mul
        return Poly(self.ring, {Et + E: mul(c, coeff) for Et, c in self.terms.items()})

    # --- structure ---

    def degree(self) -> int:
        if not self.terms:
            return -1
        deg = self.ring.deg
        return max(deg(E) for E in self.terms)

    def weighted_degree(self) -> int:
        if not self.terms:
            return -1
        wdeg = self.ring.wdeg
        return max(wdeg(E) for E in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        deg = self.ring.deg
        it = iter(self.terms)
        d0 = deg(next(it))
        return all(deg(E) == d0 for E in it)

    def lead_E(self, descriptor: tuple = GREVLEX) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        ok = self.ring.order(descriptor)
        return ok.unkey(max(ok.key(E) for E in self.terms))

    def lead_coeff(self, descriptor: tuple = GREVLEX) -> int:
        return self.terms[self.lead_E(descriptor)]

    def sorted_terms(self, descriptor: tuple = GREVLEX):
        ok = self.ring.order(descriptor)
        return sorted(self.terms.items(), key=lambda t: ok.key(t[0]), reverse=True)

    # --- calculus and evaluation ---

    def hasse(self, alpha) -> Poly:
        """Divided-power derivative D^alpha; exact in characteristic 2."""
        if len(alpha) != self.ring.nvars:
            raise ValueError("alpha length != number of variables")
        A = self.ring.E(alpha)
        d = {}
        for E, c in self.terms.items():
            # Lucas componentwise: binom(e, a) odd iff a is a bit-submask of e
            if (E & A) == A:
                d[E - A] = c
        return Poly(self.ring, d)

    def subst(self, mapping: dict) -> Poly:
        """Ring homomorphism sending named variables to polynomials."""
        ring = self.ring
        target = None
        for p in mapping.values():
            if target is None:
                target = p.ring
            elif p.ring != target:
                raise ValueError("substitution images live in different rings")
        if target is None:
            target = ring
        if target.ctx != ring.ctx:
            raise ValueError("substitution across field contexts")
        pow_cache: dict[tuple, Poly] = {}

        def img_pow(name, e):
            key = (name, e)
            p = pow_cache.get(key)
            if p is None:
                p = mapping[name] ** e
                pow_cache[key] = p
            return p

        out = target.zero
        for E, c in self.terms.items():
            exps = ring.exps(E)
            factor = target.one.scale(c)
            rest_exps = [0] * target.nvars
            for i, e in enumerate(exps):
                if not e:
                    continue
                nm = ring.names[i]
                if nm in mapping:
                    factor = factor * img_pow(nm, e)
                else:
                    if nm not in target.index:
                        raise ValueError(f"variable {nm} missing from target ring")
                    rest_exps[target.index[nm]] += e
            if any(rest_exps):
                factor = factor.monomial_mul(target.E(rest_exps))
            out = out + factor
        return out

    def eval(self, values) -> int:
        """Evaluate at a full point; values are raw field ints."""
        ring = self.ring
        if len(values) != ring.nvars:
            raise ValueError("value count != number of variables")
        ctx = ring.ctx
        maxes = [0] * ring.nvars
        for E in self.terms:
            for i, e in enumerate(ring.exps(E)):
                if e > maxes[i]:
                    maxes[i] = e
        pows = []
        for v, m in zip(values, maxes):
            row = [1]
            for _ in range(m):
                row.append(ctx.mul(row[-1], v))
            pows.append(row)
        acc = 0
        for E, c in self.terms.items():
            val = c
            for i, e in enumerate(ring.exps(E)):
                if e:
                    val = ctx.mul(val, pows[i][e])
            acc ^= val
        return acc

    # --- rendering ---

    def render(self) -> str:
        if not self.terms:
            return "0"
        ctx = self.ring.ctx
        names = self.ring.names
        parts = []
        for E, c in self.sorted_terms():
            factors = []
            if c != 1:
                factors.append(f"({ctx.render(c)})")
            for i, e in enumerate(self.ring.exps(E)):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            parts.append("*".join(factors) if factors else "1")
        return "+".join(parts)

    __str__ = render

    def __repr__(self):
        return f"Poly({self.render()})"
