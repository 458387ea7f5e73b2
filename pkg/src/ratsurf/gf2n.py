"""Arithmetic in F2 and its extensions GF(2^n).

Field elements are plain Python ints: bit k is the coefficient of t^k, where
t is the residue class of the modulus variable.  A ``FieldCtx`` fixes the
extension degree n and an irreducible modulus of degree n; all arithmetic
reduces modulo that polynomial.  ``FieldElem`` is a thin operator-overloading
wrapper for the (ctx, int) pair.

Moduli for n = 5 and n = 14 are pinned so that named powers of t (used by the
bundled degree-11 example) mean the same element across runs; every other
degree falls back to the lexicographically smallest irreducible polynomial.
"""

from __future__ import annotations

import functools

__all__ = [
    "FieldCtx",
    "FieldElem",
    "ParseError",
    "ReducibleModulusError",
    "field_new",
    "parse_elem",
    "poly_text",
]

DEFAULT_MODULI = {
    5: 0b101111,            # t^5+t^3+t^2+t+1
    14: 0b110110101010011,  # t^14+t^13+t^11+t^10+t^8+t^6+t^4+t+1
}


class ReducibleModulusError(ValueError):
    """Raised when a field modulus splits; carries one nontrivial factor."""

    def __init__(self, modulus: int, factor: int):
        self.modulus = modulus
        self.factor = factor
        super().__init__(
            f"modulus {poly_text(modulus)} is reducible; "
            f"divisible by {poly_text(factor)}"
        )


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, m: int) -> int:
    dm = _pdeg(m)
    da = _pdeg(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = _pdeg(a)
    return a


def _pmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmulmod(a: int, b: int, m: int) -> int:
    return _pmod(_pmul(a, b), m)


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _x_pow_2k_mod(k: int, m: int) -> int:
    # t^(2^k) mod m by k squarings
    r = _pmod(0b10, m)
    for _ in range(k):
        r = _pmulmod(r, r, m)
    return r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _equal_degree_split(m: int, d: int) -> int:
    # All irreducible factors of m have degree d (>= 2 of them).  The additive
    # trace T(u) = u + u^2 + ... + u^(2^(d-1)) maps each residue field onto F2,
    # so gcd(T(u), m) is a proper factor for some u; scan u deterministically.
    u = 2
    while True:
        t = _pmod(u, m)
        acc = t
        for _ in range(d - 1):
            t = _pmulmod(t, t, m)
            acc ^= t
        for c in (acc, acc ^ 1):
            g = _pgcd(m, c)
            if 0 < _pdeg(g) < _pdeg(m):
                return g
        u += 1


def irreducible_factor(m: int) -> int | None:
    """Return a nontrivial factor of m over F2, or None if m is irreducible."""
    n = _pdeg(m)
    if n < 1:
        raise ValueError("modulus must have positive degree")
    if n == 1:
        return None
    if m & 1 == 0:
        return 0b10
    for d in range(1, n // 2 + 1):
        g = _pgcd(m, _x_pow_2k_mod(d, m) ^ 0b10)
        if _pdeg(g) > 0:
            if g != m:
                return g
            return _equal_degree_split(m, d)
    return None


def _smallest_irreducible(n: int) -> int:
    for low in range(1 << n):
        m = (1 << n) | low
        if irreducible_factor(m) is None:
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


def poly_text(p: int) -> str:
    """Render an F2[t] polynomial int as t^k terms, descending powers."""
    if p == 0:
        return "0"
    parts = []
    for k in range(_pdeg(p), -1, -1):
        if (p >> k) & 1:
            if k == 0:
                parts.append("1")
            elif k == 1:
                parts.append("t")
            else:
                parts.append(f"t^{k}")
    return "+".join(parts)


class FieldCtx:
    """Immutable GF(2^n) context: degree, modulus, and raw int arithmetic."""

    __slots__ = ("n", "modulus", "_mask", "_mul_table", "_inv_table")

    def __init__(self, n: int, modulus: int | None = None):
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = DEFAULT_MODULI.get(n) or _smallest_irreducible(n)
        if _pdeg(modulus) != n:
            raise ValueError(
                f"modulus {poly_text(modulus)} has degree {_pdeg(modulus)}, expected {n}"
            )
        factor = irreducible_factor(modulus)
        if factor is not None:
            raise ReducibleModulusError(modulus, factor)
        self.n = n
        self.modulus = modulus
        self._mask = (1 << n) - 1
        self._mul_table = None
        self._inv_table = None

    def __repr__(self):
        return f"GF(2^{self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.n, self.modulus))

    @property
    def order(self) -> int:
        return 1 << self.n

    # --- raw int arithmetic ---

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return _pmod(_pmul(a, b), self.modulus)

    def sq(self, a: int) -> int:
        return _pmod(_pmul(a, a), self.modulus)

    def inv(self, a: int) -> int:
        a = _pmod(a, self.modulus)
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        # extended Euclid in F2[t]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            dr = _pdeg(r0) - _pdeg(r1)
            if dr < 0:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            r0 ^= r1 << dr
            s0 ^= s1 << dr
        # r0 is now the gcd = 1 (modulus irreducible), s... track carefully:
        # loop ends when r1 == 0, so gcd is r0 and its cofactor is s0.
        assert r0 == 1
        return _pmod(s0, self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        a = _pmod(a, self.modulus)
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.sq(a)
            e >>= 1
        return r

    def frob(self, a: int) -> int:
        return self.sq(a)

    def tables(self):
        """Full multiplication and inverse tables; only for small n."""
        if self.n > 12:
            raise ValueError("tables only built for n <= 12")
        if self._mul_table is None:
            q = self.order
            self._mul_table = [
                [self.mul(a, b) for b in range(q)] for a in range(q)
            ]
            inv = [0] * q
            for a in range(1, q):
                inv[a] = self.inv(a)
            self._inv_table = inv
        return self._mul_table, self._inv_table

    # --- element wrappers ---

    def elem(self, v: int) -> FieldElem:
        return FieldElem(self, _pmod(v, self.modulus))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def gen(self) -> FieldElem:
        return self.elem(0b10)

    def parse(self, text: str) -> int:
        """Parse "t^k" sums ("0", "1", "t", "t^3+t+1") to a reduced int."""
        pos = 0
        total = 0
        n = len(text)
        saw_term = False
        while pos < n:
            while pos < n and text[pos] == " ":
                pos += 1
            if pos >= n:
                break
            c = text[pos]
            if c == "0":
                pos += 1
            elif c == "1":
                total ^= 1
                pos += 1
            elif c == "t":
                pos += 1
                k = 1
                if pos < n and text[pos] == "^":
                    pos += 1
                    start = pos
                    while pos < n and text[pos].isdigit():
                        pos += 1
                    if pos == start:
                        raise ParseError(text, pos, "expected exponent digits")
                    k = int(text[start:pos])
                total ^= self.pow(0b10, k)
            else:
                raise ParseError(text, pos, f"unexpected character {c!r}")
            saw_term = True
            while pos < n and text[pos] == " ":
                pos += 1
            if pos < n:
                if text[pos] != "+":
                    raise ParseError(text, pos, f"expected '+', got {text[pos]!r}")
                pos += 1
                if pos >= n:
                    raise ParseError(text, pos, "dangling '+'")
        if not saw_term:
            raise ParseError(text, 0, "empty element")
        return total

    def render(self, v: int) -> str:
        return poly_text(v)


@functools.lru_cache(maxsize=None)
def _cached_ctx(n: int, modulus: int) -> FieldCtx:
    return FieldCtx(n, modulus)


def field_new(n: int, modulus: int | None = None) -> FieldCtx:
    """Shared GF(2^n) context; pinned moduli for n in (5, 14)."""
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = DEFAULT_MODULI.get(n) or _smallest_irreducible(n)
    factor = irreducible_factor(modulus)
    if factor is not None:
        raise ReducibleModulusError(modulus, factor)
    return _cached_ctx(n, modulus)


class FieldElem:
    """An element of a fixed GF(2^n); value semantics."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = v

    def _check(self, other: FieldElem) -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"mixed field contexts {self.ctx} and {other.ctx}")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.v ^ other.v)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.v, other.v))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.v, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.v))

    def frobenius(self):
        return FieldElem(self.ctx, self.ctx.sq(self.v))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.ctx == other.ctx
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.ctx.n, self.ctx.modulus, self.v))

    def __bool__(self):
        return self.v != 0

    def __str__(self):
        return poly_text(self.v)

    def __repr__(self):
        return f"FieldElem({self.ctx!r}, {poly_text(self.v)})"


def parse_elem(ctx: FieldCtx, text: str) -> FieldElem:
    return FieldElem(ctx, ctx.parse(text))
