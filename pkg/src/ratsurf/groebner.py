"""Buchberger engine over F2 and the ideal-theoretic toolbox.

All ideal computations here run over F2 coefficients: extension-field data
enters through an extra ring variable carrying its modulus, so sets of packed
monomial keys are a complete polynomial representation (coefficients are all
1) and addition is symmetric difference.

The engine uses sugar-ordered pair selection, Gebauer-Moeller pair pruning,
and heap-with-parity polynomial division.  Tie-breaking is deterministic
everywhere (input order, then monomial order), so reduced bases and
everything derived from them are byte-reproducible.
"""

from __future__ import annotations

import itertools
from heapq import heapify, heappop, heappush

from .bitmat import BitMatrix
from .poly import BITS, GREVLEX, Poly, Ring, block_order

__all__ = [
    "GroebnerAbort",
    "Ideal",
    "eliminate",
    "intersect",
    "kernel_of_map",
    "minimal_generators",
    "normal_form",
    "power",
    "quotient",
]

DEFAULT_MAX_PAIRS = 2_000_000


class GroebnerAbort(RuntimeError):
    """Pair/degree budget exceeded; an error state, never a wrong answer."""

    def __init__(self, message: str, pairs_done: int, basis_size: int):
        self.pairs_done = pairs_done
        self.basis_size = basis_size
        super().__init__(f"{message} (pairs={pairs_done}, basis={basis_size})")


def _require_f2(ring: Ring):
    if ring.ctx.n != 1:
        raise NotImplementedError(
            "Groebner computations run over F2; lift extension coefficients "
            "to a modulus variable instead"
        )


class _Engine:
    """One Buchberger run: basis of key-sets under a fixed order encoding."""

    def __init__(self, ring: Ring, descriptor: tuple, max_pairs: int):
        self.ring = ring
        self.ok = ring.order(descriptor)
        self.max_pairs = max_pairs
        self.sets: list[frozenset] = []
        self.leadkey: list[int] = []
        self.leadE: list[int] = []
        self.sugar: list[int] = []
        self.reducers: list[tuple] = []  # (divmask, leadE, leadkey, tail tuple)
        self.pairable: set[int] = set()
        self.pairs: dict[tuple, tuple] = {}  # (i,j) -> (sugar, lcmkey, lcmE)
        self.heap: list[tuple] = []
        self.pairs_done = 0

    # --- reduction ---

    def reduce_seed(self, seed) -> list[int]:
        """Full normal form of a parity-multiset of keys; descending keys."""
        ring = self.ring
        unkey_d = self.ok._unkey
        unkey = self.ok.unkey
        dmask_d = ring._dmask
        divmask = ring.divmask
        guard = ring.guard
        reducers = self.reducers
        heap = [-k for k in seed]
        heapify(heap)
        out = []
        pop = heappop
        push = heappush
        while heap:
            nk = pop(heap)
            parity = 1
            while heap and heap[0] == nk:
                pop(heap)
                parity ^= 1
            if not parity:
                continue
            k = -nk
            E = unkey_d.get(k)
            if E is None:
                E = unkey(k)
            mk = dmask_d.get(E)
            if mk is None:
                mk = divmask(E)
            Eg = E | guard
            for dm, lE, lk, tail in reducers:
                if dm & ~mk:
                    continue
                if (Eg - lE) & guard == guard:
                    q = k - lk
                    for m in tail:
                        push(heap, -(m + q))
                    break
            else:
                out.append(k)
        return out

    def reduce_seed_excluding(self, seed, skip_leadkey: int) -> list[int]:
        """Normal form against all basis elements except the one given."""
        saved = self.reducers
        self.reducers = [r for r in saved if r[2] != skip_leadkey]
        try:
            return self.reduce_seed(seed)
        finally:
            self.reducers = saved

    # --- basis / pair management (Gebauer-Moeller) ---

    def add(self, keys: list[int], sugar: int):
        ring = self.ring
        ok = self.ok
        h = len(self.sets)
        lead = keys[0]  # reduce_seed returns descending
        lE = ok.unkey(lead)
        self.sets.append(frozenset(keys))
        self.leadkey.append(lead)
        self.leadE.append(lE)
        self.sugar.append(sugar)
        tail = tuple(keys[1:])
        self.reducers.append((ring.divmask(lE), lE, lead, tail))
        self.reducers.sort(key=lambda r: (len(r[3]), r[2]))

        lcm = ring.lcm
        divides = ring.divides
        wdeg = ring.wdeg

        # candidate new pairs, smallest lcm first; a strict divisor of an lcm
        # always sorts earlier, so checking kept entries implements the
        # Gebauer-Moeller M/F criteria, and coprime entries (kept for the
        # domination test, never queued) implement the product criterion
        cands = []
        for g in self.pairable:
            lcE = lcm(self.leadE[g], lE)
            cands.append((ok.key(lcE), lcE, g))
        cands.sort()
        kept: list[tuple] = []  # (lcmE, g, coprime)
        for _, lcE, g in cands:
            if lcE == self.leadE[g] + lE:
                kept.append((lcE, g, True))
                continue
            if not any(divides(lcE2, lcE) for lcE2, _, _ in kept):
                kept.append((lcE, g, False))

        # chain criterion on queued pairs
        if self.pairs:
            stale = []
            for (i, j), (_, _, lcE_ij) in self.pairs.items():
                if (
                    divides(lE, lcE_ij)
                    and lcm(self.leadE[i], lE) != lcE_ij
                    and lcm(self.leadE[j], lE) != lcE_ij
                ):
                    stale.append((i, j))
            for key in stale:
                del self.pairs[key]

        # queue surviving non-coprime pairs
        for lcE, g, coprime in kept:
            if coprime:
                continue
            s = max(
                self.sugar[g] + wdeg(lcE) - wdeg(self.leadE[g]),
                sugar + wdeg(lcE) - wdeg(lE),
            )
            pk = (g, h)
            lck = ok.key(lcE)
            self.pairs[pk] = (s, lck, lcE)
            heappush(self.heap, (s, lck, g, h))

        # retire basis elements whose lead is now redundant
        for g in [g for g in self.pairable if divides(lE, self.leadE[g])]:
            self.pairable.discard(g)
        self.pairable.add(h)

    def add_generator(self, poly_keys, sugar: int):
        r = self.reduce_seed(poly_keys)
        if r:
            self.add(r, sugar)

    def spoly_seed(self, i: int, j: int):
        ok = self.ok
        lcE = self.ring.lcm(self.leadE[i], self.leadE[j])
        lck = ok.key(lcE)
        qi = lck - self.leadkey[i]
        qj = lck - self.leadkey[j]
        seed = [k + qi for k in self.sets[i]]
        seed.extend(k + qj for k in self.sets[j])
        return seed

    def run(self):
        while self.heap:
            s, lck, i, j = heappop(self.heap)
            entry = self.pairs.pop((i, j), None)
            if entry is None:
                continue  # pruned by chain criterion
            self.pairs_done += 1
            if self.pairs_done > self.max_pairs:
                raise GroebnerAbort(
                    "pair limit exceeded", self.pairs_done, len(self.sets)
                )
            r = self.reduce_seed(self.spoly_seed(i, j))
            if r:
                self.add(r, s)

    def reduced_basis(self) -> list[frozenset]:
        minimal = sorted(self.pairable, key=lambda i: self.leadkey[i])
        out = []
        for i in minimal:
            keys = self.reduce_seed_excluding(self.sets[i], self.leadkey[i])
            keys_fs = frozenset(keys)
            out.append(keys_fs)
            # refresh the reducer entry so later elements see the reduced tail
            lE = self.leadE[i]
            lead = self.leadkey[i]
            for idx, r in enumerate(self.reducers):
                if r[2] == lead:
                    tail = tuple(k for k in keys if k != lead)
                    self.reducers[idx] = (r[0], lE, lead, tail)
                    break
            self.sets[i] = keys_fs
        return out


def _poly_to_keys(p: Poly, ok) -> list[int]:
    key = ok.key
    return sorted((key(E) for E in p.terms), reverse=True)


def _keys_to_poly(ring: Ring, keys, ok) -> Poly:
    unkey = ok.unkey
    return Poly(ring, {unkey(k): 1 for k in keys})


class Ideal:
    """Ideal with cached reduced Groebner bases per monomial order."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        polys = []
        for g in gens:
            if not isinstance(g, Poly) or g.ring != ring:
                raise ValueError("generator ring mismatch")
            if g:
                polys.append(g)
        self.gens = tuple(polys)
        self._gb: dict[tuple, list[frozenset]] = {}

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.ring!r})"

    def _basis_sets(self, descriptor: tuple = GREVLEX, max_pairs: int | None = None):
        cached = self._gb.get(descriptor)
        if cached is None:
            _require_f2(self.ring)
            eng = _Engine(
                self.ring, descriptor, max_pairs or DEFAULT_MAX_PAIRS
            )
            ok = eng.ok
            for g in self.gens:
                eng.add_generator(_poly_to_keys(g, ok), g.weighted_degree())
            eng.run()
            cached = eng.reduced_basis()
            self._gb[descriptor] = cached
        return cached

    def groebner_basis(
        self, descriptor: tuple = GREVLEX, max_pairs: int | None = None
    ) -> list[Poly]:
        sets = self._basis_sets(descriptor, max_pairs)
        ok = self.ring.order(descriptor)
        return [_keys_to_poly(self.ring, s, ok) for s in sets]

    def lead_Es(self, descriptor: tuple = GREVLEX) -> list[int]:
        ok = self.ring.order(descriptor)
        return [ok.unkey(max(s)) for s in self._basis_sets(descriptor)]

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        sets = self._basis_sets()
        return len(sets) == 1 and sets[0] == frozenset((0,))


def normal_form(f: Poly, I: Ideal, descriptor: tuple = GREVLEX) -> Poly:
    """Remainder of f on division by the reduced basis; 0 iff f in I."""
    if f.ring != I.ring:
        raise ValueError("ring mismatch")
    sets = I._basis_sets(descriptor)
    ring = I.ring
    ok = ring.order(descriptor)
    eng = _Engine(ring, descriptor, DEFAULT_MAX_PAIRS)
    for s in sets:
        keys = sorted(s, reverse=True)
        lead = keys[0]
        lE = ok.unkey(lead)
        eng.reducers.append((ring.divmask(lE), lE, lead, tuple(keys[1:])))
    eng.reducers.sort(key=lambda r: (len(r[3]), r[2]))
    rem = eng.reduce_seed(_poly_to_keys(f, ok))
    return _keys_to_poly(ring, rem, ok)


def _cast(p: Poly, target: Ring) -> Poly:
    """Re-encode a polynomial by variable name; dropped names must be unused."""
    src = p.ring
    if src.names == target.names:
        return Poly(target, dict(p.terms))
    pos = [target.index.get(nm) for nm in src.names]
    d = {}
    for E, c in p.terms.items():
        exps = src.exps(E)
        out = [0] * target.nvars
        for i, e in enumerate(exps):
            if e:
                if pos[i] is None:
                    raise ValueError(
                        f"variable {src.names[i]} has no image in target ring"
                    )
                out[pos[i]] = e
        d[target.E(out)] = c
    return Poly(target, d)


def eliminate(I: Ideal, names) -> Ideal:
    """I intersected with the subring omitting the named variables."""
    names = list(names)
    ring = I.ring
    for nm in names:
        if nm not in ring.index:
            raise ValueError(f"unknown variable {nm}")
    keep = [nm for nm in ring.names if nm not in names]
    if len(keep) == len(ring.names):
        return I
    if not keep:
        raise ValueError("cannot eliminate every variable")
    elim_first = names + keep
    wmap = dict(zip(ring.names, ring.weights))
    work = Ring(elim_first, ring.ctx, weights=[wmap[nm] for nm in elim_first])
    J = Ideal(work, [_cast(g, work) for g in I.gens])
    sets = J._basis_sets(block_order(len(names)))
    ok = work.order(block_order(len(names)))
    emask = 0
    for nm in names:
        i = work.index[nm]
        emask |= ((1 << BITS) - 1) << (BITS * i)
    sub = Ring(keep, ring.ctx, weights=[wmap[nm] for nm in keep])
    out = []
    for s in sets:
        lead_E = ok.unkey(max(s))
        if lead_E & emask:
            continue
        p = _keys_to_poly(work, s, ok)
        assert all(E & emask == 0 for E in p.terms)
        out.append(_cast(p, sub))
    return Ideal(sub, out)


def intersect(*ideals: Ideal) -> Ideal:
    """Exact ideal intersection via an auxiliary scaling variable."""
    if not ideals:
        raise ValueError("need at least one ideal")
    result = ideals[0]
    for other in ideals[1:]:
        result = _intersect_pair(result, other)
    return result


def _intersect_pair(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ring mismatch")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    aux = "s_"
    while aux in ring.index:
        aux += "_"
    work = Ring((aux,) + ring.names, ring.ctx, weights=(1,) + ring.weights)
    s = work.var(aux)
    s1 = s + work.one
    gens = [s * _cast(g, work) for g in I.gens]
    gens.extend(s1 * _cast(g, work) for g in J.gens)
    K = eliminate(Ideal(work, gens), [aux])
    return Ideal(ring, [_cast(g, ring) for g in K.gens])


def power(I: Ideal, k: int) -> Ideal:
    """Ordinary ideal power: all k-fold products of generators."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    if k == 1 or I.is_zero():
        return I
    gens = []
    seen = set()
    for combo in itertools.combinations_with_replacement(I.gens, k):
        p = combo[0]
        for q in combo[1:]:
            p = p * q
        key = frozenset(p.terms)
        if p and key not in seen:
            seen.add(key)
            gens.append(p)
    return Ideal(I.ring, gens)


def _exact_divide(f: Poly, g: Poly) -> Poly:
    """Quotient f/g for f in the principal ideal (g); exact or ValueError."""
    ring = f.ring
    ok = ring.order(GREVLEX)
    gkeys = sorted((ok.key(E) for E in g.terms), reverse=True)
    glead = gkeys[0]
    rem = set(ok.key(E) for E in f.terms)
    quot = set()
    divides = ring.divides
    unkey = ok.unkey
    gleadE = unkey(glead)
    while rem:
        k = max(rem)
        E = unkey(k)
        if not divides(gleadE, E):
            raise ValueError("division is not exact")
        q = k - glead
        quot.add(q)
        rem.symmetric_difference_update(kk + q for kk in gkeys)
    return _keys_to_poly(ring, quot, ok)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """Colon ideal I : J = {f : f*J within I}."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ring mismatch")
    if J.is_zero():
        return Ideal(ring, [ring.one])
    result: Ideal | None = None
    for g in J.gens:
        K = _intersect_pair(I, Ideal(ring, [g]))
        Kg = Ideal(ring, [_exact_divide(f, g) for f in K.gens])
        result = Kg if result is None else _intersect_pair(result, Kg)
    return result


def kernel_of_map(images, target_names) -> Ideal:
    """Kernel of the ring map sending new variables to the given forms.

    Graph-ideal elimination: adjoin one variable per image, add var + image
    (characteristic 2), eliminate the source variables.  Every returned
    generator is checked to vanish under back-substitution.
    """
    if not images:
        raise ValueError("need at least one image")
    src = images[0].ring
    _require_f2(src)
    target_names = tuple(target_names)
    if len(target_names) != len(images):
        raise ValueError("one target variable per image required")
    d = images[0].degree()
    for f in images:
        if f.ring != src:
            raise ValueError("images live in different rings")
        if not f.is_homogeneous() or f.degree() != d:
            raise ValueError("images must be homogeneous of equal degree")
    for nm in target_names:
        if nm in src.index:
            raise ValueError(f"target name {nm} collides with source ring")
    comb = Ring(
        src.names + target_names,
        src.ctx,
        weights=(1,) * src.nvars + (d,) * len(target_names),
    )
    gens = []
    for nm, f in zip(target_names, images):
        gens.append(comb.var(nm) + _cast(f, comb))
    K = eliminate(Ideal(comb, gens), list(src.names))
    # hard invariant: substituting the images kills every generator
    mapping = dict(zip(target_names, images))
    for g in K.gens:
        if g.subst(mapping):
            raise AssertionError("kernel generator fails back-substitution")
    return K


class _Span:
    """Incremental F2 row space with fixed leftmost-pivot reduction."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, int] = {}  # pivot bit index -> row

    def reduce(self, row: int) -> int:
        while row:
            b = row & -row
            piv = self.pivots.get(b.bit_length() - 1)
            if piv is None:
                return row
            row ^= piv
        return 0

    def add(self, row: int) -> bool:
        row = self.reduce(row)
        if row == 0:
            return False
        self.pivots[(row & -row).bit_length() - 1] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _poly_bitrow(p: Poly, col_of_E: dict) -> int:
    row = 0
    for E in p.terms:
        row |= 1 << col_of_E[E]
    return row


def graded_piece(I: Ideal, d: int):
    """Row space of the degree-d slice of a homogeneous ideal.

    Returns (BitMatrix in reduced row echelon form, monomial E list defining
    the columns, descending default order).
    """
    ring = I.ring
    monos = ring.monomial_Es_of_degree(d)
    col_of = {E: i for i, E in enumerate(monos)}
    span = _Span()
    gb = I.groebner_basis()
    for g in gb:
        dg = g.degree()
        if dg > d:
            continue
        for M in ring.monomial_Es_of_degree(d - dg):
            span.add(_poly_bitrow(g.monomial_mul(M), col_of))
    rows = [span.pivots[b] for b in sorted(span.pivots)]
    mat = BitMatrix(rows, len(monos))
    return mat.row_space_matrix(), monos


def minimal_generators(I: Ideal) -> list[Poly]:
    """Degree-graded minimal generating set of a homogeneous ideal."""
    ring = I.ring
    gb = I.groebner_basis()
    if not gb:
        return []
    for g in gb:
        if not g.is_homogeneous():
            raise ValueError("minimal generators need a homogeneous ideal")
    ok = ring.order(GREVLEX)
    gb_sorted = sorted(gb, key=lambda g: (g.degree(), ok.key(g.lead_E())))
    chosen: list[Poly] = []
    degrees = sorted({g.degree() for g in gb_sorted})
    for d in degrees:
        monos = ring.monomial_Es_of_degree(d)
        col_of = {E: i for i, E in enumerate(monos)}
        span = _Span()
        for g in chosen:
            dg = g.degree()
            for M in ring.monomial_Es_of_degree(d - dg):
                span.add(_poly_bitrow(g.monomial_mul(M), col_of))
        for g in gb_sorted:
            if g.degree() != d:
                continue
            if span.add(_poly_bitrow(g, col_of)):
                chosen.append(g)
    return chosen
