"""Buchberger's algorithm for ideals and submodules of free modules.

The kernel works on raw term dicts ``{exps: coeff}``.  A submodule of
``R^r`` is handled by prefixing every exponent vector with ``r`` one-hot
component slots and using a position-over-term order (lex on the slots,
component 0 largest, then the ring order).  Pairs whose leading terms sit
in different components are never formed, so the same code serves both
cases.

Pair selection is by sugar degree (computed with the ring grading), ties
broken by the smallest lcm in the order and then by generator indices.
Useless pairs are discarded with the Gebauer-Moeller update.
"""

from __future__ import annotations

import heapq
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from operator import add, sub
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactfield import PrimeField
from .polyring import Block, Exps, Lex, MonomialOrder, Polynomial, Ring

DEFAULT_BUDGET = 1_000_000


class BudgetExceeded(RuntimeError):
    """A Groebner computation ran past its reduction-step budget."""

    def __init__(self, budget: int, steps: int, what: str = "Groebner basis"):
        self.budget = budget
        self.steps = steps
        super().__init__(f"{what}: reduction budget of {budget} steps exhausted")


class Budget:
    """Mutable reduction-step counter shared by one computation."""

    __slots__ = ("limit", "steps")

    def __init__(self, limit: Optional[int] = DEFAULT_BUDGET):
        self.limit = limit
        self.steps = 0

    def spend(self, n: int = 1) -> None:
        self.steps += n
        if self.limit is not None and self.steps > self.limit:
            raise BudgetExceeded(self.limit, self.steps)


# running total across all computations, for reports
STATS = {"reductions": 0, "groebner_bases": 0}


_SCOPE: List[Budget] = []


@contextmanager
def budget_scope(limit: Optional[int] = DEFAULT_BUDGET):
    """Share one Budget among all computations in the block that were not given their own."""
    b = Budget(limit)
    _SCOPE.append(b)
    try:
        yield b
    finally:
        _SCOPE.pop()


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    if budget is None and _SCOPE:
        return _SCOPE[-1]
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# --------------------------------------------------------------------------
# raw kernel


def _mask(e: Exps) -> int:
    m = 0
    for i, a in enumerate(e):
        if a:
            m |= 1 << i
    return m


class _Entry:
    __slots__ = ("lm", "mask", "tail", "terms", "sugar")

    def __init__(self, terms: dict, lm: Exps, sugar: int):
        self.terms = terms
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = [(e, c) for e, c in terms.items() if e != lm]
        self.sugar = sugar


class _Kernel:
    """Per-computation state: order keys, field, budget."""

    def __init__(self, order: MonomialOrder, field, budget: Budget, weights: Sequence[int]):
        self.order = order
        self.field = field
        self.budget = budget
        self.weights = tuple(weights)
        self.p = field.p if isinstance(field, PrimeField) else None
        self._keys: Dict[Exps, tuple] = {}
        self._negkeys: Dict[Exps, tuple] = {}

    def key(self, e: Exps) -> tuple:
        k = self._keys.get(e)
        if k is None:
            k = self._keys[e] = self.order._key(e)
        return k

    def negkey(self, e: Exps) -> tuple:
        k = self._negkeys.get(e)
        if k is None:
            k = self._negkeys[e] = tuple(-x for x in self.key(e))
        return k

    def lm(self, terms: dict) -> Exps:
        return max(terms, key=self.key)

    def wdeg(self, e: Exps) -> int:
        return sum(map(lambda a, b: a * b, self.weights, e))

    def sugar_of(self, terms: dict) -> int:
        return max((self.wdeg(e) for e in terms), default=0)

    def monic(self, terms: dict, lm: Exps) -> dict:
        c = terms[lm]
        f = self.field
        if f.is_one(c):
            return terms
        inv = f.inv(c)
        if self.p is not None:
            p = self.p
            return {e: a * inv % p for e, a in terms.items()}
        return {e: a * inv for e, a in terms.items()}

    def make_entry(self, terms: dict, sugar: Optional[int] = None) -> _Entry:
        lm = self.lm(terms)
        terms = self.monic(terms, lm)
        return _Entry(terms, lm, self.sugar_of(terms) if sugar is None else sugar)

    @staticmethod
    def find_divisor(m: Exps, mmask: int, basis: List[_Entry]) -> Optional[_Entry]:
        for g in basis:
            if g.mask & ~mmask:
                continue
            gl = g.lm
            for a, b in zip(gl, m):
                if a > b:
                    break
            else:
                return g
        return None

    def reduce(self, f: dict, basis: List[_Entry], full: bool = True) -> dict:
        """Remainder of f on division by the (monic) basis entries."""
        if not f or not basis:
            return dict(f)
        p = dict(f)
        negkey = self.negkey
        heap = [(negkey(e), e) for e in p]
        heapq.heapify(heap)
        rem: dict = {}
        P = self.p
        steps = 0
        find = self.find_divisor
        push, pop = heapq.heappush, heapq.heappop
        try:
            while heap:
                _, m = pop(heap)
                c = p.get(m)
                if c is None:
                    continue
                del p[m]
                g = find(m, _mask(m), basis)
                if g is None:
                    rem[m] = c
                    if not full:
                        rem.update(p)
                        return rem
                    continue
                q = tuple(map(sub, m, g.lm))
                steps += 1
                if steps == 4096:
                    STATS["reductions"] += steps
                    self.budget.spend(steps)
                    steps = 0
                if P is not None:
                    for e, a in g.tail:
                        e2 = tuple(map(add, e, q))
                        old = p.get(e2)
                        if old is None:
                            p[e2] = -c * a % P
                            push(heap, (negkey(e2), e2))
                        else:
                            v = (old - c * a) % P
                            if v:
                                p[e2] = v
                            else:
                                del p[e2]
                else:
                    for e, a in g.tail:
                        e2 = tuple(map(add, e, q))
                        old = p.get(e2)
                        if old is None:
                            p[e2] = -c * a
                            push(heap, (negkey(e2), e2))
                        else:
                            v = old - c * a
                            if v:
                                p[e2] = v
                            else:
                                del p[e2]
        finally:
            STATS["reductions"] += steps
            self.budget.spend(steps)
        return rem

    def spoly(self, gi: _Entry, gj: _Entry, lcm: Exps) -> dict:
        qi = tuple(map(sub, lcm, gi.lm))
        qj = tuple(map(sub, lcm, gj.lm))
        out = {tuple(map(add, e, qi)): c for e, c in gi.tail}
        P = self.p
        for e, c in gj.tail:
            e2 = tuple(map(add, e, qj))
            v = out.get(e2, 0) - c
            if P is not None:
                v %= P
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        return out


def _component(e: Exps, ncomp: int) -> int:
    for i in range(ncomp):
        if e[i]:
            return i
    return -1


def _buchberger_raw(
    gens: Sequence[dict],
    kern: _Kernel,
    ncomp: int = 0,
    reduced: bool = True,
    normal: bool = False,
) -> List[dict]:
    """Reduced Groebner basis (monic, ascending leading monomials).

    Pairs are taken by sugar, or by smallest lcm first when ``normal``.
    """
    entries: List[_Entry] = []
    active: List[int] = []
    pairs: Dict[Tuple[int, int], Exps] = {}
    heap: list = []
    key = kern.key
    wdeg = kern.wdeg

    def lcm(a, b):
        return tuple(map(max, a, b))

    def coprime(a, b):
        return not any(x and y for x, y in zip(a, b))

    def divides(a, b):
        for x, y in zip(a, b):
            if x > y:
                return False
        return True

    def update(h: int) -> None:
        H = entries[h]
        hl = H.lm
        hc = _component(hl, ncomp)
        cand = []
        for g in active:
            gl = entries[g].lm
            if ncomp and _component(gl, ncomp) != hc:
                continue
            cand.append((g, lcm(hl, gl)))
        # chain criterion among the new pairs
        keep = []
        for idx, (g, L) in enumerate(cand):
            if coprime(hl, entries[g].lm):
                keep.append((g, L, True))
                continue
            dominated = False
            for jdx, (g2, L2) in enumerate(cand):
                if jdx == idx:
                    continue
                if divides(L2, L) and (L2 != L or jdx < idx):
                    # among equal lcms keep only the first
                    dominated = True
                    break
            if not dominated:
                keep.append((g, L, False))
        # old pairs made redundant by h
        for (a, b), L in list(pairs.items()):
            if divides(hl, L):
                la = lcm(entries[a].lm, hl)
                lb = lcm(entries[b].lm, hl)
                if la != L and lb != L:
                    del pairs[(a, b)]
        # product criterion
        for g, L, cop in keep:
            if cop:
                continue
            G = entries[g]
            s = max(G.sugar + wdeg(tuple(map(sub, L, G.lm))), H.sugar + wdeg(tuple(map(sub, L, hl))))
            pr = (g, h)
            pairs[pr] = L
            if normal:
                heapq.heappush(heap, (key(L), s, g, h, L))
            else:
                heapq.heappush(heap, (s, key(L), g, h, L))
        active[:] = [g for g in active if not divides(hl, entries[g].lm)]
        active.append(h)

    def add(terms: dict, sugar: Optional[int]) -> None:
        e = kern.make_entry(terms, sugar)
        entries.append(e)
        update(len(entries) - 1)

    # seed with the inputs, smallest first, each reduced by what came before
    seeds = [dict(g) for g in gens if g]
    seeds.sort(key=lambda t: key(kern.lm(t)))
    for t in seeds:
        r = kern.reduce(t, [entries[i] for i in active])
        if r:
            add(r, kern.sugar_of(t))

    while heap:
        a, b, i, j, L = heapq.heappop(heap)
        s = b if normal else a
        if pairs.get((i, j)) is None:
            continue
        del pairs[(i, j)]
        sp = kern.spoly(entries[i], entries[j], L)
        r = kern.reduce(sp, [entries[k] for k in active])
        if r:
            add(r, s)

    basis = [entries[i] for i in active]
    if not reduced:
        return [e.terms for e in basis]
    # interreduce tails
    basis.sort(key=lambda e: key(e.lm))
    out = []
    for idx, e in enumerate(basis):
        others = basis[:idx] + basis[idx + 1 :]
        tail = kern.reduce({t: c for t, c in e.tail}, others)
        tail[e.lm] = e.terms[e.lm]
        out.append(tail)
    STATS["groebner_bases"] += 1
    return out


# --------------------------------------------------------------------------
# ideals


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    ring: Ring
    order: MonomialOrder
    basis: List[Polynomial]
    reduced: bool = True
    steps: int = 0
    _entries: Optional[List[_Entry]] = dc_field(default=None, repr=False, compare=False)
    _kernel: Optional[_Kernel] = dc_field(default=None, repr=False, compare=False)

    def _kern(self, budget=None) -> Tuple[_Kernel, List[_Entry]]:
        if self._kernel is None:
            self._kernel = _Kernel(self.order, self.ring.field, Budget(None), self.ring.grading)
            self._entries = [self._kernel.make_entry(dict(g.terms)) for g in self.basis]
        if budget is not None:
            self._kernel.budget = _as_budget(budget)
        return self._kernel, self._entries

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of f (zero iff f lies in the ideal)."""
        if f.ring != self.ring:
            from .exactfield import ContextError

            raise ContextError(f"ring mismatch: {f.ring} vs {self.ring}")
        kern, entries = self._kern()
        return Polynomial(self.ring, kern.reduce(f.terms, entries))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def leading_monomials(self) -> List[Exps]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def buchberger(
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    budget=None,
    ring: Optional[Ring] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            from .exactfield import ContextError

            raise ContextError("generators from different rings")
    order = order or ring.order
    b = _as_budget(budget)
    start = b.steps
    kern = _Kernel(order, ring.field, b, ring.grading)
    # sugar degrees mean little for lex; there the smallest lcm goes first
    raw = _buchberger_raw([g.terms for g in gens], kern, normal=isinstance(order, Lex))
    basis = [Polynomial(ring, t) for t in raw]
    G = GroebnerBasis(ring, order, basis, True, b.steps - start)
    for rec in _RECORDERS:
        rec.append(G)
    return G


_RECORDERS: List[List[GroebnerBasis]] = []


@contextmanager
def record_bases():
    """Collect every ideal Groebner basis computed inside the block."""
    out: List[GroebnerBasis] = []
    _RECORDERS.append(out)
    try:
        yield out
    finally:
        _RECORDERS.remove(out)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    order = order or f.ring.order
    kern = _Kernel(order, f.ring.field, Budget(None), f.ring.grading)
    ef, eg = kern.make_entry(dict(f.terms)), kern.make_entry(dict(g.terms))
    return Polynomial(f.ring, kern.spoly(ef, eg, tuple(map(max, ef.lm, eg.lm))))


def check_buchberger_criterion(G: GroebnerBasis) -> bool:
    """Every S-polynomial of the basis reduces to zero (direct check, no criteria)."""
    kern, entries = G._kern()
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            L = tuple(map(max, entries[i].lm, entries[j].lm))
            if kern.reduce(kern.spoly(entries[i], entries[j], L), entries):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """Leading coefficients 1 and no term divisible by another leading monomial."""
    lms = G.leading_monomials()
    for g, lm in zip(G.basis, lms):
        if not G.ring.field.is_one(g.terms[lm]):
            return False
        for e in g.terms:
            for other in lms:
                if other != lm and all(a <= b for a, b in zip(other, e)):
                    return False
    return True


# --------------------------------------------------------------------------
# modules


class ModuleElement:
    """Element of the free module R^r, stored as a tuple of polynomials."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Polynomial]):
        self.components = tuple(components)

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other):
        return ModuleElement([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return ModuleElement([a - b for a, b in zip(self, other)])

    def scale(self, f) -> "ModuleElement":
        return ModuleElement([c * f for c in self])

    def dot(self, gens: Sequence[Polynomial]) -> Polynomial:
        out = self.ring.zero()
        for a, g in zip(self, gens):
            if a:
                out = out + a * g
        return out

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def pot_order(rank: int, order: MonomialOrder) -> MonomialOrder:
    """Position-over-term extension of ``order`` to ``rank`` one-hot slots."""
    return Block(rank, Lex(), order)


def _encode(v: ModuleElement, rank: int) -> dict:
    out = {}
    for i, c in enumerate(v.components):
        slot = (0,) * i + (1,) + (0,) * (rank - i - 1)
        for e, a in c.terms.items():
            out[slot + e] = a
    return out


def _decode(terms: dict, rank: int, ring: Ring) -> ModuleElement:
    comps: List[dict] = [{} for _ in range(rank)]
    for e, a in terms.items():
        comps[_component(e, rank)][e[rank:]] = a
    return ModuleElement([Polynomial(ring, c) for c in comps])


@dataclass
class ModuleGroebnerBasis:
    ring: Ring
    rank: int
    order: MonomialOrder
    basis: List[ModuleElement]
    shifts: Tuple[int, ...] = ()
    _kernel: Optional[_Kernel] = dc_field(default=None, repr=False, compare=False)
    _entries: Optional[List[_Entry]] = dc_field(default=None, repr=False, compare=False)

    def _kern(self):
        if self._kernel is None:
            weights = (self.shifts or (0,) * self.rank) + self.ring.grading
            self._kernel = _Kernel(pot_order(self.rank, self.order), self.ring.field, Budget(None), weights)
            self._entries = [self._kernel.make_entry(_encode(v, self.rank)) for v in self.basis]
        return self._kernel, self._entries

    def reduce(self, v: ModuleElement) -> ModuleElement:
        kern, entries = self._kern()
        return _decode(kern.reduce(_encode(v, self.rank), entries), self.rank, self.ring)

    def contains(self, v: ModuleElement) -> bool:
        return self.reduce(v).is_zero()

    def check_criterion(self) -> bool:
        kern, entries = self._kern()
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                if _component(entries[i].lm, self.rank) != _component(entries[j].lm, self.rank):
                    continue
                L = tuple(map(max, entries[i].lm, entries[j].lm))
                if kern.reduce(kern.spoly(entries[i], entries[j], L), entries):
                    return False
        return True


def module_buchberger(
    elements: Sequence[ModuleElement],
    rank: int,
    order: Optional[MonomialOrder] = None,
    budget=None,
    ring: Optional[Ring] = None,
    shifts: Optional[Sequence[int]] = None,
) -> ModuleGroebnerBasis:
    """Groebner basis of a submodule of R^rank (position over term).

    ``shifts`` are degrees attached to the basis vectors; they only steer
    the sugar heuristic.
    """
    for v in elements:
        if v.rank != rank:
            raise ValueError(f"element of rank {v.rank} in a rank-{rank} module")
    if ring is None:
        ring = elements[0].ring
    order = order or ring.order
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    kern = _Kernel(pot_order(rank, order), ring.field, _as_budget(budget), shifts + ring.grading)
    raw = _buchberger_raw([_encode(v, rank) for v in elements], kern, ncomp=rank)
    basis = [_decode(t, rank, ring) for t in raw]
    return ModuleGroebnerBasis(ring, rank, order, basis, shifts)


def vector_degree(v: ModuleElement, shifts: Sequence[int], grading: Sequence[int]) -> int:
    """Degree of a vector in a graded free module (largest over its terms)."""
    best = None
    for c, sh in zip(v.components, shifts):
        for e in c.terms:
            d = sh + sum(a * w for a, w in zip(e, grading))
            if best is None or d > best:
                best = d
    return 0 if best is None else best


def module_syzygies(
    vectors: Sequence[ModuleElement],
    rank: int,
    order: Optional[MonomialOrder] = None,
    budget=None,
    ring: Optional[Ring] = None,
    shifts: Optional[Sequence[int]] = None,
) -> List[ModuleElement]:
    """Generators of {a : sum a_i * vectors_i = 0} for vectors in R^rank.

    Buchberger runs on the vectors (v_i, e_i) in R^(rank+n) with the
    first ``rank`` slots dominating, so the cofactors ride along with
    every reduction; basis elements whose first slots vanished are exactly
    the relations, and they form a Groebner basis of the syzygy module.
    """
    n = len(vectors)
    if n == 0:
        return []
    if ring is None:
        ring = vectors[0].ring
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    zero, one = ring.zero(), ring.one()
    grading = ring.grading
    ext = []
    degs = []
    for i, v in enumerate(vectors):
        if v.rank != rank:
            raise ValueError(f"vector of rank {v.rank} in a rank-{rank} module")
        comps = list(v.components) + [zero] * n
        comps[rank + i] = one
        ext.append(ModuleElement(comps))
        degs.append(vector_degree(v, shifts, grading))
    M = module_buchberger(ext, rank + n, order, budget, ring, shifts=shifts + tuple(degs))
    out = []
    for v in M.basis:
        if all(c.is_zero() for c in v.components[:rank]):
            out.append(ModuleElement(v.components[rank:]))
    return out


def syzygies(
    gens: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    budget=None,
    ring: Optional[Ring] = None,
) -> List[ModuleElement]:
    """Generators of the first syzygy module {a : sum a_i * gens_i = 0}."""
    if not gens:
        return []
    ring = ring or gens[0].ring
    return module_syzygies([ModuleElement([g]) for g in gens], 1, order, budget, ring)
