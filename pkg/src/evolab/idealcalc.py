"""Ideal arithmetic on top of the Groebner kernel.

Intersections, saturations and radical membership go through elimination
of one auxiliary variable.  When the ideal is homogeneous for the ring
grading and we saturate (or take a quotient) by a variable, a faster route
is available: in a weighted revlex order where that variable is the
smallest, the variable divides a homogeneous element iff it divides its
leading term, so the basis can simply be divided out.
"""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence

from .groebner import DEFAULT_BUDGET, GroebnerBasis, buchberger
from .polyring import (
    Block,
    Exps,
    GRevLex,
    MonomialOrder,
    Polynomial,
    RevLex,
    Ring,
    Weighted,
)


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


def natural_order(ring: Ring) -> MonomialOrder:
    """Weighted revlex for weighted rings, grevlex otherwise."""
    if ring.weights is not None:
        return Weighted(ring.weights)
    return GRevLex()


class Ideal:
    """Ideal of a polynomial ring given by generators.

    Reduced Groebner bases are computed lazily and cached per monomial
    order; the cache is guarded so concurrent readers trigger a single
    computation.
    """

    def __init__(self, gens: Iterable[Polynomial], ring: Optional[Ring] = None, name: str = ""):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("need a ring for an ideal without generators")
            ring = gens[0].ring
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) if not isinstance(x, Polynomial) else x for x in gens) if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generators from different rings")
        self.name = name
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()
        self._mi: Optional["Ideal"] = None

    # -- Groebner bases
    def groebner(self, order: Optional[MonomialOrder] = None, budget=None) -> GroebnerBasis:
        order = order or natural_order(self.ring)
        with self._lock:
            G = self._gb.get(order)
            if G is None:
                G = buchberger(list(self.gens), order, budget, ring=self.ring)
                self._gb[order] = G
        return G

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.groebner().reduce(self.ring(f))

    def contains(self, f) -> bool:
        f = self.ring(f)
        if f.is_zero():
            return True
        if not self.gens:
            return False
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __le__(self, other: "Ideal") -> bool:
        return other.contains_ideal(self)

    def __ge__(self, other: "Ideal") -> bool:
        return self.contains_ideal(other)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if not self.gens:
            return False
        return self.groebner().is_unit()

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.gens)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def reduced_generators(self) -> List[Polynomial]:
        return list(self.groebner().basis)

    # -- arithmetic
    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens)
        return f"Ideal({body})"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def times_maximal(self) -> "Ideal":
        """The ideal M*I with M generated by the variables (cached)."""
        if self._mi is None:
            self._mi = ideal_product(maximal_ideal(self.ring), self)
        return self._mi


def maximal_ideal(ring: Ring) -> Ideal:
    return Ideal(ring.gens, ring, name="M")


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal([ring.one()], ring)


def _dedupe(polys: Iterable[Polynomial]) -> List[Polynomial]:
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        k = p.monic()
        if k not in seen:
            seen.add(k)
            out.append(p)
    return out


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(_dedupe(I.gens + J.gens), I.ring)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(_dedupe(f * g for f in I.gens for g in J.gens), I.ring)


def ideal_power(I: Ideal, n: int) -> Ideal:
    """I^n by products of generators; I^0 is the unit ideal."""
    if n < 0:
        raise ValueError("negative ideal power")
    if n == 0:
        return unit_ideal(I.ring)
    gens = I.gens
    out = []
    cache: Dict[tuple, Polynomial] = {}
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(range(len(gens)), n):
        # reuse the product of the first n-1 factors
        head = combo[:-1]
        base = cache.get(head)
        if base is None:
            base = I.ring.one()
            for i in head:
                base = base * gens[i]
            cache[head] = base
        out.append(base * gens[combo[-1]])
    return Ideal(_dedupe(out), I.ring)


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring:
        from .exactfield import ContextError

        raise ContextError(f"ideals live in different rings: {I.ring} vs {J.ring}")


# --------------------------------------------------------------------------
# auxiliary variables and elimination


def _extended_ring(ring: Ring, name: str = "_t") -> Ring:
    while name in ring.variables:
        name = "_" + name
    return Ring((name,) + ring.variables, ring.field)


def _inner_order(ring: Ring) -> MonomialOrder:
    return Weighted(ring.weights) if ring.weights is not None else GRevLex()


def _lift(f: Polynomial, big: Ring) -> Polynomial:
    return Polynomial(big, {(0,) + e: c for e, c in f.terms.items()})


def _drop_first(f: Polynomial, ring: Ring) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def _eliminate_first(gens: List[Polynomial], big: Ring, ring: Ring, budget) -> List[Polynomial]:
    order = Block(1, GRevLex(), _inner_order(ring))
    G = buchberger(gens, order, budget, ring=big)
    return [_drop_first(g, ring) for g in G.basis if all(e[0] == 0 for e in g.terms)]


def eliminate(I: Ideal, variables: Sequence, budget=None) -> Ideal:
    """I intersected with the subring generated by the other variables."""
    ring = I.ring
    idx = sorted({ring.index(v) for v in variables})
    if not idx:
        return Ideal(I.gens, ring)
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    names = [ring.variables[i] for i in perm]
    weights = None if ring.weights is None else [ring.weights[i] for i in perm]
    big = Ring(names, ring.field, weights)
    pos = {old: new for new, old in enumerate(perm)}
    moved = [g.change_ring(big, [pos[i] for i in range(ring.nvars)]) for g in I.gens]
    k = len(idx)
    inner_rest = Weighted(weights[k:]) if weights is not None else GRevLex()
    inner_first = Weighted(weights[:k]) if weights is not None else GRevLex()
    G = buchberger(moved, Block(k, inner_first, inner_rest), budget, ring=big)
    back = [None] * ring.nvars
    for old, new in pos.items():
        back[new] = old
    out = []
    for g in G.basis:
        if all(not any(e[:k]) for e in g.terms):
            out.append(g.change_ring(ring, back))
    return Ideal(out, ring)


def intersect(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """I ∩ J as the t-free part of t*I + (1-t)*J."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    big = _extended_ring(ring)
    t = big.var(0)
    gens = [t * _lift(f, big) for f in I.gens] + [(1 - t) * _lift(g, big) for g in J.gens]
    return Ideal(_eliminate_first(gens, big, ring, budget), ring)


def intersect_all(ideals: Sequence[Ideal], budget=None) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J, budget)
    return out


def exact_division(h: Polynomial, g: Polynomial) -> Polynomial:
    """h / g, raising ValueError unless g divides h."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = h.ring
    field = ring.field
    order = ring.order
    glm = g.leading_monomial(order)
    ginv = field.inv(g.terms[glm])
    q = ring.zero()
    r = h
    while not r.is_zero():
        rlm = r.leading_monomial(order)
        if any(a > b for a, b in zip(glm, rlm)):
            raise ValueError(f"{g} does not divide {h}")
        e = tuple(b - a for a, b in zip(glm, rlm))
        c = field.mul(r.terms[rlm], ginv)
        term = ring.monomial(e, c)
        q = q + term
        r = r - g * term
    return q


def _variable_index(f: Polynomial) -> Optional[int]:
    m = f.as_monomial()
    if m is not None and sum(m) == 1:
        return m.index(1)
    return None


def _revlex_last(ring: Ring, i: int) -> MonomialOrder:
    perm = [j for j in range(ring.nvars) if j != i] + [i]
    return Weighted(ring.grading, RevLex(perm))


def _divide_out_variable(I: Ideal, i: int, once: bool, budget) -> Ideal:
    """(I : x_i) or (I : x_i^inf) for I homogeneous w.r.t. the ring grading."""
    G = buchberger(list(I.gens), _revlex_last(I.ring, i), budget, ring=I.ring)
    out = []
    for g in G.basis:
        k = min(e[i] for e in g.terms)
        if once:
            k = min(k, 1)
        if k:
            g = Polynomial(I.ring, {e[:i] + (e[i] - k,) + e[i + 1 :]: c for e, c in g.terms.items()})
        out.append(g)
    return Ideal(out, I.ring)


def _homogeneous_route(I: Ideal, f: Polynomial) -> Optional[int]:
    i = _variable_index(f)
    if i is None or not I.is_homogeneous():
        return None
    return i


def quotient_by_element(I: Ideal, g: Polynomial, budget=None) -> Ideal:
    """(I : g) = (I ∩ (g)) / g."""
    ring = I.ring
    if g.is_zero():
        return unit_ideal(ring)
    if I.is_zero():
        return Ideal([], ring)
    i = _homogeneous_route(I, g)
    if i is not None:
        return _divide_out_variable(I, i, True, budget)
    K = intersect(I, Ideal([g], ring), budget)
    return Ideal([exact_division(h, g) for h in K.gens], ring)


def quotient(I: Ideal, J: Ideal, budget=None) -> Ideal:
    """(I : J) = {f : f*J ⊆ I}, as the intersection of (I : g) over generators g."""
    _same_ring(I, J)
    if J.is_zero():
        return unit_ideal(I.ring)
    parts = [quotient_by_element(I, g, budget) for g in J.gens]
    return intersect_all(parts, budget)


def saturate(I: Ideal, f: Polynomial, budget=None, method: str = "auto") -> Ideal:
    """(I : f^inf).

    ``method`` is ``"eliminate"`` (I + (s*f - 1), eliminating s),
    ``"revlex"`` (homogeneous I and f a variable), or ``"auto"``.
    """
    ring = I.ring
    f = ring(f)
    if f.is_zero():
        raise PreconditionError("cannot saturate by the zero polynomial")
    if I.is_zero():
        return Ideal([], ring)
    if method in ("auto", "revlex"):
        i = _homogeneous_route(I, f)
        if i is not None:
            return _divide_out_variable(I, i, False, budget)
        if method == "revlex":
            raise PreconditionError("revlex saturation needs a homogeneous ideal and a variable")
    big = _extended_ring(ring, "_s")
    s = big.var(0)
    gens = [_lift(g, big) for g in I.gens] + [s * _lift(f, big) - 1]
    return Ideal(_eliminate_first(gens, big, ring, budget), ring)


def radical_membership(I: Ideal, f, budget=None) -> bool:
    """f ∈ √I, via 1 ∈ I + (s*f - 1)."""
    ring = I.ring
    f = ring(f)
    if f.is_zero():
        return True
    big = _extended_ring(ring, "_s")
    s = big.var(0)
    gens = [_lift(g, big) for g in I.gens] + [s * _lift(f, big) - 1]
    G = buchberger(gens, Block(1, GRevLex(), _inner_order(ring)), budget, ring=big)
    return G.is_unit()


# --------------------------------------------------------------------------
# dimension and generators


def _leading_supports(I: Ideal) -> List[int]:
    G = I.groebner()
    masks = []
    for lm in G.leading_monomials():
        m = 0
        for i, a in enumerate(lm):
            if a:
                m |= 1 << i
        masks.append(m)
    return masks


def dimension(I: Ideal) -> int:
    """Krull dimension of R/I: largest set of variables independent modulo in(I)."""
    if I.is_zero():
        return I.ring.nvars
    if I.is_unit():
        return -1
    masks = _leading_supports(I)
    n = I.ring.nvars
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            smask = sum(1 << i for i in S)
            # S is independent iff no leading monomial lives on S alone
            if all(m & ~smask for m in masks):
                return size
    return 0


def codimension(I: Ideal) -> int:
    if I.is_zero():
        raise PreconditionError("codimension of the zero ideal is not defined here")
    if I.is_unit():
        raise PreconditionError("codimension of the unit ideal is not defined here")
    return I.ring.nvars - dimension(I)


def _degree(f: Polynomial, grading) -> int:
    return max(sum(a * w for a, w in zip(e, grading)) for e in f.terms)


def minimal_generators(I: Ideal) -> List[Polynomial]:
    """A minimal generating set of a homogeneous ideal.

    Candidates (the generators, then the reduced Groebner basis) are
    scanned by increasing degree, keeping those not already in the ideal
    of the kept ones.  For ideals homogeneous in the ring grading this is
    a minimal system of generators by graded Nakayama.
    """
    ring = I.ring
    if not I.is_homogeneous():
        raise PreconditionError("minimal generators need an ideal homogeneous for the ring grading")
    grading = ring.grading
    order = natural_order(ring)
    cands = sorted(
        I.gens,
        key=lambda g: (_degree(g, grading), order.key(g.leading_monomial(order)), len(g)),
    )
    kept: List[Polynomial] = []
    current: Optional[GroebnerBasis] = None
    for g in cands:
        if current is not None and current.contains(g):
            continue
        kept.append(g)
        current = buchberger(kept, order, ring=ring)
    return kept


def is_minimal_generator(I: Ideal, f) -> bool:
    """f ∈ I is a minimal generator iff f ∉ M*I (graded Nakayama)."""
    f = I.ring(f)
    if not I.contains(f):
        raise PreconditionError(f"{f} is not in the ideal")
    return not I.times_maximal().contains(f)
