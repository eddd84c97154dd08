"""Symbolic powers: by saturation, by monomial primary decomposition, and
by the Fitting-ideal membership criterion.

The Fitting criterion: for an unmixed ideal I of codimension c and x in
I, x lies in the symbolic square iff every (n-c+1)-minor of a relation
matrix of I/(x) (presented on n generators of I) lies in I.  "Only if"
needs unmixedness, "if" needs I generically a complete intersection; the
verdict records which direction it leaned on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .idealcalc import (
    Ideal,
    PreconditionError,
    codimension,
    dimension,
    ideal_power,
    ideal_sum,
    minimal_generators,
    saturate,
    unit_ideal,
)
from .modfit import PolyMatrix, iter_minors, present_ideal_quotient
from .polyring import Exps, Polynomial, Ring

# --------------------------------------------------------------------------
# monomial ideals, combinatorially (lists of exponent vectors)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimize_monomials(gens) -> List[Exps]:
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out: List[Exps] = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def monomial_intersect(A: Sequence[Exps], B: Sequence[Exps]) -> List[Exps]:
    return minimize_monomials(tuple(map(max, a, b)) for a in A for b in B)


def monomial_product(A: Sequence[Exps], B: Sequence[Exps]) -> List[Exps]:
    return minimize_monomials(tuple(x + y for x, y in zip(a, b)) for a in A for b in B)


def monomial_power(A: Sequence[Exps], d: int, n: int) -> List[Exps]:
    out: List[Exps] = [(0,) * n]
    for _ in range(d):
        out = monomial_product(out, A)
    return out


def monomial_contains(A: Sequence[Exps], m: Exps) -> bool:
    return any(_divides(a, m) for a in A)


def monomial_subset(A: Sequence[Exps], B: Sequence[Exps]) -> bool:
    """A ⊆ B."""
    return all(monomial_contains(B, a) for a in A)


def _exps_of(I: Ideal) -> List[Exps]:
    if not I.is_monomial():
        bad = next(g for g in I.gens if not g.is_monomial())
        raise PreconditionError(f"not a monomial ideal: generator {bad}")
    return minimize_monomials(next(iter(g.terms)) for g in I.gens)


def _ideal_of(exps: Sequence[Exps], ring: Ring) -> Ideal:
    return Ideal([ring.monomial(e) for e in exps], ring)


def _irreducible_components(gens: List[Exps]) -> List[Tuple[Exps, ...]]:
    """Split mixed generators x^a*m into (.., x^a) and (.., m) until all are pure powers."""
    for g in gens:
        supp = [i for i, a in enumerate(g) if a]
        if len(supp) > 1:
            i = supp[0]
            u = tuple(a if j == i else 0 for j, a in enumerate(g))
            v = tuple(0 if j == i else a for j, a in enumerate(g))
            rest = [h for h in gens if h != g]
            return _irreducible_components(minimize_monomials(rest + [u])) + _irreducible_components(
                minimize_monomials(rest + [v])
            )
    return [tuple(sorted(gens))]


@dataclass
class PrimaryComponent:
    """A monomial primary ideal Q with its radical P."""

    Q: Ideal
    P: Ideal
    isolated: bool
    q_exps: Tuple[Exps, ...] = field(repr=False, default=())
    support: FrozenSet[int] = field(default=frozenset())


def _support(gens: Sequence[Exps]) -> FrozenSet[int]:
    return frozenset(i for g in gens for i, a in enumerate(g) if a)


def monomial_primary_decomposition(I: Ideal) -> List[PrimaryComponent]:
    """Irredundant primary decomposition of a monomial ideal.

    Irreducible components are found by splitting, redundant ones are
    discarded, and those sharing a radical are intersected.
    """
    ring = I.ring
    n = ring.nvars
    gens = _exps_of(I)
    if not gens:
        raise PreconditionError("the zero ideal has no primary decomposition here")
    if any(not any(g) for g in gens):
        return []
    comps = sorted(set(_irreducible_components(gens)))
    # drop irreducible components containing the intersection of the others
    changed = True
    while changed:
        changed = False
        for i, Qi in enumerate(comps):
            others = comps[:i] + comps[i + 1 :]
            if not others:
                break
            inter = list(others[0])
            for Qj in others[1:]:
                inter = monomial_intersect(inter, Qj)
            if monomial_subset(inter, Qi):
                comps = others
                changed = True
                break
    groups: Dict[FrozenSet[int], List[Exps]] = {}
    for Q in comps:
        s = _support(Q)
        groups[s] = monomial_intersect(groups[s], Q) if s in groups else list(Q)
    supports = list(groups)
    out = []
    for s in sorted(supports, key=lambda s: (len(s), sorted(s))):
        isolated = not any(t < s for t in supports)
        P = [tuple(1 if j == i else 0 for j in range(n)) for i in sorted(s)]
        Qe = tuple(groups[s])
        out.append(PrimaryComponent(_ideal_of(Qe, ring), _ideal_of(P, ring), isolated, Qe, s))
    return out


def minimal_primes_monomial(I: Ideal) -> List[Ideal]:
    return [c.P for c in monomial_primary_decomposition(I) if c.isolated]


def symbolic_power_monomial_exps(I: Ideal, d: int) -> List[Exps]:
    n = I.ring.nvars
    comps = [c for c in monomial_primary_decomposition(I) if c.isolated]
    if d == 0 or not comps:
        return [(0,) * n]
    out = None
    for c in comps:
        Qd = monomial_power(c.q_exps, d, n)
        out = Qd if out is None else monomial_intersect(out, Qd)
    return out


def symbolic_power_monomial(I: Ideal, d: int) -> Ideal:
    """Intersection of the d-th powers of the isolated primary components.

    Embedded components are dropped, as symbolic powers only see the
    minimal primes.
    """
    if d < 0:
        raise ValueError("negative power")
    return _ideal_of(symbolic_power_monomial_exps(I, d), I.ring)


# --------------------------------------------------------------------------
# saturation route


def _graded_dim_one(I: Ideal) -> bool:
    return I.is_homogeneous() and dimension(I) <= 1


def default_witness(I: Ideal, prime: bool = True) -> Polynomial:
    """A variable outside every minimal prime of I.

    For a prime ideal this is the first variable not in I.  Otherwise we
    take the first variable whose addition drops the dimension, which
    avoids all minimal primes when I is equidimensional; failing that, a
    linear form.
    """
    ring = I.ring
    if prime:
        for x in ring.gens:
            if not I.contains(x):
                return x
        raise PreconditionError("every variable lies in the ideal")
    c = codimension(I)
    gens = ring.gens
    # variables first, then linear forms x1 + k*x2 + k^2*x3 + ...
    cands = list(gens)
    for k in range(1, 8):
        f = ring.zero()
        for i, x in enumerate(gens):
            f = f + x * (k ** i)
        cands.append(f)
    for x in cands:
        J = ideal_sum(I, Ideal([x], ring))
        if J.is_unit() or codimension(J) > c:
            return x
    raise PreconditionError("no candidate avoids all minimal primes; pass h explicitly")


def symbolic_power_prime(I: Ideal, d: int, h: Optional[Polynomial] = None, budget=None) -> Ideal:
    """(I^d : h^inf) for I asserted prime and h not in I."""
    ring = I.ring
    if h is None:
        h = default_witness(I)
    h = ring(h)
    if I.contains(h):
        raise PreconditionError(f"witness {h} lies in the ideal")
    if d == 0:
        return unit_ideal(ring)
    base = Ideal(minimal_generators(I), ring) if I.is_homogeneous() else I
    return saturate(ideal_power(base, d), h, budget)


def symbolic_power_saturation(I: Ideal, d: int, h: Optional[Polynomial] = None, budget=None) -> Ideal:
    """(I^d : h^inf) with h avoiding the minimal primes of I.

    Exact when every embedded prime of I^d contains h, e.g. for graded
    ideals of dimension one (the only candidate is the irrelevant ideal).
    """
    ring = I.ring
    if h is None:
        h = default_witness(I, prime=False)
    h = ring(h)
    if d == 0:
        return unit_ideal(ring)
    base = Ideal(minimal_generators(I), ring) if I.is_homogeneous() else I
    return saturate(ideal_power(base, d), h, budget)


@dataclass
class SymbolicPowerRequest:
    ideal: Ideal
    d: int
    strategy: str = "saturation"  # saturation | monomial | fitting
    h: Optional[Polynomial] = None
    prime: bool = True
    notes: List[str] = field(default_factory=list)


def symbolic_power(req: SymbolicPowerRequest, budget=None) -> Ideal:
    """Generators of I^(d) by the requested strategy (records its assumptions in ``req.notes``)."""
    I, d = req.ideal, req.d
    if req.strategy == "monomial":
        comps = monomial_primary_decomposition(I)
        if any(not c.isolated for c in comps):
            req.notes.append("embedded components dropped")
        return symbolic_power_monomial(I, d)
    if req.strategy == "saturation":
        if req.prime:
            req.notes.append("ideal asserted prime")
            return symbolic_power_prime(I, d, req.h, budget)
        req.notes.append("witness assumed to avoid minimal primes and lie in all embedded primes of I^d")
        return symbolic_power_saturation(I, d, req.h, budget)
    if req.strategy == "fitting":
        raise PreconditionError("the fitting strategy decides membership only; it does not produce generators")
    raise ValueError(f"unknown strategy {req.strategy!r}")


# --------------------------------------------------------------------------
# Fitting criterion


@dataclass
class FittingVerdict:
    member: bool
    minor_size: int
    n_generators: int
    n_relations: int
    hypothesis: str
    rows: Optional[Tuple[int, ...]] = None
    cols: Optional[Tuple[int, ...]] = None
    minor: Optional[Polynomial] = None
    minor_mod_I: Optional[Polynomial] = None

    def __bool__(self):
        return self.member


def _unit(f: Polynomial) -> bool:
    return f.is_constant() and not f.is_zero()


def _pivot_out(rows: List[List[Polynomial]], k: int, reduce):
    """Eliminate unit entries of a matrix over R/I.

    A unit pivot splits off a 1x1 block, so the k-minors of the original
    generate the same ideal as the (k-1)-minors of what remains.  Returns
    the remaining matrix, the surviving original row/column indices, the
    pivots used and the new minor size.
    """
    field = rows[0][0].ring.field if rows and rows[0] else None
    rid = list(range(len(rows)))
    cid = list(range(len(rows[0]) if rows else 0))
    pivots = []
    while k > 0:
        hit = next(((i, j) for i, r in enumerate(rows) for j, e in enumerate(r) if _unit(e)), None)
        if hit is None:
            break
        i, j = hit
        u = next(iter(rows[i][j].terms.values()))
        for jj in range(len(cid)):
            a = rows[i][jj]
            if jj == j or a.is_zero():
                continue
            q = a.scale(field.div(field.one, u))
            for r in range(len(rows)):
                if r != i and not rows[r][j].is_zero():
                    rows[r][jj] = reduce(rows[r][jj] - q * rows[r][j])
        pivots.append((rid[i], cid[j]))
        rows = [r[:j] + r[j + 1 :] for ii, r in enumerate(rows) if ii != i]
        del rid[i]
        del cid[j]
        k -= 1
    # drop zero columns
    keep = [j for j in range(len(cid)) if any(not r[j].is_zero() for r in rows)]
    rows = [[r[j] for j in keep] for r in rows]
    cid = [cid[j] for j in keep]
    return rows, rid, cid, pivots, k


def _domain_rank(rows: List[List[Polynomial]], limit: int, reduce):
    """Rank over the fraction field of R/I (I prime) by fraction-free elimination.

    Stops once ``limit`` pivots are found.  Returns the pivot positions;
    the submatrix they span has a determinant that is nonzero modulo I.
    """
    rows = [list(r) for r in rows]
    live_r = list(range(len(rows)))
    live_c = list(range(len(rows[0]) if rows else 0))
    pivots = []
    while len(pivots) < limit:
        best = None
        for i in live_r:
            for j in live_c:
                e = rows[i][j]
                if not e.is_zero():
                    key = (e.total_degree(), len(e))
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, i, j = best
        piv = rows[i][j]
        live_r.remove(i)
        live_c.remove(j)
        for r in live_r:
            a = rows[r][j]
            if a.is_zero():
                continue
            # multiplying by the nonzero pivot keeps the rank in a domain
            for c in live_c:
                rows[r][c] = reduce(piv * rows[r][c] - a * rows[i][c])
            rows[r][j] = rows[r][j].ring.zero()
        pivots.append((i, j))
    return pivots


def _fitting_test(
    I: Ideal, module_gens: Ideal, x: Polynomial, k: int, budget=None, prime: bool = False
) -> FittingVerdict:
    """Are all k-minors of the relation matrix of module_gens/(x) in I?

    Everything happens modulo I: entries are reduced, unit pivots are
    eliminated, and the remaining minors are expanded with reduction.
    With ``prime`` (I asserted prime) the remaining step is a rank
    computation over the fraction field of R/I instead.
    """
    Mp = present_ideal_quotient(module_gens, x, budget)
    G = I.groebner()
    n = Mp.ngens
    ring = I.ring
    hyp_true = "converse direction: I generically a complete intersection (asserted)"
    hyp_false = "forward direction: I unmixed (asserted)"
    if prime:
        hyp_true += "; I prime (asserted)"
        hyp_false += "; I prime (asserted)"
    raw = Mp.matrix

    def certify(rows_idx, cols_idx) -> FittingVerdict:
        R = tuple(sorted(rows_idx))
        C = tuple(sorted(cols_idx))
        sub = PolyMatrix([[raw[r, c] for c in C] for r in R], ring)
        full = next(iter_minors(sub, len(R)))[2]
        red = G.reduce(full)
        assert not red.is_zero(), "certificate minor vanished modulo the ideal"
        return FittingVerdict(False, k, n, Mp.nrelations, hyp_false, R, C, full, red)

    if k <= 0:
        return FittingVerdict(False, k, n, Mp.nrelations, hyp_false)
    if k > min(n, raw.ncols):
        return FittingVerdict(True, k, n, Mp.nrelations, hyp_true)
    rows = [[G.reduce(e) for e in r] for r in raw.rows]
    rows, rid, cid, pivots, kk = _pivot_out(rows, k, G.reduce)
    prow = [p[0] for p in pivots]
    pcol = [p[1] for p in pivots]
    if kk == 0:
        return certify(prow, pcol)
    if kk > min(len(rid), len(cid)):
        return FittingVerdict(True, k, n, Mp.nrelations, hyp_true)
    if prime:
        found = _domain_rank(rows, kk, G.reduce)
        if len(found) < kk:
            return FittingVerdict(True, k, n, Mp.nrelations, hyp_true)
        return certify(prow + [rid[r] for r, _ in found], pcol + [cid[c] for _, c in found])
    A = PolyMatrix(rows, ring)
    for R, C, det in iter_minors(A, kk, reduce=G.reduce):
        if not det.is_zero():
            return certify(prow + [rid[r] for r in R], pcol + [cid[c] for c in C])
    return FittingVerdict(True, k, n, Mp.nrelations, hyp_true)


def in_symbolic_square(I: Ideal, x, c: Optional[int] = None, budget=None, prime: bool = False) -> FittingVerdict:
    """Decide x ∈ I^(2) via F_{c-1}(I/(x)) ⊆ I.

    ``prime`` asserts that I is prime, which allows a rank computation in
    place of enumerating minors (much faster with many generators).
    """
    x = I.ring(x)
    if not I.contains(x):
        raise PreconditionError(f"{x} is not in the ideal")
    if c is None:
        c = codimension(I)
    n = len(I.gens)
    return _fitting_test(I, I, x, n - c + 1, budget, prime)


def in_symbolic_power(
    I: Ideal,
    x,
    d: int,
    c: Optional[int] = None,
    Id: Optional[Ideal] = None,
    h: Optional[Polynomial] = None,
    budget=None,
    prime: bool = False,
) -> FittingVerdict:
    """Decide x ∈ I^(d+1) via F_{N-1}(I^(d)/(x)) ⊆ I with N = C(c+d-1, d).

    ``Id`` gives generators of I^(d); by default they come from the
    saturation route (I asserted prime).
    """
    ring = I.ring
    x = ring(x)
    if c is None:
        c = codimension(I)
    if Id is None:
        Id = I if d == 1 else symbolic_power_prime(I, d, h, budget)
    if not Id.contains(x):
        raise PreconditionError(f"{x} is not in the {d}-th symbolic power")
    N = comb(c + d - 1, d)
    n = len(Id.gens)
    return _fitting_test(I, Id, x, n - N + 1, budget, prime)
