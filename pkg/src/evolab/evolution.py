"""Decision procedures built on symbolic squares.

* ``check_evolutions``: every evolution is trivial iff I^(2) ⊆ M*I.
* ``hilbert_burch_check``: I^(2) ⊆ I*J for each column ideal J of a
  Hilbert-Burch matrix.
* ``licci_row_check``: I^(2) ⊆ J*I for J = I + entries of a row of a
  presentation of the canonical module.
* ``aci_check``: I^(2) ⊆ M*I when I needs codim(I)+1 generators.
* ``quasihomogeneous_check``: Euler-relation certificate f ∈ M*I^(d-1).
* ``fitting_square_check``: F_c(I) * I^(2) ⊆ I^2.
* ``prime_step_check``: I^(d) ⊆ P*I^(d-1) for monomial I and each minimal prime P.
* ``conjecture_explorer``: annihilators of I^(d)/I^d for random 2x3
  linear matrices.

Hypotheses the code cannot verify (reduced, generically separable,
licci, unmixed) are recorded as assertions on the returned objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .exactfield import GF, PrimeField, RationalField
from .idealcalc import (
    Ideal,
    PreconditionError,
    _revlex_last,
    _variable_index,
    codimension,
    ideal_power,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    minimal_generators,
    quotient,
    unit_ideal,
)
from .modfit import (
    PolyMatrix,
    canonical_module,
    fitting_ideal_of_ideal,
    ideal_of_minors,
    row_ideal,
)
from .polyring import Lex, NotInvertibleError, Polynomial, Ring, euler_combination
from .symbolic import (
    SymbolicPowerRequest,
    default_witness,
    in_symbolic_square,
    minimal_primes_monomial,
    symbolic_power,
    symbolic_power_monomial,
    symbolic_power_saturation,
)

ALL_TRIVIAL = "all-trivial"
NONTRIVIAL = "nontrivial-exists"
UNDECIDED = "undecided"

BASE_HYPOTHESES = ("reduced (asserted)", "generically separable (asserted)")


@dataclass
class Report:
    name: str
    holds: bool
    details: Dict[str, object] = field(default_factory=dict)
    witness: Optional[Polynomial] = None
    hypotheses: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds


@dataclass
class EvolutionVerdict:
    provenance: str
    strategy: str
    verdict: str
    witness: Optional[Polynomial]
    square_generators: List[Polynomial]
    hypotheses: List[str]
    certificates: Dict[str, object] = field(default_factory=dict)

    @property
    def nontrivial(self) -> bool:
        return self.verdict == NONTRIVIAL


def _degree(f: Polynomial) -> int:
    g = f.ring.grading
    return max(sum(a * w for a, w in zip(e, g)) for e in f.terms)


def witness_order(gens: Sequence[Polynomial]) -> List[Polynomial]:
    """Ascending degree, then lexicographic on the lex-leading monomial."""
    lex = Lex()
    return sorted(gens, key=lambda g: (_degree(g), lex.key(g.leading_monomial(lex)), g.to_string()))


def _check_proper(I: Ideal) -> None:
    if I.is_zero():
        raise PreconditionError("the zero ideal is not allowed here")
    for g in I.gens:
        if any(not any(e) for e in g.terms):
            raise PreconditionError(f"generator {g} has a constant term; the ideal is not inside M")
    if not I.is_homogeneous():
        raise PreconditionError("the ideal must be homogeneous for the ring grading (graded Nakayama)")


def square_certificate(I: Ideal, w: Polynomial, h: Polynomial, max_power: int = 64) -> Optional[int]:
    """Least k with h^k * w in I^2, or None if none up to ``max_power``.

    Such a k certifies w ∈ (I^2 : h^inf) independently of how that
    saturation was computed.
    """
    ring = I.ring
    base = Ideal(minimal_generators(I), ring) if I.is_homogeneous() else I
    sq = ideal_power(base, 2)
    i = _variable_index(h)
    order = _revlex_last(ring, i) if i is not None and sq.is_homogeneous() else None
    G = sq.groebner(order)
    v = w
    for k in range(max_power + 1):
        if G.reduce(v).is_zero():
            return k
        v = v * h
    return None


def symbolic_square(I: Ideal, strategy: str, h=None, prime: bool = True, budget=None):
    """(generators of I^(2), notes) by the saturation or monomial route."""
    req = SymbolicPowerRequest(I, 2, strategy, h, prime)
    J = symbolic_power(req, budget)
    gens = minimal_generators(J) if J.is_homogeneous() else list(J.gens)
    return Ideal(gens, I.ring), req.notes


def check_evolutions(
    I: Ideal,
    strategy: str = "saturation",
    h: Optional[Polynomial] = None,
    prime: bool = True,
    provenance: str = "user input",
    candidates: Optional[Sequence[Polynomial]] = None,
    budget=None,
) -> EvolutionVerdict:
    """Decide whether I^(2) ⊆ M*I.

    ``saturation`` and ``monomial`` compute I^(2) and scan its minimal
    generators.  ``fitting`` only decides membership, so it scans
    ``candidates`` (default: the generators of I); it can prove
    nontriviality but otherwise answers ``undecided``.
    """
    _check_proper(I)
    ring = I.ring
    hyps = list(BASE_HYPOTHESES)
    MI = I.times_maximal()
    certs: Dict[str, object] = {}
    if strategy == "fitting":
        hyps.append("unmixed and generically a complete intersection (asserted)")
        c = codimension(I)
        cands = witness_order(candidates if candidates is not None else I.gens)
        for g in cands:
            v = in_symbolic_square(I, g, c, budget, prime=prime)
            if v.member and not MI.contains(g):
                certs.update(fitting_minor_size=v.minor_size, in_MI=False)
                return EvolutionVerdict(provenance, strategy, NONTRIVIAL, g, [], hyps, certs)
        certs["scanned"] = len(cands)
        return EvolutionVerdict(provenance, strategy, UNDECIDED, None, [], hyps, certs)

    if strategy == "saturation" and h is None:
        h = default_witness(I, prime=prime)
    S, notes = symbolic_square(I, strategy, h, prime, budget)
    hyps.extend(notes)
    gens = witness_order(S.gens)
    for g in gens:
        if not MI.contains(g):
            certs["normal_form_mod_MI"] = MI.normal_form(g)
            certs["in_square"] = S.contains(g)
            if strategy == "saturation":
                certs["h"] = ring(h)
                certs["h_power"] = square_certificate(I, g, ring(h))
            return EvolutionVerdict(provenance, strategy, NONTRIVIAL, g, gens, hyps, certs)
    return EvolutionVerdict(provenance, strategy, ALL_TRIVIAL, None, gens, hyps, certs)


# --------------------------------------------------------------------------
# containment checks


def _containment(A: Sequence[Polynomial], B: Ideal):
    """First element of A outside B, or None."""
    for g in A:
        if not B.contains(g):
            return g
    return None


def _square_for(I: Ideal, h=None, prime: bool = False, budget=None) -> Ideal:
    if I.is_monomial():
        return Ideal(symbolic_power_monomial(I, 2).gens, I.ring)
    return symbolic_square(I, "saturation", h, prime, budget)[0]


def hilbert_burch_check(M: PolyMatrix, h=None, budget=None) -> Report:
    """I^(2) ⊆ I*J_j for every column ideal J_j, with I the maximal minors of M."""
    n, m = M.shape
    if m != n - 1:
        raise PreconditionError(f"expected an n x (n-1) matrix, got {n}x{m}")
    I = ideal_of_minors(M, m)
    if I.is_zero() or I.is_unit() or codimension(I) != 2:
        raise PreconditionError("maximal minors do not define a codimension 2 ideal")
    S = _square_for(I, h, budget=budget)
    cols = {}
    witness = None
    for j in range(m):
        J = Ideal([x for x in M.column(j) if not x.is_zero()], M.ring)
        bad = _containment(S.gens, ideal_product(I, J))
        cols[j] = bad is None
        if bad is not None and witness is None:
            witness = bad
    return Report(
        "hilbert-burch",
        all(cols.values()),
        {"columns": cols, "ideal": list(I.gens), "square": list(S.gens)},
        witness,
        ["generically a complete intersection (asserted)"],
    )


def licci_row_check(I: Ideal, row: Optional[int] = None, h=None, budget=None) -> Report:
    """I^(2) ⊆ J*I with J = I + (entries of a row of the canonical module's presentation)."""
    omega = canonical_module(I, budget)
    rows = range(omega.matrix.nrows) if row is None else [row]
    S = _square_for(I, h, budget=budget)
    res = {}
    witness = None
    for r in rows:
        J = ideal_sum(I, row_ideal(omega, r))
        bad = _containment(S.gens, ideal_product(J, I))
        res[r] = bad is None
        if bad is not None and witness is None:
            witness = bad
    return Report(
        "licci-row",
        all(res.values()),
        {"rows": res, "omega": omega.matrix, "square": list(S.gens)},
        witness,
        ["licci (asserted by provenance)"],
    )


def aci_check(I: Ideal, h=None, budget=None) -> Report:
    """I^(2) ⊆ M*I for I minimally generated by codim(I)+1 elements."""
    mg = minimal_generators(I)
    c = codimension(I)
    if len(mg) != c + 1:
        raise PreconditionError(f"{len(mg)} minimal generators, codimension {c}: not an almost complete intersection")
    S = _square_for(Ideal(mg, I.ring), h, budget=budget)
    bad = _containment(S.gens, I.times_maximal())
    return Report(
        "aci",
        bad is None,
        {"codim": c, "generators": mg, "square": list(S.gens)},
        bad,
        ["unmixed, generically a complete intersection (asserted)"],
    )


def quasihomogeneous_check(
    I: Ideal,
    f,
    d: int,
    weights: Optional[Sequence[int]] = None,
    lower: Optional[Ideal] = None,
    h=None,
    budget=None,
) -> Report:
    """Euler certificate: f = sum x_j c_j with c_j = (w_j/deg f) df/dx_j in I^(d-1).

    ``lower`` may supply I^(d-1); otherwise it is I^(0) = (1), I, or the
    saturation route.  Raises NotInvertibleError when deg f vanishes in
    the field.
    """
    ring = I.ring
    f = ring(f)
    w = tuple(weights) if weights is not None else ring.grading
    deg = f.weighted_degree(w)
    if deg is None:
        raise PreconditionError(f"{f} is not quasihomogeneous for weights {list(w)}")
    coeffs = euler_combination(f, w)
    if lower is None:
        if d <= 1:
            lower = unit_ideal(ring)
        elif d == 2:
            lower = I
        else:
            lower = symbolic_power_saturation(I, d - 1, h, budget)
    derivs = [f.derivative(j) for j in range(ring.nvars)]
    deriv_ok = [lower.contains(p) for p in derivs]
    recon = ring.zero()
    for j, cj in enumerate(coeffs):
        recon = recon + ring.var(j) * cj
    exact = recon == f
    return Report(
        "quasihomogeneous",
        all(deriv_ok) and exact,
        {"degree": deg, "derivatives_in_lower": deriv_ok, "euler_coefficients": coeffs, "reconstructs": exact},
        None,
        ["unmixed quasihomogeneous ideal (asserted)"],
    )


def fitting_square_check(I: Ideal, square: Optional[Ideal] = None, c: Optional[int] = None, budget=None) -> Report:
    """Every product (F_c(I) generator)*(I^(2) generator) lies in I^2."""
    ring = I.ring
    base = Ideal(minimal_generators(I), ring) if I.is_homogeneous() else I
    if c is None:
        c = codimension(base)
    if square is None:
        square = _square_for(base, budget=budget)
    F = fitting_ideal_of_ideal(base, c, budget)
    Fgens = F.reduced_generators() if not F.is_zero() else []
    sq = ideal_power(base, 2)
    G = sq.groebner()
    bad = None
    for a in Fgens:
        for s in square.gens:
            if not G.reduce(a * s).is_zero():
                bad = a * s
                break
        if bad is not None:
            break
    return Report(
        "fitting_square",
        bad is None,
        {"c": c, "fitting_generators": len(Fgens), "square_generators": len(square.gens)},
        bad,
        [],
    )


def prime_step_check(I: Ideal, d: int) -> Report:
    """I^(d) ⊆ P*I^(d-1) for every minimal prime P of a monomial ideal."""
    Sd = symbolic_power_monomial(I, d)
    Sd1 = symbolic_power_monomial(I, d - 1)
    res = {}
    witness = None
    for P in minimal_primes_monomial(I):
        bad = _containment(Sd.gens, ideal_product(P, Sd1))
        res[str(P)] = bad is None
        if bad is not None and witness is None:
            witness = bad
    return Report("prime_step", all(res.values()), {"primes": res, "d": d}, witness, [])


# --------------------------------------------------------------------------
# conjecture explorer


@dataclass
class ConjectureReport:
    seed: int
    seed_used: int
    d: int
    field: str
    matrix: PolyMatrix
    ideal: List[Polynomial]
    symbolic_power: List[Polynomial]
    annihilator: List[Polynomial]
    candidate: List[Polynomial]
    relation: str
    entries_relation: str
    f1_in_annihilator: bool
    fitting_containment: Optional[bool]


def compare_ideals(A: Ideal, B: Ideal) -> str:
    """Relation of A to B, decided by two containment checks."""
    ab, ba = B.contains_ideal(A), A.contains_ideal(B)
    if ab and ba:
        return "equal"
    if ab:
        return "annihilator strictly inside candidate"
    if ba:
        return "candidate strictly inside annihilator"
    return "incomparable"


def random_linear_matrix(ring: Ring, rows: int, cols: int, rng: random.Random) -> PolyMatrix:
    F = ring.field
    if isinstance(F, PrimeField):
        draw = lambda: rng.randrange(F.p)
    else:
        draw = lambda: rng.randint(-9, 9)
    out = []
    for _ in range(rows):
        r = []
        for _ in range(cols):
            f = ring.zero()
            for x in ring.gens:
                f = f + x * draw()
            r.append(f)
        out.append(r)
    return PolyMatrix(out, ring)


def conjecture_explorer(seed: int, d: int = 2, field=None, max_rerolls: int = 100, budget=None) -> ConjectureReport:
    """Compare (I^d : I^(d)) with F_1(I)^(d//2) for a random 2x3 linear matrix.

    F_1(I) is taken for I as a module (minimal presentation).  The ideal
    of entries of the matrix, which is F_1 of the cokernel of the 2x3
    matrix, is compared as well.  Rerolls use seed+1, seed+2, ...
    """
    F = field if field is not None else GF(101)
    ring = Ring(("x", "y", "z"), F)
    for k in range(max_rerolls):
        rng = random.Random(seed + k)
        A = random_linear_matrix(ring, 2, 3, rng)
        I = ideal_of_minors(A, 2)
        if not I.is_zero() and not I.is_unit() and codimension(I) == 2:
            break
    else:
        raise PreconditionError(f"no codimension 2 matrix within {max_rerolls} rerolls of seed {seed}")
    I = Ideal(minimal_generators(I), ring)
    Sd = symbolic_power_saturation(I, d, budget=budget)
    Sd = Ideal(minimal_generators(Sd), ring)
    Id = ideal_power(I, d)
    ann = quotient(Id, Sd, budget)
    e = d // 2
    F1 = fitting_ideal_of_ideal(I, 1, budget)
    cand = ideal_power(F1, e)
    entries = Ideal(A.entries(), ring)
    rel = compare_ideals(ann, cand)
    erel = compare_ideals(ann, ideal_power(entries, e))
    f2_in = None
    if d == 2:
        f2_in = ann.contains_ideal(fitting_ideal_of_ideal(I, 2, budget))
    return ConjectureReport(
        seed,
        seed + k,
        d,
        str(F),
        A,
        list(I.gens),
        list(Sd.gens),
        ann.reduced_generators(),
        cand.reduced_generators(),
        rel,
        erel,
        ann.contains_ideal(F1),
        f2_in,
    )
