import random

import pytest

from evolab.exactfield import GF, QQ
from evolab.evolution import (
    ALL_TRIVIAL,
    NONTRIVIAL,
    UNDECIDED,
    aci_check,
    check_evolutions,
    compare_ideals,
    conjecture_explorer,
    hilbert_burch_check,
    licci_row_check,
    prime_step_check,
    quasihomogeneous_check,
    random_linear_matrix,
    square_certificate,
    fitting_square_check,
    witness_order,
)
from evolab.idealcalc import Ideal, PreconditionError, minimal_generators
from evolab.modfit import PolyMatrix, free_resolution
from evolab.polyring import NotInvertibleError, Ring
from evolab.symbolic import symbolic_power_prime
from evolab.toriclab import MonomialCurve, family_exponents, paper_family

R = Ring(("x", "y", "z"), QQ)
x, y, z = R.gens
TRIANGLE = Ideal([x * y, x * z, y * z], R)


@pytest.fixture(scope="module")
def fam2():
    return paper_family(2)


@pytest.fixture(scope="module")
def cubic345():
    curve = MonomialCurve((3, 4, 5), QQ, names=("x", "y", "z"))
    return curve, curve.toric_ideal()


def test_family_witness(fam2):
    v = check_evolutions(fam2.ideal, provenance="family p=2")
    assert v.verdict == NONTRIVIAL and v.nontrivial
    assert v.witness == fam2.f
    assert v.certificates["h_power"] == 2
    assert v.certificates["in_square"]
    assert not v.certificates["normal_form_mod_MI"].is_zero()
    assert v.provenance == "family p=2"
    assert any("asserted" in h for h in v.hypotheses)


def test_fitting_strategy(fam2):
    v = check_evolutions(fam2.ideal, strategy="fitting")
    assert v.verdict == UNDECIDED and v.witness is None
    v = check_evolutions(fam2.ideal, strategy="fitting", candidates=[fam2.f])
    assert v.verdict == NONTRIVIAL and v.witness == fam2.f


def test_triangle_is_all_trivial():
    for strategy in ("monomial", "saturation"):
        v = check_evolutions(TRIANGLE, strategy=strategy, prime=False)
        assert v.verdict == ALL_TRIVIAL and v.witness is None
        assert Ideal(v.square_generators, R).contains(x * y * z)


def test_rational_family_is_all_trivial():
    curve = MonomialCurve(family_exponents(2), QQ)
    I = curve.toric_ideal()
    v = check_evolutions(I)
    assert v.verdict == ALL_TRIVIAL
    for g in v.square_generators:
        assert quasihomogeneous_check(I, g, 2).holds


def test_euler_certificate_needs_invertible_degree(fam2):
    # deg f = 18 vanishes in characteristic 2
    with pytest.raises(NotInvertibleError):
        quasihomogeneous_check(fam2.ideal, fam2.f, 2)


def test_quasihomogeneous_rejects_inhomogeneous():
    with pytest.raises(PreconditionError):
        quasihomogeneous_check(TRIANGLE, x + y * z, 2)


def test_improper_input_rejected():
    with pytest.raises(PreconditionError):
        check_evolutions(Ideal([x + 1], R))
    with pytest.raises(PreconditionError):
        check_evolutions(Ideal([x - y ** 2], R))
    with pytest.raises(PreconditionError):
        check_evolutions(Ideal([], R))


def test_square_certificate():
    P = Ideal([x, y], R)
    assert square_certificate(P, x * y, z) == 0
    assert square_certificate(P, x, z) is None


def test_witness_order_is_deterministic():
    gens = [y ** 2, x * z, x ** 2, z]
    # ascending degree, then ascending lex with x > y > z
    assert witness_order(gens) == [z, y ** 2, x * z, x ** 2]
    assert witness_order(list(reversed(gens))) == witness_order(gens)


# -- containment checks


def test_hilbert_burch_on_space_curve(cubic345):
    curve, P = cubic345
    M = free_resolution(P, 2)[1]
    r = hilbert_burch_check(M)
    assert r.holds and r.details["columns"] == {0: True, 1: True}


@pytest.mark.parametrize("seed", range(3))
def test_hilbert_burch_on_random_linear_matrices(seed):
    ring = Ring(("x", "y", "z"), GF(101))
    M = random_linear_matrix(ring, 3, 2, random.Random(seed))
    assert hilbert_burch_check(M).holds


def test_hilbert_burch_shape_checked():
    with pytest.raises(PreconditionError):
        hilbert_burch_check(PolyMatrix([[x, y]], R))


def test_licci_row(cubic345):
    _, P = cubic345
    r = licci_row_check(P)
    assert r.holds and all(r.details["rows"].values())


def test_aci():
    assert aci_check(TRIANGLE).holds
    with pytest.raises(PreconditionError):
        aci_check(Ideal([x ** 2 - y * z, x * y], R))


def test_fitting_square_containment(fam2, cubic345):
    assert fitting_square_check(fam2.ideal).holds
    assert fitting_square_check(TRIANGLE).holds
    assert fitting_square_check(cubic345[1]).holds


def test_prime_step_examples():
    assert prime_step_check(TRIANGLE, 2).holds
    assert prime_step_check(Ideal([x ** 2 * y, y ** 3 * z, x * z ** 2], R), 3).holds


def test_compare_ideals():
    A, B = Ideal([x], R), Ideal([x, y], R)
    assert compare_ideals(A, A) == "equal"
    assert compare_ideals(A, B) == "annihilator strictly inside candidate"
    assert compare_ideals(B, A) == "candidate strictly inside annihilator"
    assert compare_ideals(A, Ideal([y], R)) == "incomparable"


def test_conjecture_explorer_is_reproducible():
    a = conjecture_explorer(7)
    b = conjecture_explorer(7)
    assert a.annihilator == b.annihilator and a.matrix == b.matrix
    assert a.fitting_containment is True
    assert a.relation in {"equal", "annihilator strictly inside candidate", "candidate strictly inside annihilator", "incomparable"}
    assert a.field == "GF(101)"


def test_space_curve_square_has_new_generator(cubic345):
    _, P = cubic345
    S = symbolic_power_prime(P, 2)
    assert len(minimal_generators(S)) == 4


def test_licci_row_on_gorenstein_curve():
    curve = MonomialCurve((5, 6, 7, 8), QQ)
    I = curve.toric_ideal()
    r = licci_row_check(I)
    assert r.holds and r.details["rows"] == {0: True}
    # with omega cyclic the row ideal is I itself, so I^(2) = I^2
    assert symbolic_power_prime(I, 2).equals(I ** 2)
