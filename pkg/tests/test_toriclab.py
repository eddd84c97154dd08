from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from evolab.exactfield import GF, QQ
from evolab.idealcalc import codimension, is_minimal_generator
from evolab.toriclab import (
    KUNZ_EXPONENTS,
    MonomialCurve,
    binomial_absence_check,
    family_exponents,
    in_semigroup,
    kunz_example,
    paper_family,
    pure_power_certificate,
    semigroup_representations,
)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_family_identity_is_exact(p):
    F = paper_family(p)
    assert F.curve.exponents == family_exponents(p)
    assert F.identity_residual().is_zero()
    assert all(F.curve.vanishes(g) for g in (F.f, F.g1, F.g2, F.g3))
    assert all(F.curve.vanishes(g) for g in F.ideal.gens)


@pytest.mark.parametrize("p", [2, 3])
def test_family_toric_ideal_shape(p):
    F = paper_family(p)
    assert codimension(F.ideal) == 3
    assert F.ideal.contains(F.f)
    assert not F.ideal.contains(F.ring.var(0))


def _monomials_of_degree(a, v):
    return [c for c in product(*(range(v // ai + 1) for ai in a)) if sum(ci * ai for ci, ai in zip(c, a)) == v]


@pytest.mark.parametrize("exps", [(3, 4, 5), (4, 6, 7, 9), (3, 5, 7)])
def test_toric_ideal_contains_every_binomial(exps):
    curve = MonomialCurve(exps, GF(32003))
    I = curve.toric_ideal()
    R = curve.ring
    for v in range(1, 4 * max(exps)):
        mons = _monomials_of_degree(exps, v)
        for u, w in zip(mons, mons[1:]):
            assert I.contains(R.monomial(u) - R.monomial(w))


def test_toric_ideal_of_rational_normal_curve():
    curve = MonomialCurve((1, 2, 3), QQ)
    assert len(curve.toric_ideal().gens) == 2  # (x2 - x1^2, x3 - x1 x2)


def test_curve_validation():
    with pytest.raises(ValueError):
        MonomialCurve((0, 2))
    with pytest.raises(ValueError):
        MonomialCurve((1, 2), names=("a",))


def test_substitution():
    curve = MonomialCurve((2, 3), QQ)
    a, b = curve.ring.gens
    assert curve.substitute(a ** 3 - b ** 2) == {}
    assert curve.substitute(a ** 3 + b ** 2) == {6: 2}


@settings(max_examples=60, deadline=None)
@given(a=st.lists(st.integers(2, 9), min_size=2, max_size=4), v=st.integers(0, 40))
def test_semigroup_search_matches_enumeration(a, v):
    brute = sorted(_monomials_of_degree(a, v))
    found = sorted(w.coefficients for w in semigroup_representations(a, v))
    assert found == brute
    assert all(w.total(a) == v for w in semigroup_representations(a, v))
    assert in_semigroup(a, v) == bool(brute)


def test_semigroup_exclusion_and_limit():
    assert not in_semigroup((4, 6, 7, 9), 8, exclude=(0,))
    assert in_semigroup((4, 6, 7, 9), 12, exclude=(0,))
    assert len(semigroup_representations((1, 1, 1), 5, limit=3)) == 3


def test_binomial_absence_examples():
    # with exponents (4,6,7,9): 4 and 8 are not sums of 6,7,9 but 12 = 6+6
    assert binomial_absence_check((4, 6, 7, 9), 0, 3)
    assert not binomial_absence_check((4, 6, 7, 9), 0, 4)
    # 9 is not a sum of 4, 6, 7 while 18 = 6+6+6 is
    assert binomial_absence_check((4, 6, 7, 9), 3, 2)
    assert not binomial_absence_check((4, 6, 7, 9), 3, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pure_power_certificate_for_witness(p):
    F = paper_family(p)
    j, a = pure_power_certificate(F.curve, F.f)
    assert (j, a) == (3, p)
    assert not F.ideal.times_maximal().contains(F.f)


@pytest.mark.parametrize("exps", [(3, 4, 5), (4, 6, 7, 9), (5, 6, 7, 8), (3, 5, 7)])
def test_certificate_agrees_with_nakayama(exps):
    curve = MonomialCurve(exps, GF(32003))
    I = curve.toric_ideal()
    x1 = curve.ring.var(0)
    for g in I.gens:
        if pure_power_certificate(curve, g) is not None:
            assert is_minimal_generator(I, g)
        # a multiple by a variable is never a minimal generator, and never certified
        assert pure_power_certificate(curve, x1 * g) is None
        assert not is_minimal_generator(I, x1 * g)


def test_kunz_curve():
    curve, I = kunz_example()
    assert curve.exponents == KUNZ_EXPONENTS
    assert curve.field == GF(2)
    assert len(I.gens) == 8
    assert all(curve.vanishes(g) for g in I.gens)
