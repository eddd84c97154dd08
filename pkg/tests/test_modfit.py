import sympy
import pytest
from hypothesis import given, settings, strategies as st

from conftest import to_sympy
from evolab.idealcalc import Ideal, PreconditionError, maximal_ideal
from evolab.modfit import (
    IncompleteResolution,
    ModulePresentation,
    PolyMatrix,
    canonical_module,
    fitting_ideal,
    fitting_ideal_of_ideal,
    free_resolution,
    ideal_of_minors,
    iter_minors,
    minors,
    present_ideal_quotient,
    presentation_of_ideal,
    row_ideal,
)
from strategies import R3_GF, R3_QQ, homogeneous_polynomials, polynomials

R = R3_QQ
x, y, z = R.gens
SYMS = sympy.symbols("x y z")


def matrices(ring, rows, cols):
    return st.lists(
        st.lists(polynomials(ring, max_deg=2, max_terms=3), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(lambda r: PolyMatrix(r, ring))


@settings(max_examples=30, deadline=None)
@given(A=matrices(R, 3, 4), k=st.integers(1, 3))
def test_minors_match_sympy_determinants(A, k):
    S = sympy.Matrix([[to_sympy(e, SYMS) for e in r] for r in A.rows])
    for rows, cols, d in iter_minors(A, k):
        expected = sympy.expand(S.extract(list(rows), list(cols)).det())
        assert sympy.expand(to_sympy(d, SYMS) - expected) == 0


def test_minor_size_out_of_range():
    A = PolyMatrix([[x, y]], R)
    with pytest.raises(ValueError):
        minors(A, 2)
    assert ideal_of_minors(A, 2).is_zero()
    assert ideal_of_minors(A, 0).is_unit()


def test_reduced_minors_agree_modulo_ideal():
    I = Ideal([x ** 2, y * z], R)
    A = PolyMatrix([[x, y, z], [z, x, y], [y, z, x]], R)
    plain = minors(A, 2)
    red = minors(A, 2, reduce=I.normal_form)
    assert all(I.contains(a - b) for a, b in zip(plain, red))


def test_matrix_product_and_transpose():
    A = PolyMatrix([[x, y], [z, x]], R)
    B = A @ A.transpose()
    assert B[0, 1] == x * z + y * x
    assert B.transpose() == B
    with pytest.raises(ValueError):
        A @ PolyMatrix([[x, y, z]], R)


# -- presentations


def test_presentation_relations_vanish():
    I = Ideal([x * y, x * z, y * z], R)
    P = presentation_of_ideal(I)
    gens = PolyMatrix([P.generators], R)
    assert (gens @ P.matrix).is_zero()
    assert P.nrelations == 2


def test_quotient_presentation_relations_land_in_x():
    I = Ideal([x * y, x * z, y * z], R)
    P = present_ideal_quotient(I, x * y)
    assert P.ngens == 3
    row = (PolyMatrix([P.generators], R) @ P.matrix).row(0)
    X = Ideal([x * y], R)
    assert all(X.contains(e) for e in row)
    # the first generator is killed, so a unit vector appears among the relations
    assert any(P.matrix[0, j] == R.one() and all(P.matrix[i, j].is_zero() for i in (1, 2)) for j in range(P.nrelations))


def test_quotient_presentation_needs_membership():
    with pytest.raises(PreconditionError):
        present_ideal_quotient(Ideal([x, y], R), z)


def test_fitting_ideals_of_cyclic_module():
    # coker of the 1x2 matrix (x y) is R/(x,y)
    P = ModulePresentation(R, PolyMatrix([[x, y]], R))
    assert fitting_ideal(P, 0).equals(Ideal([x, y], R))
    assert fitting_ideal(P, 1).is_unit()
    with pytest.raises(ValueError):
        fitting_ideal(P, -1)


def test_fitting_ideals_of_the_maximal_ideal():
    # M needs three generators, has Koszul relations, and is generically of rank one
    M = maximal_ideal(R)
    assert fitting_ideal_of_ideal(M, 0).is_zero()
    assert fitting_ideal_of_ideal(M, 1).equals(M ** 2)
    assert fitting_ideal_of_ideal(M, 2).equals(M)
    assert fitting_ideal_of_ideal(M, 3).is_unit()


# -- resolutions


def test_koszul_resolution_of_maximal_ideal():
    res = free_resolution(maximal_ideal(R), 3)
    assert [m.shape for m in res] == [(1, 3), (3, 3), (3, 1)]
    for a, b in zip(res, res[1:]):
        assert (a @ b).is_zero()


def test_resolution_length_bound():
    with pytest.raises(IncompleteResolution) as info:
        free_resolution(maximal_ideal(R), 2)
    assert len(info.value.partial) == 2


@settings(max_examples=20, deadline=None)
@given(gens=st.lists(homogeneous_polynomials(R3_GF, 2), min_size=1, max_size=3))
def test_resolution_composes_to_zero(gens):
    res = free_resolution(Ideal(gens, R3_GF), 4)
    assert len(res) <= 3
    for a, b in zip(res, res[1:]):
        assert (a @ b).is_zero()


def test_hilbert_burch_resolution():
    # three quadrics with two linear syzygies
    I = Ideal([x * z - y ** 2, y * z - x * x, z * z - x * y], R)
    res = free_resolution(I, 2)
    assert [m.shape for m in res] == [(1, 3), (3, 2)]


def test_canonical_module_of_complete_intersection():
    I = Ideal([x, y], R)
    w = canonical_module(I)
    assert w.ngens == 1
    # omega of a complete intersection is cyclic with annihilator I
    assert fitting_ideal(w, 0).equals(I)
    assert row_ideal(w, 0).equals(I)


def test_canonical_module_rejects_non_perfect():
    # (xz, yz) = z*(x, y) has codim 1 but projective dimension 2
    with pytest.raises(PreconditionError):
        canonical_module(Ideal([x * z, y * z], R))


def test_canonical_module_of_codim3_gorenstein_curve():
    from evolab.toriclab import MonomialCurve

    # the semigroup <5,6,7,8> is symmetric, so its toric ideal is Gorenstein
    I = MonomialCurve((5, 6, 7, 8), R.field).toric_ideal()
    assert len(I.gens) == 5
    assert [m.shape for m in free_resolution(I, 3)] == [(1, 5), (5, 5), (5, 1)]
    w = canonical_module(I)
    assert w.ngens == 1
    assert fitting_ideal(w, 0).equals(I)
