"""Structure-constant validation, adjoint maps, Killing form, classification."""

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecoh.extensions import builtin
from liecoh.liealg import (
    DimensionMismatch,
    JacobiViolation,
    SubalgebraNotClosed,
    change_of_basis,
    killing_determinant,
    killing_form,
    structure_report,
    subalgebra,
    validate,
)
from liecoh.ratlin import Matrix

SL2_BRACKETS = {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}


def test_validate_sl2():
    g = validate(3, ("H", "E", "F"), SL2_BRACKETS)
    assert g.bracket_basis(0, 1) == (Q(0), Q(2), Q(0))
    assert g.bracket_basis(1, 0) == (Q(0), Q(-2), Q(0))
    assert g.bracket_basis(2, 2) == (Q(0), Q(0), Q(0))


def test_validate_abelian():
    g = validate(4, ("a", "b", "c", "d"), {})
    assert all(not any(g.bracket_basis(i, j)) for i in range(4) for j in range(4))


def test_validate_rejects_broken_sl2():
    # replacing [E,F] = H by H + E breaks Jacobi on (H,E,F) with residual 2E
    broken = dict(SL2_BRACKETS)
    broken[(1, 2)] = (1, 1, 0)
    with pytest.raises(JacobiViolation) as exc:
        validate(3, ("H", "E", "F"), broken)
    assert exc.value.triple == (0, 1, 2)
    assert exc.value.residual == (Q(0), Q(2), Q(0))


def test_validate_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        validate(2, ("a",), {})
    with pytest.raises(DimensionMismatch):
        validate(2, ("a", "b"), {(0, 1): (1, 0, 0)})
    with pytest.raises(DimensionMismatch):
        validate(2, ("a", "b"), {(1, 0): (1, 0)})


def test_ad_matrix_sl2_h_is_diagonal():
    g = builtin("sl2").algebra
    assert g.ad_matrix((1, 0, 0)) == Matrix.from_rows(
        [[0, 0, 0], [0, 2, 0], [0, 0, -2]]
    )


def test_ad_matrix_of_zero():
    g = builtin("so3").algebra
    assert g.ad_matrix((0, 0, 0)).is_zero()


def test_ad_matrix_heisenberg():
    g = builtin("heis3").algebra
    adx = g.ad_matrix((1, 0, 0))
    assert adx.column(1) == (Q(0), Q(0), Q(1))  # X sends Y to Z
    assert adx.column(0) == (Q(0), Q(0), Q(0))
    assert adx.column(2) == (Q(0), Q(0), Q(0))


def test_killing_form_sl2():
    g = builtin("sl2").algebra
    assert killing_form(g) == Matrix.from_rows([[8, 0, 0], [0, 0, 4], [0, 4, 0]])
    assert killing_determinant(g) == Q(-128)


def test_killing_form_abelian_and_heisenberg_vanish():
    assert killing_form(builtin("abelian:3").algebra).is_zero()
    assert killing_form(builtin("heis3").algebra).is_zero()


def test_killing_form_so3():
    assert killing_form(builtin("so3").algebra) == Matrix.identity(3).scale(Q(-2))


def test_structure_report_sl2():
    rep = structure_report(builtin("sl2").algebra)
    assert rep.is_semisimple and rep.is_reductive
    assert rep.center.dim == 0 and rep.derived.dim == 3


def test_structure_report_semisimple_builtins_have_no_center():
    for name in ("sl2", "so3", "sl2sl2"):
        rep = structure_report(builtin(name).algebra)
        assert rep.is_semisimple and rep.center.dim == 0


def test_structure_report_abelian():
    rep = structure_report(builtin("abelian:2").algebra)
    assert not rep.is_semisimple and rep.is_reductive
    assert rep.center.dim == 2 and rep.derived.dim == 0


def test_structure_report_heisenberg():
    g = builtin("heis3").algebra
    rep = structure_report(g)
    assert not rep.is_semisimple and not rep.is_reductive
    assert rep.center.dim == 1 and rep.derived.dim == 1
    assert rep.center.vectors == ((Q(0), Q(0), Q(1)),)
    assert rep.derived.vectors == ((Q(0), Q(0), Q(1)),)


def test_subalgebra_accepts_so2_in_sl2():
    g = builtin("sl2").algebra
    h = subalgebra(g, [(0, 1, -1)])
    assert h.dim == 1


def test_subalgebra_rejects_span_E_F():
    g = builtin("sl2").algebra
    with pytest.raises(SubalgebraNotClosed):
        subalgebra(g, [(0, 1, 0), (0, 0, 1)])  # [E,F] = H leaves the span


def test_subalgebra_rejects_dependent_vectors():
    g = builtin("sl2").algebra
    with pytest.raises(SubalgebraNotClosed):
        subalgebra(g, [(0, 1, -1), (0, 2, -2)])


small_vectors = st.lists(
    st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=3, max_size=3
).map(tuple)


@given(small_vectors, small_vectors)
@settings(max_examples=40, deadline=None)
def test_ad_is_bracket_homomorphism(x, y):
    for name in ("sl2", "so3", "heis3"):
        g = builtin(name).algebra
        lhs = g.ad_matrix(g.bracket(x, y))
        rhs = g.ad_matrix(x) * g.ad_matrix(y) - g.ad_matrix(y) * g.ad_matrix(x)
        assert lhs == rhs


@given(small_vectors, small_vectors, small_vectors)
@settings(max_examples=40, deadline=None)
def test_killing_form_invariance(x, y, z):
    for name in ("sl2", "so3"):
        g = builtin(name).algebra
        b = killing_form(g)

        def pair(u, v):
            return sum(b.entries[i][j] * a * c for i, a in enumerate(u) for j, c in enumerate(v))

        assert pair(g.bracket(x, y), z) + pair(y, g.bracket(x, z)) == 0


def test_change_of_basis_preserves_structure():
    g = builtin("sl2").algebra
    # new basis: H+E, E, F (unit upper-triangular change)
    g2 = change_of_basis(g, [(1, 1, 0), (0, 1, 0), (0, 0, 1)])
    rep = structure_report(g2)
    assert rep.is_semisimple
    assert killing_determinant(g2) == Q(-128)  # determinant of P is 1
