"""Truncated formal power series: arithmetic, composition, inversion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifree.series import (
    TruncatedSeries1,
    TruncatedSeries2,
    s1_arith,
    s1_comp_inverse,
    s1_compose,
    s1_reciprocal,
    s1_shift_down,
    s2_arith,
    s2_compose_each_variable,
    s2_divide_monomial,
    s2_from_s1,
    s2_reciprocal,
    render_series_1,
    render_series_2,
    as_rational,
)
from bifree.errors import (
    NonzeroConstantTerm,
    NotInvertible,
    WDivisionError,
    ZeroConstantTerm,
)

F = Fraction


def s1(coeffs, trunc):
    return TruncatedSeries1({k: F(v) for k, v in coeffs.items()}, trunc)


def s2(coeffs, trunc):
    return TruncatedSeries2({k: F(v) for k, v in coeffs.items()}, trunc)


def test_comp_inverse_catalan_signs():
    # inverse of z + z^2 has signed Catalan coefficients
    f = s1({1: 1, 2: 1}, 5)
    g = s1_comp_inverse(f)
    assert g.coeffs == {1: 1, 2: -1, 3: 2, 4: -5, 5: 14}


def test_comp_inverse_round_trip():
    f = s1({1: 2, 2: -1, 3: F(1, 3), 4: 5}, 6)
    g = s1_comp_inverse(f)
    assert s1_compose(f, g).coeffs == {1: 1}
    assert s1_compose(g, f).coeffs == {1: 1}


def test_reciprocal_square():
    f = s1({0: 1, 1: 2, 2: 1}, 2)
    assert s1_reciprocal(f).coeffs == {0: 1, 1: -2, 2: 3}


def test_compose_restores_identity():
    f = s1({1: 1, 2: 1}, 3)
    g = s1({1: 1, 2: -1, 3: 2}, 3)
    assert s1_compose(f, g).coeffs == {1: 1}


def test_mul_basic():
    f = s1({1: 1, 2: 1}, 4)
    g = s1({1: 1, 2: -1}, 4)
    assert s1_arith(f, g, "mul").coeffs == {2: 1, 4: -1}


def test_compose_with_monomial():
    f = s1({0: 1, 1: 1, 2: 1}, 4)
    assert s1_compose(f, s1({2: 1}, 4)).coeffs == {0: 1, 2: 1, 4: 1}


def test_shift_down():
    f = s1({1: 3, 4: -2}, 5)
    assert s1_shift_down(f).coeffs == {0: 3, 3: -2}
    assert s1_shift_down(f).trunc_order == 4


def test_mul_truncation_takes_min():
    a = s1({1: 1}, 5)
    b = s1({1: 1}, 3)
    assert s1_arith(a, b, "mul").trunc_order == 3


def test_error_paths():
    with pytest.raises(ZeroConstantTerm):
        s1_reciprocal(s1({1: 1}, 3))
    with pytest.raises(NotInvertible):
        s1_comp_inverse(s1({0: 1, 1: 1}, 3))
    with pytest.raises(NotInvertible):
        s1_comp_inverse(s1({2: 1}, 3))
    with pytest.raises(NonzeroConstantTerm):
        s1_compose(s1({1: 1}, 3), s1({0: 1}, 3))


def test_two_var_compose_each_variable():
    f = s2({(1, 1): 1}, 3)
    sub_z = s1({1: 1}, 3)
    sub_w = s1({1: 1, 2: -1}, 3)
    out = s2_compose_each_variable(f, sub_z, sub_w)
    assert out.coeff(1, 1) == 1
    assert out.coeff(1, 2) == -1

    g = s2({(2, 0): 1, (0, 2): 1}, 4)
    out = s2_compose_each_variable(g, s1({1: 2}, 4), s1({}, 4))
    assert out.coeff(2, 0) == 4
    assert out.coeff(0, 2) == 0


def test_two_var_reciprocal():
    f = s2({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)
    g = s2_reciprocal(f)
    prod = s2_arith(f, g, "mul")
    assert prod.coeff(0, 0) == 1
    assert prod.coeff(1, 0) == 0
    assert prod.coeff(1, 1) == 0


def test_divide_monomial():
    f = s2({(1, 1): 2, (2, 1): -3}, 4)
    g = s2_divide_monomial(f, 1, 1)
    assert g.coeff(0, 0) == 2
    assert g.coeff(1, 0) == -3
    assert g.trunc_order == 2
    with pytest.raises(WDivisionError):
        s2_divide_monomial(s2({(1, 0): 1}, 3), 0, 1)


def test_s2_from_s1():
    f = s1({1: 1, 2: F(1, 2)}, 4)
    g = s2_from_s1(f, "w")
    assert g.coeff(0, 2) == F(1, 2)
    assert g.coeff(2, 0) == 0


def test_render():
    assert render_series_1(s1({0: 1, 1: -1, 2: 2}, 2)) == "1 - z + 2*z^2"
    assert render_series_1(s1({}, 2)) == "0"
    assert render_series_1(s1({1: F(2, 3)}, 2)) == "2/3*z"
    assert render_series_2(s2({(0, 0): 1, (1, 1): F(2, 3)}, 3)) == "1 + 2/3*z*w"


def test_as_rational():
    assert as_rational("3/4") == F(3, 4)
    assert as_rational(2) == F(2)
    assert as_rational(F(1, 3)) == F(1, 3)


small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def _build_series(vals, keys, trunc, unit_linear):
    coeffs = dict(zip(keys, vals))
    if unit_linear:
        coeffs[1] = F(1)
    return TruncatedSeries1(coeffs, trunc)


def series_strategy(trunc, zero_const=False, unit_linear=False):
    lo = 1 if zero_const else 0
    keys = list(range(lo, trunc + 1))
    return st.lists(small_fraction, min_size=len(keys), max_size=len(keys)).map(
        lambda vals: _build_series(vals, keys, trunc, unit_linear)
    )


@settings(max_examples=40, deadline=None)
@given(series_strategy(5), series_strategy(5), series_strategy(5))
def test_ring_axioms(a, b, c):
    ab = s1_arith(a, b, "mul")
    ba = s1_arith(b, a, "mul")
    assert ab.coeffs == ba.coeffs
    left = s1_arith(a, s1_arith(b, c, "add"), "mul")
    right = s1_arith(s1_arith(a, b, "mul"), s1_arith(a, c, "mul"), "add")
    assert left.coeffs == right.coeffs


@settings(max_examples=25, deadline=None)
@given(series_strategy(5, zero_const=True, unit_linear=True))
def test_comp_inverse_is_two_sided(f):
    g = s1_comp_inverse(f)
    assert s1_compose(f, g).coeffs == {1: F(1)}
    assert s1_compose(g, f).coeffs == {1: F(1)}


@settings(max_examples=25, deadline=None)
@given(series_strategy(5))
def test_reciprocal_identity(f):
    if f.coeff(0) == 0:
        return
    g = s1_reciprocal(f)
    assert s1_arith(f, g, "mul").coeffs == {0: F(1)}
