from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frontcount.parser import ParseError, parse_polynomial
from frontcount.poly import (
    ContextError,
    Polynomial,
    UnknownVariableError,
    VarContext,
    arith,
    differentiate,
    divide_exact,
    format_polynomial,
    gcd_multivariate,
    substitute,
)
from frontcount.series import TruncatedSeries, truncate

from conftest import UVW, XY, P

XYZ = VarContext(["x", "y", "z"])


def test_parse_d4_component():
    p = P("2*u*v + 3*v^2 + w^2")
    assert p.terms == {(1, 1, 0): 2, (0, 2, 0): 3, (0, 0, 2): 1}


def test_parse_zero():
    assert P("0").terms == {}
    assert P("0").is_zero()


def test_parse_d4_last_component():
    assert P("u*v^2 + 2*v^3 + 2*v*w^2").terms == {(1, 2, 0): 1, (0, 3, 0): 2, (0, 1, 2): 2}


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-x^2", {(2, 0): -1}),
        ("(-x)^2", {(2, 0): 1}),
        ("1/2*x - 3/4", {(1, 0): Fraction(1, 2), (0, 0): Fraction(-3, 4)}),
        ("2*-x", {(1, 0): -2}),
        ("x - y - x", {(0, 1): -1}),
        ("  x *  y ", {(1, 1): 1}),
        ("(x + y)^2", {(2, 0): 1, (1, 1): 2, (0, 2): 1}),
        ("x^0", {(0, 0): 1}),
    ],
)
def test_parse_precedence(text, expected):
    assert parse_polynomial(text, XY).terms == expected


@pytest.mark.parametrize("text, pos", [("x +", 3), ("x * * y", 4), ("(x + y", 6), ("x $ y", 2), ("x^y", 2)])
def test_parse_syntax_error_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, XY)
    assert info.value.position == pos


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariableError) as info:
        parse_polynomial("x + q", XY)
    assert info.value.name == "q"


def test_parse_rejects_zero_denominator():
    with pytest.raises(ParseError):
        parse_polynomial("1/0*x", XY)


def test_arith_examples():
    vw = P("v*w")
    assert arith(vw, vw, "mul") == P("v^2*w^2")
    p = P("u*v^2 + 2*v^3 + 2*v*w^2")
    assert arith(p, -p, "add").is_zero()
    assert arith(P("2*u + 6*v"), P("w"), "mul") == P("2*u*w + 6*v*w")


def test_arith_context_mismatch():
    with pytest.raises(ContextError):
        arith(P("u"), parse_polynomial("x", XY), "add")


def test_differentiate_examples():
    assert differentiate(P("v*w"), "v") == P("w")
    assert differentiate(P("2*u*v + 3*v^2 + w^2"), "v") == P("2*u + 6*v")
    assert differentiate(P("u*v^2 + 2*v^3 + 2*v*w^2"), "w") == P("4*v*w")


def test_differentiate_unknown_variable():
    with pytest.raises(UnknownVariableError):
        differentiate(P("u"), "s")


def test_substitute_forced_cancellation():
    ctx = VarContext(["u", "s", "t", "v", "w"])
    pp = parse_polynomial("v*w", ctx)
    qq = parse_polynomial("2*u*v + 3*v^2 + w^2", ctx)
    expr = parse_polynomial("2*(s - v*w) + 3*v*(t - 2*u*v - 3*v^2 - w^2)", ctx)
    assert substitute(expr, {"s": pp, "t": qq}).is_zero()


def test_substitute_examples():
    p = P("2*u^3 + 6*u*v + 12*v^2")
    assert substitute(p, {"v": UVW.zero(), "w": UVW.zero()}) == P("2*u^3")
    q = parse_polynomial("x^2*y - y", XY)
    assert substitute(q, {"x": XY.var("x"), "y": XY.var("y")}) == q


def test_substitute_into_other_context():
    q = parse_polynomial("x*y", XY)
    out = substitute(q, {"x": P("u + v"), "y": P("w")})
    assert out == P("u*w + v*w")


def test_truncate_examples():
    s = truncate(P("u*v^2 + 2*v^3 + 2*v*w^2"), 2)
    assert s.poly.is_zero() and s.order == 2
    s = truncate(P("2*u + 6*v"), 5)
    assert s.poly == P("2*u + 6*v") and s.order == 5
    x = VarContext(["x"])
    s = truncate(parse_polynomial("1 + x + x^3", x), 1)
    assert s.poly == parse_polynomial("1 + x", x) and s.order == 1


def test_series_multiplication_order():
    a = TruncatedSeries(P("u"), 3)  # u + O(m^4)
    b = P("v^2")
    prod = a * b
    assert prod.order == 5
    assert prod.poly == P("u*v^2")
    assert (a * a).order == 4


def test_gcd_examples():
    assert gcd_multivariate([parse_polynomial(t, XY) for t in ("2*y", "3*x*y^2", "-2*y^4")]) == \
        parse_polynomial("y", XY)
    assert gcd_multivariate([parse_polynomial(t, XY) for t in ("2*y", "5*y^4 + x^3", "-6*x^2*y^2")]) == \
        parse_polynomial("1", XY)
    # x^2 y = x * (x y), x y^2 = y * (x y): common part x y
    assert gcd_multivariate([parse_polynomial("x^2*y", XY), parse_polynomial("x*y^2", XY)]) == \
        parse_polynomial("x*y", XY)


def test_gcd_normalization_is_trailing():
    g = gcd_multivariate([parse_polynomial("-4*x - 6*y^2", XY), parse_polynomial("2*x*y + 3*y^3", XY)])
    assert g == parse_polynomial("x + 3/2*y^2", XY)
    assert g.trailing_term()[1] == 1


def test_gcd_errors():
    with pytest.raises(ValueError):
        gcd_multivariate([XY.zero(), XY.zero()])
    with pytest.raises(ValueError):
        gcd_multivariate([])


def test_divide_exact():
    assert divide_exact(parse_polynomial("x^2 - y^2", XY), parse_polynomial("x - y", XY)) == \
        parse_polynomial("x + y", XY)
    with pytest.raises(ValueError):
        divide_exact(parse_polynomial("x^2 + y", XY), parse_polynomial("x", XY))


def test_printer_canonical_order():
    assert format_polynomial(P("w^2 + 3*v^2 + 2*v*u")) == "2*u*v + 3*v^2 + w^2"
    assert format_polynomial(P("-u + 1/2")) == "1/2 - u"
    assert format_polynomial(P("0")) == "0"


# -- properties ---------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps3 = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps3, coeffs, max_size=5).map(lambda t: Polynomial(XYZ, t))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == XYZ.zero()
    assert a * XYZ.one() == a


@given(polys, polys, st.sampled_from(["x", "y", "z"]))
def test_leibniz(a, b, x):
    assert differentiate(a * b, x) == a * differentiate(b, x) + b * differentiate(a, x)


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divisible_by_common_factor(p, q, g):
    d = gcd_multivariate([p * g, q * g])
    divide_exact(d, normalize(g))  # raises unless g | d
    divide_exact(p * g, d)
    divide_exact(q * g, d)


def normalize(p):
    return p.scale(1 / p.trailing_term()[1])


@given(polys)
def test_print_parse_roundtrip(p):
    assert parse_polynomial(format_polynomial(p), XYZ) == p


@given(polys, st.integers(0, 8), st.integers(0, 8))
def test_truncate_composes(p, d1, d2):
    lo, hi = min(d1, d2), max(d1, d2)
    assert truncate(truncate(p, hi).poly, lo) == truncate(p, lo)
