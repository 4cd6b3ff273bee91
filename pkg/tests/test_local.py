import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frontcount.local import (
    INFINITE,
    Ideal,
    colength,
    reduce_to_monomials_if_linearly_triangularizable,
    staircase_colength,
)
from frontcount.poly import Polynomial, VarContext, substitute
from frontcount.series import TruncatedSeries

from conftest import UVW, XY, P
from strategies import invertible_matrices, linear_bindings, units


def I(*texts, ctx=UVW):
    return Ideal([P(t, ctx) for t in texts], ctx)


def test_maximal_ideal():
    res = colength(I("u", "v", "w"))
    assert res.value == 1 and res.basis_strings() == ["1"]
    assert res.status == "finite" and res.certificate == "nakayama"


def test_u_cubed():
    res = colength(I("u^3", "v", "w"))
    assert res.value == 3
    assert res.basis_strings() == ["1", "u", "u^2"]
    assert all(sum(b) < res.stabilization_degree for b in res.basis)


def test_swallowtail_jacobian_n3():
    assert colength(I("4*y", "3*x^2", ctx=XY)).value == 2


@pytest.mark.parametrize("axis_check", [True, False])
def test_non_m_primary_is_infinite(axis_check):
    res = colength(I("v", "w"), max_degree=12, axis_check=axis_check)
    assert res.value == INFINITE and not res.is_finite
    assert res.basis == ()
    assert res.certificate == ("axis" if axis_check else "bound")


def test_curve_off_the_axes_is_infinite():
    # zero set is the parabola x = y^2; no coordinate axis certifies it
    res = colength(I("x - y^2", ctx=XY), max_degree=10)
    assert res.value == INFINITE and res.certificate == "bound"
    res = colength(I("u - v^2", "w + u*v"), max_degree=10)
    assert res.value == INFINITE


def test_basis_spans_quotient_of_non_monomial_ideal():
    res = colength(I("u - v^2", "w", "v^3"))
    assert res.value == 3 and len(res.basis) == 3
    assert all(sum(b) < res.stabilization_degree for b in res.basis)


def test_unit_ideal():
    res = colength(I("1 + u", "v"))
    assert res.value == 0 and res.certificate == "unit"


def test_non_monomial_ideal():
    # <x^2 + y^3, x*y>: Milnor algebra style, staircase of <x^2, xy, y^4>
    assert colength(I("x^2 + y^3", "x*y", ctx=XY)).value == 5


def test_zero_generators_only():
    assert colength(Ideal([UVW.zero()], UVW)).value == INFINITE


def test_truncated_ideal_order_rule():
    gens = [TruncatedSeries(P("u^3 + v^5"), 6), P("v"), P("w")]
    res = colength(Ideal(gens, UVW))
    assert res.value == 3 and res.stabilization_degree + 1 <= 6
    short = Ideal([TruncatedSeries(P("u^3"), 2), P("v"), P("w")], UVW)
    assert colength(short).status == "order_too_small"


def test_max_degree_validation():
    with pytest.raises(ValueError):
        colength(I("u", "v", "w"), max_degree=0)


@pytest.mark.parametrize("n", range(1, 7))
def test_staircase_un(n):
    assert staircase_colength(I(f"u^{n}", "v", "w")) == n


def test_staircase_examples():
    assert staircase_colength(I("u", "v^2", "w")) == 2
    assert staircase_colength(I("x^2", "y^3", ctx=XY)) == 6
    assert staircase_colength(I("x^2", "x*y", ctx=XY)) == INFINITE
    assert staircase_colength(I("x^2", "x*y", "y^2", ctx=XY)) == 3


def test_staircase_rejects_polynomials():
    with pytest.raises(ValueError):
        staircase_colength(I("u + v", "w"))


def test_reduce_examples():
    red = reduce_to_monomials_if_linearly_triangularizable(I("w", "v", "2*u + 6*v", "2*w"))
    assert red is not None and sorted(map(str, red.generators)) == ["u", "v", "w"]
    red = reduce_to_monomials_if_linearly_triangularizable(I("v", "w", "2*u^4"))
    assert staircase_colength(red) == 4
    assert reduce_to_monomials_if_linearly_triangularizable(I("v^2 + w^3")) is None


def test_reduce_skips_truncated():
    ideal = Ideal([TruncatedSeries(P("u"), 3), P("v"), P("w")], UVW)
    assert reduce_to_monomials_if_linearly_triangularizable(ideal) is None


# -- properties ---------------------------------------------------------

# bounds keep the stabilization degree (sum of pure-power exponents) small
MAX_POWER = {2: 6, 3: 4, 4: 3}


@st.composite
def monomial_ideals(draw):
    n = draw(st.integers(2, 4))
    ctx = VarContext(["a", "b", "c", "d"][:n])
    gens = []
    for i in range(n):
        if draw(st.integers(0, 5)):  # usually m-primary, sometimes not
            e = [0] * n
            e[i] = draw(st.integers(1, MAX_POWER[n]))
            gens.append(tuple(e))
    extra = st.tuples(*[st.integers(0, 3)] * n).filter(lambda e: 0 < sum(e) <= 6)
    gens += draw(st.lists(extra, max_size=4))
    if not gens:
        gens = [tuple([1] + [0] * (n - 1))]
    return Ideal([Polynomial(ctx, {e: 1}) for e in gens], ctx)


@settings(max_examples=150)
@given(monomial_ideals())
def test_colength_matches_staircase(ideal):
    assert colength(ideal, max_degree=16).value == staircase_colength(ideal)


FAMILY = [
    ("u^3", "v", "w"),
    ("w", "v", "2*u + 6*v", "2*w"),
    ("w", "v", "2*u^2 + 6*v", "2*w"),
    ("u", "v^2", "w"),
    ("u^2 + v*w", "v^2", "w^2 - u*v"),
]
FAMILY_VALUES = [colength(I(*gens)).value for gens in FAMILY]


def test_family_values():
    # last entry: three quadrics meeting only at 0, so Bezout gives 2*2*2
    assert FAMILY_VALUES == [3, 1, 2, 2, 8]


@settings(max_examples=100)
@given(st.integers(0, len(FAMILY) - 1), invertible_matrices(3))
def test_linear_change_invariance(k, matrix):
    bindings = linear_bindings(UVW, matrix)
    moved = Ideal([substitute(g, bindings) for g in I(*FAMILY[k])], UVW)
    assert colength(moved).value == FAMILY_VALUES[k]


@settings(max_examples=100)
@given(st.integers(0, len(FAMILY) - 1), st.lists(units(UVW), min_size=5, max_size=5))
def test_unit_rescaling_invariance(k, us):
    gens = [g * u for g, u in zip(I(*FAMILY[k]), us)]
    assert colength(Ideal(gens, UVW)).value == FAMILY_VALUES[k]


@settings(max_examples=100)
@given(st.integers(0, len(FAMILY) - 1), st.randoms(use_true_random=False))
def test_generator_order_insensitive(k, rnd):
    gens = list(I(*FAMILY[k]))
    rnd.shuffle(gens)
    res = colength(Ideal(gens, UVW))
    ref = colength(I(*FAMILY[k]))
    assert (res.value, res.basis) == (ref.value, ref.basis)


@settings(max_examples=100)
@given(monomial_ideals())
def test_doubled_bound_is_stable(ideal):
    a = colength(ideal, max_degree=12)
    if a.is_finite:
        b = colength(ideal, max_degree=24)
        assert (a.value, a.basis) == (b.value, b.basis)


@settings(max_examples=100)
@given(st.integers(0, len(FAMILY) - 1), st.lists(st.integers(-3, 3), min_size=5, max_size=5),
       st.lists(units(UVW), min_size=5, max_size=5))
def test_redundant_generator(k, cs, multipliers):
    gens = list(I(*FAMILY[k]))
    combo = UVW.zero()
    for c, m, g in zip(cs, multipliers, gens):
        combo = combo + (g * m).scale(c)
    assert colength(Ideal(gens + [combo], UVW)).value == FAMILY_VALUES[k]


def test_random_monomial_ideals_reduce_to_themselves():
    rnd = random.Random(7)
    for _ in range(20):
        exps = [tuple(rnd.randint(0, 3) for _ in range(3)) for _ in range(3)]
        exps = [e for e in exps if sum(e)] or [(1, 0, 0)]
        ideal = Ideal([Polynomial(UVW, {e: 1}) for e in exps], UVW)
        red = reduce_to_monomials_if_linearly_triangularizable(ideal)
        assert staircase_colength(red) == staircase_colength(ideal)
