"""D4 counts of corank-2 wave fronts (C^3, 0) -> (C^4, 0).

Four ideals cut out the corank-2 locus of a stable frontal unfolding and
should all have the same colength on wave-front input:

* ``corollary``: ``<p_v, p_w, q_v, q_w>``
* ``full_minors``: the same plus ``r_v, r_w``
* ``theorem_derivation``: ``a_v p_v + b_v q_v, a_v p_w + b_v q_w, a_w p_w + b_w q_w``
* ``j22``: ``<h_v, h_w, h_vv, h_vw, h_ww>`` for ``h = r + a (s - p) + b (t - q)``

``theorem_statement`` swaps the roles of ``p`` and ``q`` in the third
family; it is computed for comparison only and never enters agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .germ import (
    Corank2Germ,
    FrontalCoefficients,
    FrontalityVerdict,
    GermError,
    InconsistentSystem,
    WavefrontResult,
    frontality_check,
    recover_alpha_beta,
    wavefront_check,
)
from .local import (
    DEFAULT_MAX_DEGREE,
    INFINITE,
    ColengthResult,
    Ideal,
    colength,
    reduce_to_monomials_if_linearly_triangularizable,
    staircase_colength,
)
from .poly import Polynomial, VarContext, differentiate, embed
from .series import TruncatedSeries

DEFAULT_ORDER = 12
ROUTES = ("corollary", "full_minors", "theorem_derivation", "theorem_statement", "j22")


def corollary_ideal(g: Corank2Germ) -> Ideal:
    return Ideal(
        [g.partial("p", g.v), g.partial("p", g.w), g.partial("q", g.v), g.partial("q", g.w)],
        g.context,
    )


def full_corank2_ideal(g: Corank2Germ) -> Ideal:
    gens = list(corollary_ideal(g).generators)
    return Ideal(gens + [g.partial("r", g.v), g.partial("r", g.w)], g.context)


def theorem_route_ideal(
    g: Corank2Germ, coeffs: FrontalCoefficients, form: str = "derivation"
) -> Ideal:
    """The three-generator ideal built from the v, w derivatives of alpha and beta.

    ``form="derivation"`` pairs ``alpha`` with ``p`` and ``beta`` with ``q``;
    ``form="statement"`` uses the swapped pairing.
    """
    a_v, a_w = coeffs.alpha.diff(g.v), coeffs.alpha.diff(g.w)
    b_v, b_w = coeffs.beta.diff(g.v), coeffs.beta.diff(g.w)
    p_v, p_w = g.partial("p", g.v), g.partial("p", g.w)
    q_v, q_w = g.partial("q", g.v), g.partial("q", g.w)
    if form == "derivation":
        gens = [a_v * p_v + b_v * q_v, a_v * p_w + b_v * q_w, a_w * p_w + b_w * q_w]
    elif form == "statement":
        gens = [b_v * p_v + a_v * q_v, b_v * p_w + a_v * q_w, b_w * p_w + a_w * q_w]
    else:
        raise ValueError(f"unknown form {form!r}")
    return Ideal(gens, g.context)


@dataclass(frozen=True)
class UnfoldingFunction:
    """``h(u, s, t, v, w)``; ``H = (u, s, t, h)`` has the front as discriminant."""

    context: VarContext
    h: TruncatedSeries
    u_vars: tuple[str, ...]
    s: str
    t: str
    v: str
    w: str


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def build_unfolding_function(g: Corank2Germ, coeffs: FrontalCoefficients) -> UnfoldingFunction:
    taken = set(g.context.names)
    s, t = _fresh("s", taken), _fresh("t", taken)
    ctx = VarContext(list(g.u_vars) + [s, t, g.v, g.w])
    p, q, r = (embed(x, ctx) for x in (g.p, g.q, g.r))
    alpha, beta = coeffs.alpha.embed(ctx), coeffs.beta.embed(ctx)
    h = TruncatedSeries(r) + alpha * (ctx.var(s) - p) + beta * (ctx.var(t) - q)
    return UnfoldingFunction(ctx, h, tuple(g.u_vars), s, t, g.v, g.w)


def j22_ideal(H: UnfoldingFunction) -> Ideal:
    h_v, h_w = H.h.diff(H.v), H.h.diff(H.w)
    return Ideal([h_v, h_w, h_v.diff(H.v), h_v.diff(H.w), h_w.diff(H.w)], H.context)


@dataclass(frozen=True)
class CountOptions:
    order: int = DEFAULT_ORDER
    max_degree: int = DEFAULT_MAX_DEGREE
    routes: str = "all"

    def __post_init__(self):
        if self.routes not in ("all", "corollary"):
            raise ValueError(f"routes must be 'all' or 'corollary', not {self.routes!r}")
        if self.order < 1 or self.max_degree < 1:
            raise ValueError("order and max_degree must be positive")


@dataclass(frozen=True)
class D4CountReport:
    count: Union[int, float]
    routes: dict[str, Optional[ColengthResult]]
    agreement: dict[str, bool]
    frontality: FrontalityVerdict
    wavefront: Optional[WavefrontResult]
    coefficients: Optional[FrontalCoefficients]
    oracle: Optional[Union[int, float]] = None
    warnings: tuple[str, ...] = ()
    skipped: dict[str, str] = field(default_factory=dict)

    @property
    def route_corollary(self) -> ColengthResult:
        return self.routes["corollary"]

    @property
    def is_finite(self) -> bool:
        return self.count != INFINITE

    def all_routes_agree(self) -> bool:
        return all(self.agreement.values())


def count_d4(g: Corank2Germ, options: CountOptions = CountOptions()) -> D4CountReport:
    """Number of D4 points in a stable frontal unfolding: ``dim O_3 / <p_v, p_w, q_v, q_w>``."""
    if g.context.arity != 3:
        raise GermError(
            f"D4 counting needs 3 source variables (u; v, w), got {g.context.arity}"
        )
    warnings: list[str] = []
    skipped: dict[str, str] = {}
    frontality = frontality_check(g.as_map_germ(), options.max_degree)
    if not frontality.is_frontal:
        warnings.append(f"frontality verdict is {frontality.status}")

    coeffs: Optional[FrontalCoefficients] = None
    wave: Optional[WavefrontResult] = None
    try:
        coeffs = recover_alpha_beta(g, options.order)
        wave = wavefront_check(g, coeffs)
    except InconsistentSystem as exc:
        warnings.append(str(exc))
    if wave is None or not wave.holds:
        warnings.append("wave-front hypothesis unverified (det M(0) = 0 or no alpha, beta)")

    cor_ideal = corollary_ideal(g)
    routes: dict[str, Optional[ColengthResult]] = {name: None for name in ROUTES}
    routes["corollary"] = colength(cor_ideal, options.max_degree)
    count = routes["corollary"].value

    if options.routes == "all":
        routes["full_minors"] = colength(full_corank2_ideal(g), options.max_degree)
        if coeffs is not None:
            for name, form in (("theorem_derivation", "derivation"),
                               ("theorem_statement", "statement")):
                routes[name] = colength(theorem_route_ideal(g, coeffs, form), options.max_degree)
            H = build_unfolding_function(g, coeffs)
            routes["j22"] = colength(j22_ideal(H), options.max_degree)
        else:
            for name in ("theorem_derivation", "theorem_statement", "j22"):
                skipped[name] = "no alpha, beta"
        for name, res in routes.items():
            if res is not None and res.status == "order_too_small":
                skipped[name] = "order"
                if name == "theorem_statement":
                    continue
                warnings.append(
                    f"route {name} skipped: truncation order {options.order} too small, "
                    "retry with a larger --order"
                )
    else:
        for name in ROUTES[1:]:
            skipped[name] = "not requested"

    agreement: dict[str, bool] = {}
    for name in ("full_minors", "theorem_derivation", "j22"):
        res = routes[name]
        if res is not None and res.status != "order_too_small":
            agreement[f"corollary={name}"] = res.value == count

    oracle = None
    reduced = reduce_to_monomials_if_linearly_triangularizable(cor_ideal)
    if reduced is not None:
        oracle = staircase_colength(reduced)
        agreement["corollary=staircase"] = oracle == count

    if count == INFINITE:
        warnings.append(
            "non-isolated corank-2 locus: the germ is not F-finite at corank 2"
        )
    return D4CountReport(
        count=count,
        routes=routes,
        agreement=agreement,
        frontality=frontality,
        wavefront=wave,
        coefficients=coeffs,
        oracle=oracle,
        warnings=tuple(warnings),
        skipped=skipped,
    )


def milnor_colength(g: Polynomial, max_degree: int = DEFAULT_MAX_DEGREE) -> ColengthResult:
    if g.constant_term():
        raise ValueError("Milnor number needs a function vanishing at the origin")
    ctx = g.context
    return colength(Ideal([differentiate(g, x) for x in ctx.names], ctx), max_degree)


def milnor_number(g: Polynomial, max_degree: int = DEFAULT_MAX_DEGREE) -> Union[int, float]:
    """Colength of the Jacobian ideal; ``INFINITE`` for non-isolated singularities."""
    return milnor_colength(g, max_degree).value


@dataclass(frozen=True)
class FrontalMilnorNumber:
    value: Fraction

    @property
    def consistent(self) -> bool:
        """False when the invariant data give a non-integer value."""
        return self.value.denominator == 1


def frontal_milnor_surface(muD: int, S: int, W: int, K: int, T: int) -> FrontalMilnorNumber:
    """``(muD + S + W - 1) / 2 - K - 2 T`` for a wave-front surface germ."""
    for label, x in (("muD", muD), ("S", S), ("W", W), ("K", K), ("T", T)):
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"{label} must be a non-negative integer, got {x!r}")
    return FrontalMilnorNumber(Fraction(muD + S + W - 1, 2) - K - 2 * T)
