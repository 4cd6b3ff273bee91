"""Map germs (C^n, 0) -> (C^(n+1), 0): Jacobian data, frontality and the corank-2 normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .linalg import Echelon, determinant, rank, solve
from .local import Ideal, colength
from .poly import (
    Polynomial,
    VarContext,
    differentiate,
    divide_exact,
    gcd_multivariate,
    substitute,
)
from .series import TruncatedSeries

Matrix = list[list[Polynomial]]


class GermError(ValueError):
    """A germ fails a mathematical precondition (wrong corank, bad shape)."""


class InconsistentSystem(ArithmeticError):
    """No alpha, beta solve the frontal equations with these p, q, r roles."""

    def __init__(self, degree: int):
        super().__init__(
            f"no alpha, beta match r_v, r_w at degree {degree}: "
            "the germ is not frontal with these p, q roles"
        )
        self.degree = degree


@dataclass(frozen=True)
class MapGerm:
    context: VarContext
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.context.arity + 1:
            raise GermError(
                f"a germ of {self.context.arity} variables needs "
                f"{self.context.arity + 1} components, got {len(comps)}"
            )
        for i, c in enumerate(comps):
            if c.context != self.context:
                raise GermError(f"component {i + 1} lives in {c.context}, not {self.context}")
            if c.constant_term():
                raise GermError(f"component {i + 1} does not vanish at the origin")

    @property
    def n(self) -> int:
        return self.context.arity


def jacobian(f: MapGerm) -> Matrix:
    """Rows are components, columns are source variables."""
    return [[differentiate(c, x) for x in f.context.names] for c in f.components]


def k_minors(M: Matrix, k: int) -> list[Polynomial]:
    """All k-by-k minors; row subsets outer, column subsets inner, both lexicographic."""
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if not 1 <= k <= min(nrows, ncols):
        raise ValueError(f"minor size {k} out of range for a {nrows}x{ncols} matrix")
    out = []
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            out.append(determinant([[M[i][j] for j in cols] for i in rows]))
    return out


def ramification_ideal(f: MapGerm) -> Ideal:
    return Ideal(k_minors(jacobian(f), f.n), f.context)


@dataclass(frozen=True)
class FrontalityVerdict:
    """``status`` is ``"frontal"``, ``"not_frontal"`` or ``"inconclusive"``.

    ``not_frontal`` is only issued with a certificate: the minor quotients
    generate an ideal of finite colength, which no proper principal ideal
    of a local ring of dimension two or more has.
    """

    status: str
    generator: Optional[Polynomial] = None
    quotients: tuple[Polynomial, ...] = ()
    note: str = ""

    @property
    def is_frontal(self) -> bool:
        return self.status == "frontal"


def frontality_check(f: MapGerm, max_degree: int = 24) -> FrontalityVerdict:
    minors = k_minors(jacobian(f), f.n)
    if not any(minors):
        return FrontalityVerdict(
            "inconclusive", note="every maximal minor vanishes; the germ is nowhere an immersion"
        )
    g = gcd_multivariate(minors)
    quotients = tuple(divide_exact(m, g) for m in minors)
    if any(h.constant_term() for h in quotients):
        return FrontalityVerdict("frontal", g, quotients)
    if f.n >= 2:
        res = colength(Ideal(quotients, f.context), max_degree)
        if res.is_finite:
            return FrontalityVerdict(
                "not_frontal",
                g,
                quotients,
                note=f"minor quotients generate an ideal of colength {res.value}",
            )
    return FrontalityVerdict(
        "inconclusive",
        g,
        quotients,
        note="polynomial gcd leaves no unit quotient; a power-series factor may still exist",
    )


def linear_part(f: MapGerm) -> list[list[Fraction]]:
    n = f.n
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return [[c.coefficient(e) for e in units] for c in f.components]


def corank_at_origin(f: MapGerm) -> int:
    return f.n - rank(linear_part(f))


@dataclass(frozen=True)
class Corank2Germ:
    """A germ ``(u_1..u_d, p, q, r)`` with ``p, q, r`` in ``m^2``."""

    context: VarContext
    u_vars: tuple[str, ...]
    v: str
    w: str
    p: Polynomial
    q: Polynomial
    r: Polynomial

    def __post_init__(self):
        names = set(self.u_vars) | {self.v, self.w}
        if len(names) != len(self.u_vars) + 2 or names != set(self.context.names):
            raise GermError("u, v, w must partition the source variables")
        for label, h in (("p", self.p), ("q", self.q), ("r", self.r)):
            if h.order < 2:
                raise GermError(f"{label} = {h} is not in m^2")

    def as_map_germ(self) -> MapGerm:
        comps = [self.context.var(u) for u in self.u_vars] + [self.p, self.q, self.r]
        return MapGerm(self.context, tuple(comps))

    def partial(self, which: str, x: str) -> Polynomial:
        return differentiate(getattr(self, which), x)


@dataclass(frozen=True)
class Normalization:
    germ: Corank2Germ
    source_change: dict[str, Polynomial] = field(default_factory=dict)
    target_rows: tuple[int, ...] = ()
    target_elimination: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def is_identity(self) -> bool:
        rows_identity = self.target_rows == tuple(range(len(self.target_rows)))
        no_elim = all(not any(r) for r in self.target_elimination)
        return not self.source_change and rows_identity and no_elim


def normalize_corank2(f: MapGerm, column_order: Optional[Sequence[str]] = None) -> Normalization:
    """Bring a corank-2 germ to ``(u, p, q, r)`` form by linear changes of coordinates.

    Pivot rows of the linear part become the ``u`` components; pivot
    columns are the first nonzero ones in ``column_order`` (context order
    by default). Raises :class:`GermError` if the corank is not 2 or the
    ``u`` components keep nonlinear terms.
    """
    n = f.n
    if n < 2:
        raise GermError("corank 2 needs at least two source variables")
    ctx = f.context
    cr = corank_at_origin(f)
    if cr != 2:
        raise GermError(f"corank at the origin is {cr}, not 2")
    cols = [ctx.index(x) for x in (column_order or ctx.names)]
    if sorted(cols) != list(range(n)):
        raise GermError("column order must list every source variable once")
    A = linear_part(f)

    ech = Echelon()
    pivot_rows = []
    for i, row in enumerate(A):
        if ech.add({j: v for j, v in enumerate(row) if v}):
            pivot_rows.append(i)
    other_rows = [i for i in range(n + 1) if i not in pivot_rows]

    # RREF of the pivot rows with columns taken in column_order
    B = [[A[i][cols[k]] for k in range(n)] for i in pivot_rows]
    ech = Echelon()
    for row in B:
        ech.add({j: v for j, v in enumerate(row) if v})
    lead_positions = sorted(ech.pivots)
    pivot_cols = [cols[k] for k in lead_positions]
    free_cols = [c for c in cols if c not in pivot_cols]
    u_names = tuple(ctx.names[c] for c in pivot_cols)
    v_name, w_name = (ctx.names[c] for c in free_cols)

    # solve B x = u for the pivot variables: x_piv = C^{-1} (u - B_free x_free)
    C = [[A[i][c] for c in pivot_cols] for i in pivot_rows]
    Cinv = _invert(C)
    source_change: dict[str, Polynomial] = {}
    for a, pc in enumerate(pivot_cols):
        expr = ctx.zero()
        for k, i in enumerate(pivot_rows):
            rhs = ctx.var(u_names[k])
            for fc in free_cols:
                rhs = rhs - ctx.var(ctx.names[fc]).scale(A[i][fc])
            expr = expr + rhs.scale(Cinv[a][k])
        if expr != ctx.var(ctx.names[pc]):
            source_change[ctx.names[pc]] = expr

    comps = [substitute(c, source_change) if source_change else c for c in f.components]
    u_comps = [comps[i] for i in pivot_rows]
    for k, uc in enumerate(u_comps):
        if uc != ctx.var(u_names[k]):
            raise GermError(
                f"component {pivot_rows[k] + 1} becomes {uc}, not the coordinate {u_names[k]}; "
                "a nonlinear source change would be needed"
            )
    unit_exps = [tuple(1 if j == ctx.index(u) else 0 for j in range(n)) for u in u_names]
    eliminated = []
    elimination = []
    for i in other_rows:
        c = comps[i]
        coeffs = tuple(c.coefficient(e) for e in unit_exps)
        for k, a in enumerate(coeffs):
            if a:
                c = c - u_comps[k].scale(a)
        eliminated.append(c)
        elimination.append(coeffs)
    p, q, r = eliminated
    germ = Corank2Germ(ctx, u_names, v_name, w_name, p, q, r)
    return Normalization(germ, source_change, tuple(pivot_rows + other_rows), tuple(elimination))


def _invert(C: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(C)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(m)]
           for i, row in enumerate(C)]
    for col in range(m):
        piv = next(r for r in range(col, m) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


@dataclass(frozen=True)
class FrontalCoefficients:
    """alpha, beta (and the lambdas) with ``dr = sum lambda_i du_i + alpha dp + beta dq``.

    ``alpha``/``beta`` carry ``order=None`` when they solve the equations
    exactly as polynomials.
    """

    alpha: TruncatedSeries
    beta: TruncatedSeries
    order: int
    unique: bool
    lambdas: tuple[TruncatedSeries, ...] = ()

    @property
    def exact(self) -> bool:
        return self.alpha.is_exact and self.beta.is_exact


def recover_alpha_beta(g: Corank2Germ, order: int = 12) -> FrontalCoefficients:
    """Solve ``r_v = a p_v + b q_v``, ``r_w = a p_w + b q_w`` for series a, b.

    All coefficients of ``a`` and ``b`` up to degree ``order`` are unknowns
    of one exact linear system matching every coefficient of the two
    equations through degree ``order + 1``. Free unknowns are set to zero.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    ctx = g.context
    monos = ctx.monomials_upto(order)
    index = {e: i for i, e in enumerate(monos)}
    N = len(monos)
    eq_index: dict[tuple[int, tuple], int] = {}
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    eq_degree: list[int] = []

    def equation(which: int, exps) -> int:
        key = (which, exps)
        if key not in eq_index:
            eq_index[key] = len(rows)
            rows.append({})
            rhs.append(Fraction(0))
            eq_degree.append(sum(exps))
        return eq_index[key]

    limit = order + 1
    for which, x in enumerate((g.v, g.w)):
        r_x = g.partial("r", x)
        for exps in ctx.monomials_upto(limit):
            equation(which, exps)
        for exps, c in r_x._terms.items():
            if sum(exps) <= limit:
                rhs[equation(which, exps)] += c
        for offset, src in ((0, g.partial("p", x)), (N, g.partial("q", x))):
            for a in monos:
                for t, c in src._terms.items():
                    m = tuple(i + j for i, j in zip(a, t))
                    if sum(m) <= limit:
                        row = rows[equation(which, m)]
                        col = offset + index[a]
                        row[col] = row.get(col, 0) + c

    # equations ordered by degree so an inconsistency reports its lowest degree
    perm = sorted(range(len(rows)), key=lambda i: eq_degree[i])
    x, unique, bad = solve([rows[i] for i in perm], [rhs[i] for i in perm], 2 * N)
    if x is None:
        raise InconsistentSystem(eq_degree[perm[bad]])
    alpha = Polynomial(ctx, {monos[i]: x[i] for i in range(N)})
    beta = Polynomial(ctx, {monos[i]: x[N + i] for i in range(N)})

    exact = all(
        g.partial("r", y) == alpha * g.partial("p", y) + beta * g.partial("q", y)
        for y in (g.v, g.w)
    )
    series_order = None if exact else order
    a_s = TruncatedSeries(alpha, series_order)
    b_s = TruncatedSeries(beta, series_order)
    lambdas = tuple(
        TruncatedSeries(g.partial("r", u), None)
        - a_s * g.partial("p", u)
        - b_s * g.partial("q", u)
        for u in g.u_vars
    )
    return FrontalCoefficients(a_s, b_s, order, unique or exact, lambdas)


@dataclass(frozen=True)
class WavefrontResult:
    holds: bool
    M0: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.M0
        return a * d - b * c


def wavefront_check(g: Corank2Germ, coeffs: FrontalCoefficients) -> WavefrontResult:
    """Test ``det M(0) != 0`` for ``M = [[a_v, a_w], [b_v, b_w]]``."""
    if coeffs.order < 1:
        raise ValueError("wave-front test needs coefficients of order at least 1")
    def at0(s: TruncatedSeries, x: str) -> Fraction:
        return differentiate(s.poly, x).constant_term()

    M0 = (
        (at0(coeffs.alpha, g.v), at0(coeffs.alpha, g.w)),
        (at0(coeffs.beta, g.v), at0(coeffs.beta, g.w)),
    )
    det = M0[0][0] * M0[1][1] - M0[0][1] * M0[1][0]
    return WavefrontResult(det != 0, M0)
