"""Colength of ideals in the local ring at the origin.

The engine builds truncated Macaulay matrices degree by degree and stops
as soon as every monomial of degree ``D`` lies in ``I + m^(D+1)``; by
Nakayama this forces ``m^D`` into ``I`` and the quotient is then a
finite-dimensional space spanned by monomials of degree below ``D``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Union

from .linalg import Echelon
from .poly import Exps, Polynomial, VarContext, monomial_divides, monomial_key, substitute
from .series import TruncatedSeries

INFINITE = math.inf
DEFAULT_MAX_DEGREE = 24


class Ideal:
    """A finitely generated ideal of the local ring at the origin.

    ``order`` is the truncation order shared by all generators when they
    stand for power series known only modulo ``m^(order+1)``; ``None``
    means the generators are exact.
    """

    def __init__(
        self,
        generators: Iterable[Union[Polynomial, TruncatedSeries]],
        context: Optional[VarContext] = None,
        order: Optional[int] = None,
    ):
        polys = []
        orders = [] if order is None else [order]
        for g in generators:
            if isinstance(g, TruncatedSeries):
                if g.order is not None:
                    orders.append(g.order)
                g = g.poly
            polys.append(g)
        if not polys:
            raise ValueError("an ideal needs at least one generator")
        ctx = context or polys[0].context
        for g in polys:
            if g.context != ctx:
                raise ValueError(f"generator {g} is not in {ctx}")
        self.context = ctx
        self.order = min(orders) if orders else None
        if self.order is not None:
            polys = [TruncatedSeries(g, self.order).poly for g in polys]
        self.generators: tuple[Polynomial, ...] = tuple(polys)

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def is_monomial(self) -> bool:
        return all(g.is_zero() or g.is_monomial() for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        suffix = "" if self.order is None else f" mod deg {self.order + 1}"
        return f"<{gens}>{suffix}"


@dataclass(frozen=True)
class ColengthResult:
    """Outcome of a colength computation.

    ``status`` is ``"finite"``, ``"infinite"`` or ``"order_too_small"``.
    ``certificate`` says why: ``"nakayama"`` (criterion fired),
    ``"unit"`` (a generator is a unit), ``"axis"`` (a coordinate axis
    lies in the zero set) or ``"bound"`` (``max_degree`` exhausted).
    """

    value: Union[int, float, None]
    stabilization_degree: Optional[int]
    basis: tuple[Exps, ...] = ()
    status: str = "finite"
    certificate: str = "nakayama"
    context: Optional[VarContext] = field(default=None, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def basis_strings(self) -> list[str]:
        if self.context is None:
            return [str(b) for b in self.basis]
        return [self.context.format_monomial(b) for b in self.basis]


def _truncated_shift(g: Polynomial, shift: Exps, degree: int, index: dict) -> dict[int, Fraction]:
    row = {}
    dshift = sum(shift)
    for exps, c in g._terms.items():
        if sum(exps) + dshift <= degree:
            row[index[tuple(a + b for a, b in zip(exps, shift))]] = c
    return row


def _axis_in_zero_set(ideal: Ideal) -> Optional[int]:
    """Index of a coordinate axis on which every generator vanishes identically."""
    n = ideal.context.arity
    for i in range(n):
        if all(
            all(any(e for j, e in enumerate(exps) if j != i) for exps in g._terms)
            for g in ideal.generators
        ):
            return i
    return None


def colength(
    ideal: Ideal, max_degree: int = DEFAULT_MAX_DEGREE, axis_check: bool = True
) -> ColengthResult:
    """dim O/I for an ideal of the local ring, certified by Nakayama.

    With ``axis_check`` an exact ideal whose generators all vanish on a
    coordinate axis is reported infinite without any elimination.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    ctx = ideal.context
    gens = [g for g in ideal.generators if g]
    if any(g.constant_term() for g in gens):
        return ColengthResult(0, 0, (), "finite", "unit", ctx)
    if not gens or (axis_check and ideal.is_exact and _axis_in_zero_set(ideal) is not None):
        return ColengthResult(INFINITE, None, (), "infinite", "axis", ctx)

    limit = max_degree
    order_bound = False
    if ideal.order is not None and ideal.order - 1 < max_degree:
        # a value at degree D is trusted only when D + 1 <= order
        limit = ideal.order - 1
        order_bound = True

    # W_D is the image of I in O/m^(D+1). Its projection to O/m^D is W_(D-1),
    # so m^D lies in I + m^(D+1) exactly when dim W_D - dim W_(D-1) counts
    # every degree-D monomial; Nakayama then gives m^D in I and
    # O/I = O/m^D / W_(D-1).
    prev_dim, prev_basis = 0, ((0,) * ctx.arity,)
    for degree in range(1, limit + 1):
        monos = ctx.monomials_upto(degree)
        # columns highest degree first: keeps elimination fill-in low
        ordered = sorted(monos, key=lambda e: (-sum(e), monomial_key(e)))
        index = {e: i for i, e in enumerate(ordered)}
        ech = Echelon()
        for g in gens:
            room = degree - int(g.order)
            for k in range(room + 1):
                for shift in ctx.monomials(k):
                    ech.add(_truncated_shift(g, shift, degree, index))
        if len(ech) - prev_dim == len(ctx.monomials(degree)):
            return ColengthResult(len(prev_basis), degree, prev_basis, "finite", "nakayama", ctx)
        prev_dim = len(ech)
        # non-pivot monomials span a complement of W_D in O/m^(D+1)
        prev_basis = tuple(
            sorted((e for e in monos if index[e] not in ech.pivots), key=monomial_key)
        )
    if order_bound:
        return ColengthResult(None, None, (), "order_too_small", "bound", ctx)
    return ColengthResult(INFINITE, None, (), "infinite", "bound", ctx)


def staircase_colength(ideal: Ideal) -> Union[int, float]:
    """Count exponent vectors outside a monomial ideal by direct enumeration."""
    n = ideal.context.arity
    monos = []
    for g in ideal.generators:
        if g.is_zero():
            continue
        if not g.is_monomial():
            raise ValueError(f"generator {g} is not a monomial")
        monos.append(next(iter(g._terms)))
    if any(sum(m) == 0 for m in monos):
        return 0
    bounds = []
    for i in range(n):
        pure = [m[i] for m in monos if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    count = 0
    for point in product(*(range(b) for b in bounds)):
        if not any(monomial_divides(m, point) for m in monos):
            count += 1
    return count


def _linear_variable(g: Polynomial) -> Optional[tuple[int, Fraction]]:
    """A variable ``x`` with ``g = c*x + h``, ``c`` constant and ``h`` free of ``x``."""
    n = g.context.arity
    for i in range(n):
        unit = tuple(1 if j == i else 0 for j in range(n))
        c = g._terms.get(unit)
        if not c:
            continue
        if all(exps == unit or exps[i] == 0 for exps in g._terms):
            return i, c
    return None


def reduce_to_monomials_if_linearly_triangularizable(ideal: Ideal) -> Optional[Ideal]:
    """Eliminate variables that occur linearly and report a monomial ideal if one results.

    A generator ``c*x + h`` with ``h`` free of ``x`` lets ``x`` be replaced by
    ``-h/c`` in every other generator; the quotient ring is unchanged up to
    the coordinate change ``x -> x + h/c``. Returns ``None`` if some
    generator is still not a monomial afterwards, or if the ideal is
    truncated.
    """
    if not ideal.is_exact:
        return None
    ctx = ideal.context
    pending = [g for g in ideal.generators if g]
    eliminated: list[int] = []
    progress = True
    while progress:
        progress = False
        for k, g in enumerate(pending):
            if g.is_monomial():
                continue
            found = _linear_variable(g)
            if found is None:
                continue
            i, c = found
            name = ctx.names[i]
            replacement = -(g - ctx.var(name).scale(c)) / c
            rest = pending[:k] + pending[k + 1 :]
            pending = [p for p in (substitute(p, {name: replacement}) for p in rest) if p]
            eliminated.append(i)
            progress = True
            break
        if not progress:
            # bare scalar multiples of a variable also eliminate it
            for k, g in enumerate(pending):
                if g.is_monomial() and g.degree == 1:
                    (exps,) = g._terms
                    i = exps.index(1)
                    if i in eliminated:
                        continue
                    name = ctx.names[i]
                    rest = pending[:k] + pending[k + 1 :]
                    pending = [
                        p for p in (substitute(p, {name: ctx.zero()}) for p in rest) if p
                    ]
                    eliminated.append(i)
                    progress = True
                    break
    if any(not g.is_monomial() for g in pending):
        return None
    monos = {exps for g in pending for exps in g._terms}
    for i in eliminated:
        monos.add(tuple(1 if j == i else 0 for j in range(ctx.arity)))
    if not monos:
        return None
    ordered = sorted(monos, key=monomial_key)
    return Ideal([Polynomial(ctx, {e: 1}) for e in ordered], ctx)
