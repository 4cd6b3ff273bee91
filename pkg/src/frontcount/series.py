"""Truncated power series: a polynomial known modulo m^(order+1).

``order=None`` marks an exact value (a polynomial germ with no truncation
error), which lets exactly-solvable inputs skip every order check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .poly import Polynomial, Scalar, differentiate, embed, substitute, truncate_poly


def _min_order(*orders: Optional[float]) -> Optional[int]:
    finite = [o for o in orders if o is not None and o != math.inf]
    return int(min(finite)) if finite else None


@dataclass(frozen=True)
class TruncatedSeries:
    poly: Polynomial
    order: Optional[int] = None

    def __post_init__(self):
        if self.order is not None:
            if self.order < 0:
                raise ValueError("truncation order must be non-negative")
            if self.poly.degree > self.order:
                object.__setattr__(self, "poly", truncate_poly(self.poly, self.order))

    @classmethod
    def exact(cls, p: Polynomial) -> TruncatedSeries:
        return cls(p, None)

    @property
    def context(self):
        return self.poly.context

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def _valuation(self) -> float:
        """Lower bound on the order of vanishing of the true value."""
        if self.poly.is_zero():
            return math.inf if self.order is None else self.order + 1
        return self.poly.order

    def _lift(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Polynomial):
            return TruncatedSeries(other)
        return TruncatedSeries(self.poly.context.const(other))

    def __add__(self, other) -> TruncatedSeries:
        other = self._lift(other)
        return TruncatedSeries(self.poly + other.poly, _min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-self.poly, self.order)

    def __sub__(self, other) -> TruncatedSeries:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> TruncatedSeries:
        return self._lift(other) - self

    def __mul__(self, other) -> TruncatedSeries:
        other = self._lift(other)
        # error of a*b sits in m^(Da+1) * m^ord(b) + m^(Db+1) * m^ord(a)
        orders = []
        if self.order is not None:
            orders.append(self.order + other._valuation())
        if other.order is not None:
            orders.append(other.order + self._valuation())
        return TruncatedSeries(self.poly * other.poly, _min_order(*orders))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> TruncatedSeries:
        return TruncatedSeries(self.poly.scale(c), self.order)

    def diff(self, x: str) -> TruncatedSeries:
        if self.order is None:
            return TruncatedSeries(differentiate(self.poly, x))
        if self.order == 0:
            raise ValueError("derivative of an order-0 truncated series is undetermined")
        return TruncatedSeries(differentiate(self.poly, x), self.order - 1)

    def truncate(self, degree: int) -> TruncatedSeries:
        order = degree if self.order is None else min(degree, self.order)
        return TruncatedSeries(self.poly, order)

    def embed(self, ctx) -> TruncatedSeries:
        return TruncatedSeries(embed(self.poly, ctx), self.order)

    def value_at_origin(self):
        return self.poly.constant_term()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.poly, self.order))

    def __str__(self) -> str:
        if self.order is None:
            return str(self.poly)
        return f"{self.poly} + O(deg {self.order + 1})"


def truncate(p: Polynomial, degree: int) -> TruncatedSeries:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return TruncatedSeries(p, degree)


def substitute_series(s: TruncatedSeries, bindings) -> TruncatedSeries:
    """Substitute polynomials vanishing at the origin; the order is kept."""
    if s.order is not None:
        for name, b in bindings.items():
            if b.constant_term():
                raise ValueError(f"binding for {name!r} does not vanish at the origin")
    return TruncatedSeries(substitute(s.poly, bindings), s.order)
