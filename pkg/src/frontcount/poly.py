"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients, tied to a :class:`VarContext`.
The canonical monomial order is graded (low degree first) and, inside one
degree, lexicographic in the context's variable order, so that ``u*v``
prints before ``v^2`` in ``ctx(u, v, w)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exps = tuple[int, ...]
Scalar = Union[int, Fraction]


class ContextError(ValueError):
    """Raised when polynomials from different contexts are mixed."""


class UnknownVariableError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown variable {self.name!r}"


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not name:
                raise ValueError("empty variable name")
        object.__setattr__(self, "names", names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.arity))
        return Polynomial(self, {exps: 1})

    def vars(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c: Scalar) -> Polynomial:
        return Polynomial(self, {(0,) * self.arity: c})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def monomials(self, degree: int) -> list[Exps]:
        """Exponent vectors of exact total ``degree``, in canonical order."""
        return list(_sorted_monomials(self.arity, degree))

    def monomials_upto(self, degree: int) -> list[Exps]:
        out: list[Exps] = []
        for k in range(degree + 1):
            out.extend(self.monomials(k))
        return out

    def format_monomial(self, exps: Exps) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"VarContext({', '.join(self.names)})"


def _monomials_of_degree(n: int, degree: int) -> Iterator[Exps]:
    for combo in combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


@lru_cache(maxsize=4096)
def _sorted_monomials(n: int, degree: int) -> tuple[Exps, ...]:
    return tuple(sorted(_monomials_of_degree(n, degree), key=monomial_key))


def monomial_key(exps: Exps) -> tuple:
    """Sort key of the canonical order: degree, then lex on the variable order."""
    return (sum(exps), tuple(-e for e in exps))


def monomial_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """An immutable polynomial with exact rational coefficients."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: VarContext, terms: Mapping[Exps, Scalar] | None = None):
        self.context = context
        clean: dict[Exps, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != context.arity:
                raise ValueError(f"exponent vector {exps} does not match {context}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _fraction(c)
            if c:
                clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, context: VarContext, terms: dict[Exps, Fraction]) -> Polynomial:
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.context = context
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Exps, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exps, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coefficient(self, exps: Exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def order(self) -> float:
        """Lowest total degree of a term; ``inf`` for zero."""
        return min((sum(e) for e in self._terms), default=math.inf)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.context.arity, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def trailing_term(self) -> tuple[Exps, Fraction]:
        """First term in the canonical order (lowest degree, lex-first)."""
        if not self._terms:
            raise ValueError("zero polynomial has no trailing term")
        exps = min(self._terms, key=monomial_key)
        return exps, self._terms[exps]

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial._raw(
            self.context, {e: c for e, c in self._terms.items() if sum(e) == degree}
        )

    def variables(self) -> set[str]:
        used = set()
        for exps in self._terms:
            for name, e in zip(self.context.names, exps):
                if e:
                    used.add(name)
        return used

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        values = [_fraction(point[n]) for n in self.context.names]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for x, e in zip(values, exps):
                if e:
                    term *= x**e
            total += term
        return total

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextError(f"{self.context} and {other.context} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.const(other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.context, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.context, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self.context, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Polynomial:
        c = _fraction(c)
        if not c:
            return self.context.zero()
        return Polynomial._raw(self.context, {e: c * v for e, v in self._terms.items()})

    def __truediv__(self, c: Scalar) -> Polynomial:
        if isinstance(c, Polynomial):
            return divide_exact(self, c)
        return self.scale(1 / _fraction(c))

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.context.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps: Exps, c: Scalar = 1) -> Polynomial:
        c = _fraction(c)
        return Polynomial._raw(
            self.context,
            {tuple(a + b for a, b in zip(e, exps)): c * v for e, v in self._terms.items()},
        )

    # -- equality / printing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.context.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, {self.context!r})"


def format_polynomial(p: Polynomial) -> str:
    """Print ``p`` in the parser's grammar with terms in canonical order."""
    if p.is_zero():
        return "0"
    chunks = []
    for i, (exps, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = p.context.format_monomial(exps)
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if i == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f"{sign} {body}")
    return " ".join(chunks)


def _check_same_context(*polys: Polynomial) -> VarContext:
    ctx = polys[0].context
    for p in polys[1:]:
        if p.context != ctx:
            raise ContextError(f"{ctx} and {p.context} differ")
    return ctx


def arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    _check_same_context(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def differentiate(p: Polynomial, x: str) -> Polynomial:
    i = p.context.index(x)
    terms = {}
    for exps, c in p._terms.items():
        e = exps[i]
        if e:
            new = exps[:i] + (e - 1,) + exps[i + 1 :]
            terms[new] = c * e
    return Polynomial._raw(p.context, terms)


def substitute(p: Polynomial, bindings: Mapping[str, Polynomial]) -> Polynomial:
    """Replace variables of ``p`` by polynomials.

    Unbound variables are carried over by name into the target context,
    which is the common context of the replacement polynomials (or ``p``'s
    own context when ``bindings`` is empty).
    """
    for name in bindings:
        p.context.index(name)
    if bindings:
        target = _check_same_context(*bindings.values())
    else:
        return p
    images = []
    for name in p.context.names:
        if name in bindings:
            images.append(bindings[name])
        elif name in target:
            images.append(target.var(name))
        else:
            images.append(None)
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return powers[key]

    result = target.zero()
    for exps, c in p._terms.items():
        term = target.const(c)
        for i, e in enumerate(exps):
            if e:
                if images[i] is None:
                    raise ContextError(
                        f"variable {p.context.names[i]!r} is unbound and absent from {target}"
                    )
                term = term * power(i, e)
        result = result + term
    return result


def embed(p: Polynomial, ctx: VarContext) -> Polynomial:
    """Re-home ``p`` into a context containing all of its variables."""
    positions = [ctx.index(n) for n in p.context.names]
    terms = {}
    for exps, c in p._terms.items():
        new = [0] * ctx.arity
        for pos, e in zip(positions, exps):
            new[pos] = e
        terms[tuple(new)] = c
    return Polynomial._raw(ctx, terms)


def truncate_poly(p: Polynomial, degree: int) -> Polynomial:
    return Polynomial._raw(p.context, {e: c for e, c in p._terms.items() if sum(e) <= degree})


def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient ``a / b``; raises ``ValueError`` if ``b`` does not divide ``a``."""
    ctx = _check_same_context(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    # leading terms in plain lex order make exact division terminate
    lead_b = max(b._terms)
    cb = b._terms[lead_b]
    quotient: dict[Exps, Fraction] = {}
    rem = a
    while rem:
        lead = max(rem._terms)
        if not monomial_divides(lead_b, lead):
            raise ValueError(f"{b} does not divide {a}")
        shift = tuple(x - y for x, y in zip(lead, lead_b))
        c = rem._terms[lead] / cb
        quotient[shift] = c
        rem = rem - b.mul_monomial(shift, c)
    return Polynomial._raw(ctx, quotient)


def normalize_trailing(p: Polynomial) -> Polynomial:
    """Scale ``p`` so its trailing coefficient is 1."""
    if p.is_zero():
        return p
    _, c = p.trailing_term()
    return p.scale(1 / c)


def gcd_multivariate(ps: Sequence[Polynomial]) -> Polynomial:
    """Greatest common divisor in Q[x], normalized to trailing coefficient 1."""
    if not ps:
        raise ValueError("gcd of an empty list")
    ctx = _check_same_context(*ps)
    nonzero = [p for p in ps if p]
    if not nonzero:
        raise ValueError("gcd of all-zero polynomials is undefined")
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(ctx.names), QQ)
    elems = [R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in p._terms.items()})
             for p in nonzero]
    g = reduce(lambda x, y: x.gcd(y), elems)
    terms = {
        tuple(int(x) for x in e): Fraction(int(c.numerator), int(c.denominator))
        for e, c in g.to_dict().items()
    }
    return normalize_trailing(Polynomial(ctx, terms))

