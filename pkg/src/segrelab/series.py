"""Truncated univariate power series with exact rational coefficients.

A :class:`TruncatedSeries` stores the coefficients of ``1, t, ..., t**order``
as :class:`fractions.Fraction`. The truncation order is part of the value:
binary operations insist on equal orders (call :meth:`TruncatedSeries.truncate`
first to lower one side), so a coefficient that was never computed can never
masquerade as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import (
    LengthError,
    OrderError,
    ReversionError,
    SeriesDomainError,
    TruncationError,
)

Scalar = Union[int, Fraction]

__all__ = [
    "TruncatedSeries",
    "series_from_coeffs",
    "constant",
    "variable",
    "binomial",
    "add",
    "sub",
    "mul",
    "scale",
    "reciprocal",
    "power",
    "rational_pow",
    "compose",
    "reverse",
    "coefficient",
    "derivative",
    "format_rational",
    "parse_rational",
    "series_to_json",
    "series_from_json",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum(coeffs[i] * t**i)`` known exactly up to ``t**order``."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_as_fraction(c) for c in self.coeffs)
        if not cs:
            raise LengthError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return coefficient(self, k)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise TruncationError(
                f"cannot raise truncation order from {self.order} to {order}"
            )
        if order < 0:
            raise TruncationError("truncation order must be non-negative")
        return TruncatedSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                cs = format_rational(c)
                if mono and c.denominator != 1:
                    cs = f"({cs})"
                terms.append(cs + ("*" + mono if mono else ""))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.order + 1})"

    # arithmetic sugar; the module-level functions are the real implementation

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, constant(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return sub(self, other)
        return sub(self, constant(other, self.order))

    def __rsub__(self, other):
        return sub(constant(other, self.order), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, reciprocal(other))
        return scale(self, 1 / _as_fraction(other))

    def __pow__(self, exponent):
        if self.coeffs[0] == 1:
            return rational_pow(self, exponent)
        e = _as_fraction(exponent)
        if e.denominator != 1:
            raise SeriesDomainError(
                "fractional powers need a series with constant term 1"
            )
        return power(self, int(e))

    def __call__(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, inner)


def series_from_coeffs(coeffs: Iterable[Scalar], order: int) -> TruncatedSeries:
    """Pad ``coeffs`` with zeros up to ``t**order``."""
    cs = [_as_fraction(c) for c in coeffs]
    if order < 0:
        raise LengthError("order must be non-negative")
    if len(cs) > order + 1:
        raise LengthError(f"{len(cs)} coefficients do not fit in order {order}")
    cs.extend([Fraction(0)] * (order + 1 - len(cs)))
    return TruncatedSeries(tuple(cs))


def constant(c: Scalar, order: int) -> TruncatedSeries:
    return series_from_coeffs([c], order)


def variable(order: int) -> TruncatedSeries:
    """The series ``t`` (order must be at least 1)."""
    if order < 1:
        raise LengthError("the variable t needs order >= 1")
    return series_from_coeffs([0, 1], order)


def binomial(c: Scalar, exponent: Scalar, order: int) -> TruncatedSeries:
    """``(1 + c*t)**exponent`` for any rational exponent."""
    c = _as_fraction(c)
    e = _as_fraction(exponent)
    out = [Fraction(1)]
    for n in range(1, order + 1):
        out.append(out[-1] * c * (e - n + 1) / n)
    return TruncatedSeries(tuple(out))


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise OrderError(
            f"orders differ ({a.order} vs {b.order}); truncate explicitly first"
        )


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def scale(a: TruncatedSeries, c: Scalar) -> TruncatedSeries:
    c = _as_fraction(c)
    return TruncatedSeries(tuple(c * x for x in a.coeffs))


def _convolve(xs: Sequence[Fraction], ys: Sequence[Fraction], n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(xs[: n + 1]):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = ys[j]
            if y:
                out[i + j] += x * y
    return out


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    return TruncatedSeries(tuple(_convolve(a.coeffs, b.coeffs, a.order)))


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SeriesDomainError("series with zero constant term is not invertible")
    inv0 = 1 / a0
    out = [inv0]
    for n in range(1, a.order + 1):
        s = sum((a.coeffs[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-s * inv0)
    return TruncatedSeries(tuple(out))


def power(a: TruncatedSeries, n: int) -> TruncatedSeries:
    """Integer power by repeated squaring (negative n inverts first)."""
    if n < 0:
        return power(reciprocal(a), -n)
    result = constant(1, a.order)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def rational_pow(a: TruncatedSeries, exponent: Scalar) -> TruncatedSeries:
    """``a**exponent`` for a unit series ``a = 1 + O(t)``.

    Uses the recurrence obtained from ``a * b' = exponent * a' * b`` with
    ``b = a**exponent``; every step is exact rational arithmetic.
    """
    cs = a.coeffs
    if cs[0] != 1:
        raise SeriesDomainError(
            f"rational_pow needs constant term 1, got {format_rational(cs[0])}"
        )
    e = _as_fraction(exponent)
    n_max = a.order
    support = [k for k in range(1, n_max + 1) if cs[k]]
    if support == [1]:
        return binomial(cs[1], e, n_max)
    out = [Fraction(1)]
    e1 = e + 1
    for n in range(1, n_max + 1):
        s = Fraction(0)
        for k in support:
            if k > n:
                break
            b = out[n - k]
            if b:
                s += (e1 * k - n) * cs[k] * b
        out.append(s / n)
    return TruncatedSeries(tuple(out))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))``; ``inner`` must have zero constant term.

    The result is truncated at ``min(outer.order, inner.order)``.
    """
    if inner.coeffs[0] != 0:
        raise SeriesDomainError("compose needs an inner series with zero constant term")
    n = min(outer.order, inner.order)
    ic = inner.coeffs[: n + 1]
    oc = outer.coeffs
    # Horner from the top: result = oc[n] ; result = result*inner + oc[i]
    acc = [Fraction(0)] * (n + 1)
    acc[0] = oc[n]
    for i in range(n - 1, -1, -1):
        # degree of acc*inner is bounded by n - i since inner has valuation 1
        acc = _convolve(acc, ic, n)
        acc[0] += oc[i]
    return TruncatedSeries(tuple(acc))


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    if f.order < 1:
        raise TruncationError("derivative of an order-0 series is not determined")
    return TruncatedSeries(tuple(i * c for i, c in enumerate(f.coeffs) if i > 0))


_LAGRANGE_MAX_ORDER = 24


def _reverse_lagrange(f: TruncatedSeries) -> TruncatedSeries:
    # [z^j] g = (1/j) [t^(j-1)] (t/f)^j, powers of t/f built incrementally
    n = f.order
    h = reciprocal(TruncatedSeries(f.coeffs[1:]))
    g = [Fraction(0)]
    p = h
    for j in range(1, n + 1):
        g.append(p.coeffs[j - 1] / j)
        if j < n:
            p = mul(p, h)
    return TruncatedSeries(tuple(g))


def reverse(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``g`` with ``f(g(t)) = t = g(f(t))``.

    Lagrange inversion for small orders. Beyond that, Newton iteration
    ``g <- g - (f(g) - t) / f'(g)``, where each pass roughly doubles the
    number of correct coefficients.
    """
    if f.order < 1:
        raise ReversionError("reversion needs order >= 1")
    if f.coeffs[0] != 0:
        raise ReversionError("reversion needs zero constant term")
    f1 = f.coeffs[1]
    if f1 == 0:
        raise ReversionError("reversion needs a nonzero linear term")
    n = f.order
    if n <= _LAGRANGE_MAX_ORDER:
        return _reverse_lagrange(f)
    g = [Fraction(0), 1 / f1]
    prec = 1
    while prec < n:
        prec = min(2 * prec + 1, n)
        fp = f.truncate(prec)
        gp = series_from_coeffs(g, prec)
        err = sub(compose(fp, gp), variable(prec))
        df = compose(derivative(fp), gp.truncate(prec - 1))
        dfp = series_from_coeffs(df.coeffs, prec)
        q = mul(err, reciprocal(dfp))
        g = list(sub(gp, q).coeffs)
    return series_from_coeffs(g, n)


def coefficient(f: TruncatedSeries, k: int) -> Fraction:
    if k < 0 or k > f.order:
        raise TruncationError(
            f"coefficient of t^{k} requested from a series known to order {f.order}"
        )
    return f.coeffs[k]


def format_rational(q: Scalar) -> str:
    """``'n'`` for integers, ``'n/d'`` otherwise."""
    q = _as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def series_to_json(f: TruncatedSeries) -> list:
    return [format_rational(c) for c in f.coeffs]


def series_from_json(data: Sequence[str]) -> TruncatedSeries:
    return TruncatedSeries(tuple(parse_rational(str(s)) for s in data))
