"""Segre integrals on symmetric products of curves and punctual Quot schemes."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentDataError
from .series import (
    TruncatedSeries,
    binomial,
    compose,
    mul,
    rational_pow,
    reverse,
    series_from_coeffs,
)
from .surface import SegreValue, _coeff_of_product
from .verdict import CriterionVerdict


@dataclass(frozen=True)
class CurveBundle:
    """Rank ``rank`` bundle of degree ``degree`` on a genus ``genus`` curve."""

    genus: int
    rank: int
    degree: int

    def __post_init__(self):
        if self.genus < 0:
            raise InconsistentDataError("genus must be non-negative")
        if self.rank < 1:
            raise InconsistentDataError("rank must be positive")

    @property
    def chi(self) -> int:
        return self.degree + self.rank * (1 - self.genus)


def segre_curve_closed(b: CurveBundle, k: int) -> SegreValue:
    """Signed integral ``(-1)^k int_{C^[k]} s_k(V^[k])``.

    Equal to ``Coeff_{u^k} (1 + r u)^g (1 - u)^(-chi + k(r+1) - 1)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    r, g = b.rank, b.genus
    # (1-u)^e == (1 + (-1) u)^e
    factors = [(r, g), (-1, -b.chi + k * (r + 1) - 1)]
    return SegreValue(_coeff_of_product(factors, k))


def curve_change_of_variables(r: int, order: int) -> TruncatedSeries:
    """``z(t) = -t (1+t)^r``."""
    body = binomial(1, r, order - 1)
    return series_from_coeffs((0,) + tuple(-c for c in body.coeffs), order)


def segre_curve_series(b: CurveBundle, k_max: int) -> TruncatedSeries:
    """``sum_k z^k int_{C^[k]} s_k(V^[k])`` (unsigned) up to ``z**k_max``."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    order = k_max + 2
    r = b.rank
    a1 = binomial(1, 1, order)
    a2 = mul(binomial(1, r + 1, order), binomial(1 + r, -1, order))
    in_t = mul(rational_pow(a1, b.degree), rational_pow(a2, 1 - b.genus))
    t_of_z = reverse(curve_change_of_variables(r, order))
    return compose(in_t, t_of_z).truncate(k_max)


def segre_quot(g: int, N: int, d_L: int, k: int) -> SegreValue:
    """Unsigned top Segre integral of ``L^[k]`` over ``Quot_C(C^N, k)``.

    Obtained from the symmetry
    ``(-1)^(Nk) int_Quot s(L^[k]) = (-1)^k int_{C^[k]} s((L^N)^[k])``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    signed = segre_curve_closed(CurveBundle(g, N, N * d_L), k).value
    return SegreValue(signed if (N * k) % 2 == 0 else -signed)


def signed_quot(g: int, N: int, d_L: int, k: int) -> SegreValue:
    """``(-1)^dim`` times the Quot integral; positivity criterion quantity."""
    v = segre_quot(g, N, d_L, k).value
    return SegreValue(v if (N * k) % 2 == 0 else -v)


def check_curve_criterion(b: CurveBundle, k: int) -> CriterionVerdict:
    """Numeric side of the symmetric-product criterion ``chi >= (r+1) k``.

    ``va_sufficient`` records the stability-based sufficient condition
    ``d > r (2g - 2 + k)`` for (k-1)-very ampleness; it is informational.
    """
    return CriterionVerdict(
        criterion="curve",
        flags={"chi_bound": b.chi >= (b.rank + 1) * k},
        segre=segre_curve_closed(b, k),
        side_conditions={"va_sufficient": b.degree > b.rank * (2 * b.genus - 2 + k)},
        assumptions=("V is (k-1)-very ample",),
    )


def check_quot_criterion(g: int, N: int, d_L: int, k: int) -> CriterionVerdict:
    """Hypotheses ``chi(L) >= k + g`` and ``chi(L) >= k (1 + 1/N)`` on Quot.

    The attached Segre value is the signed integral ``(-1)^(Nk) int s``,
    whose positivity is what bigness needs.
    """
    chi_L = d_L + 1 - g
    return CriterionVerdict(
        criterion="quot",
        flags={
            "chi_ge_k_plus_g": chi_L >= k + g,
            "chi_ge_k_N_ratio": N * chi_L >= (N + 1) * k,
        },
        segre=signed_quot(g, N, d_L, k),
    )
