"""Exact checks of the coefficient-positivity lemma for

    f(t) = (sqrt(1+2t) + sqrt(1+6t))^m (1+2t)^((n-1)/2) (1+6t)^((p-1)/2),

which claims positive coefficients through order
``min((m+n+p)/2 - 1, m - 1)`` whenever ``m, p >= 0`` and ``m+n+p`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ..series import TruncatedSeries, binomial, mul, power

HALF = Fraction(1, 2)


@lru_cache(maxsize=1024)
def _sum_power(m: int, order: int) -> TruncatedSeries:
    s = binomial(2, HALF, order) + binomial(6, HALF, order)
    return power(s, m)


def lemma_series(m: int, n: int, p: int, order: int) -> TruncatedSeries:
    out = mul(_sum_power(m, order), binomial(2, Fraction(n - 1, 2), order))
    return mul(out, binomial(6, Fraction(p - 1, 2), order))


def lemma_bound(m: int, n: int, p: int) -> int:
    """``min((m+n+p)/2 - 1, m - 1)``, the last order claimed positive."""
    return min((m + n + p) // 2 - 1, m - 1)


@dataclass(frozen=True)
class LemmaReport:
    m: int
    n: int
    p: int
    order: int
    coefficients: tuple
    first_nonpositive: Optional[int]
    bound: int
    hypotheses: bool

    @property
    def positive_through_bound(self) -> bool:
        """All coefficients up to ``min(bound, order)`` are positive."""
        return self.first_nonpositive is None or self.first_nonpositive > self.bound

    @property
    def conclusive(self) -> bool:
        return self.order >= self.bound

    @property
    def violation(self) -> bool:
        return self.hypotheses and not self.positive_through_bound


class LemmaViolation(AssertionError):
    pass


def verify_positivity_lemma(m: int, n: int, p: int, order: int, strict: bool = False) -> LemmaReport:
    """Expand ``f`` exactly to ``order`` and locate its first nonpositive coefficient.

    Inputs outside the lemma's hypotheses are expanded and reported too.
    With ``strict=True`` a violation of the claimed bound raises.
    """
    coeffs = lemma_series(m, n, p, order).coeffs
    first = next((i for i, c in enumerate(coeffs) if c <= 0), None)
    report = LemmaReport(
        m=m, n=n, p=p, order=order,
        coefficients=coeffs,
        first_nonpositive=first,
        bound=lemma_bound(m, n, p),
        hypotheses=m >= 0 and p >= 0 and (m + n + p) % 2 == 0,
    )
    if strict and report.violation:
        raise LemmaViolation(
            f"(m, n, p) = {(m, n, p)}: coefficient {first} is nonpositive, "
            f"claimed positive through {report.bound}"
        )
    return report


# Factor series F used in the parity cases of the proof: the extra
# half-integer powers and where positivity / vanishing are claimed.
_CLAIM_SHAPES = {
    "even": ((2, -HALF), (6, -HALF)),  # m, n, p even
    "i": (),                            # m even, n and p odd
    "ii": ((2, -HALF),),                # m odd, n even, p odd
    "iii": ((6, -HALF),),               # m odd, n odd, p even
}


def claim_shape(m: int, n: int, p: int) -> str:
    if m % 2 == 0:
        return "even" if n % 2 == 0 else "i"
    return "ii" if n % 2 == 0 else "iii"


@dataclass(frozen=True)
class ClaimReport:
    m: int
    shape: str
    coefficients: tuple
    positive_through: int
    vanishing_window: tuple  # inclusive (lo, hi); empty when lo > hi
    positive_ok: bool
    vanishing_ok: bool

    @property
    def ok(self) -> bool:
        return self.positive_ok and self.vanishing_ok


def verify_lemma_claim(m: int, shape: str = "even") -> ClaimReport:
    """Check the factor series of one parity case.

    ``even``: positive through ``m/2 - 1``, zero on ``[m/2, m-1]``;
    ``i``: positive through ``m/2``, zero on ``[m/2 + 1, m-1]``;
    ``ii``/``iii``: positive through ``(m-1)/2``, zero on ``[(m+1)/2, m-1]``.
    """
    if shape not in _CLAIM_SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    if (m % 2 == 0) != (shape in ("even", "i")) or m < 0:
        raise ValueError(f"shape {shape!r} does not apply to m = {m}")
    order = max(m, 1)
    f = _sum_power(m, order)
    for c, e in _CLAIM_SHAPES[shape]:
        f = mul(f, binomial(c, e, order))
    cs = f.coeffs
    if shape == "even":
        pos, lo = m // 2 - 1, m // 2
    elif shape == "i":
        pos, lo = m // 2, m // 2 + 1
    else:
        pos, lo = (m - 1) // 2, (m + 1) // 2
    hi = m - 1
    return ClaimReport(
        m=m, shape=shape, coefficients=cs,
        positive_through=pos,
        vanishing_window=(lo, hi),
        positive_ok=all(cs[i] > 0 for i in range(min(pos, order) + 1)),
        vanishing_ok=all(cs[i] == 0 for i in range(lo, hi + 1)),
    )
