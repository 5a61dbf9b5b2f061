"""Top Segre integrals of tautological bundles on Hilbert schemes of surfaces.

Two independent routes are implemented for every geometry:

* the generating-series route, which builds the universal functions in the
  auxiliary variable ``t`` and changes variables to ``z`` by series reversion
  (or a residue in ``t``), and
* the closed route, a single ``t**k`` coefficient of a product of binomials
  in the invariants ``(chi, delta)`` or the triple ``(m, n, p)``.

Their agreement is the main correctness check of the package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import InconsistentDataError, ParityError, UnsupportedGeometryError
from .series import (
    TruncatedSeries,
    binomial,
    coefficient,
    compose,
    derivative,
    mul,
    rational_pow,
    reverse,
    scale,
    series_from_coeffs,
)

Number = Union[int, Fraction]

HALF = Fraction(1, 2)


class GeometryKind(enum.Enum):
    K3 = "k3"
    ABELIAN = "abelian"
    BIELLIPTIC = "bielliptic"
    ENRIQUES = "enriques"
    BLOWUP_K3 = "blowup-k3"
    GENERAL_RANK1 = "general-rank1"

    @property
    def k_trivial(self) -> bool:
        return self in _K_TRIVIAL

    @property
    def invariants(self) -> Optional[tuple]:
        """``(chi(O_X), K_X^2)`` fixed by the surface family, if any."""
        return _SURFACE_INVARIANTS.get(self)

    @classmethod
    def parse(cls, name: str) -> "GeometryKind":
        key = name.strip().lower().replace("_", "-")
        aliases = {"blowup": "blowup-k3", "rank1": "general-rank1", "general": "general-rank1"}
        key = aliases.get(key, key)
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown geometry kind {name!r}")


_K_TRIVIAL = frozenset(
    {GeometryKind.K3, GeometryKind.ABELIAN, GeometryKind.BIELLIPTIC, GeometryKind.ENRIQUES}
)
_SURFACE_INVARIANTS = {
    GeometryKind.K3: (2, 0),
    GeometryKind.ABELIAN: (0, 0),
    GeometryKind.BIELLIPTIC: (0, 0),
    GeometryKind.ENRIQUES: (1, 0),
    GeometryKind.BLOWUP_K3: (2, -1),
}


@dataclass(frozen=True)
class SurfaceBundle:
    """Discrete invariants of a vector bundle ``F`` on a surface ``X``."""

    rank: int
    c1_sq: int
    c1_dot_K: int
    c2: int
    chi_O: int
    K_sq: int
    kind: Optional[GeometryKind] = None

    def __post_init__(self):
        if self.rank < 1:
            raise InconsistentDataError(f"rank must be positive, got {self.rank}")
        if self.kind is None:
            return
        fixed = self.kind.invariants
        if fixed is not None and (self.chi_O, self.K_sq) != fixed:
            raise InconsistentDataError(
                f"{self.kind.value} surfaces have (chi(O), K^2) = {fixed}, "
                f"got {(self.chi_O, self.K_sq)}"
            )
        if self.kind.k_trivial and self.c1_dot_K != 0:
            raise InconsistentDataError("c1.K must vanish on a K-trivial surface")

    @classmethod
    def on(cls, kind: GeometryKind, rank: int, c1_sq: int, c2: int,
           c1_dot_K: int = 0) -> "SurfaceBundle":
        """Bundle on a surface whose ``(chi(O), K^2)`` is fixed by ``kind``."""
        fixed = kind.invariants
        if fixed is None:
            raise UnsupportedGeometryError(
                f"{kind.value} has no fixed (chi(O), K^2); build SurfaceBundle directly"
            )
        return cls(rank, c1_sq, c1_dot_K, c2, fixed[0], fixed[1], kind)


@dataclass(frozen=True)
class SegreValue:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def sign(self) -> str:
        if self.value > 0:
            return "positive"
        if self.value < 0:
            return "negative"
        return "zero"

    @property
    def positive(self) -> bool:
        return self.value > 0

    @property
    def is_integral(self) -> bool:
        return self.value.denominator == 1

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# -- Riemann-Roch and the Mukai pairing -------------------------------------


def chi_riemann_roch(b: SurfaceBundle, strict: bool = True) -> Number:
    """``chi(F) = r chi(O) + (c1^2 - c1.K)/2 - c2``.

    With ``strict=False`` numerics violating the adjunction parity are
    accepted and a half-integer is returned; this is only useful for
    checking formal identities.
    """
    twice = b.c1_sq - b.c1_dot_K
    if twice % 2:
        if strict:
            raise InconsistentDataError(
                f"c1^2 - c1.K = {twice} is odd; no line bundle class has these numerics"
            )
        return b.rank * b.chi_O + Fraction(twice, 2) - b.c2
    return b.rank * b.chi_O + twice // 2 - b.c2


def mukai_pairing(b: SurfaceBundle) -> Fraction:
    """``<v, v>`` for ``v = ch(F) sqrt(Td X)`` on a K-trivial surface.

    ``sqrt(Td X) = 1 + chi(O)/2 [pt]``, so ``v = (r, c1, ch2 + r chi(O)/2)``.
    """
    ch2 = Fraction(b.c1_sq, 2) - b.c2
    v4 = ch2 + Fraction(b.rank * b.chi_O, 2)
    return b.c1_sq - 2 * b.rank * v4


def delta(kind: GeometryKind, b: SurfaceBundle) -> Fraction:
    """Expected-dimension invariant ``delta`` of ``F`` on a K-trivial surface."""
    r, c1sq, c2 = b.rank, b.c1_sq, b.c2
    if kind is GeometryKind.K3:
        return 1 + r * c2 + Fraction((1 - r) * c1sq, 2) - r * r
    if kind in (GeometryKind.ABELIAN, GeometryKind.BIELLIPTIC):
        return r * c2 + Fraction((1 - r) * c1sq, 2)
    if kind is GeometryKind.ENRIQUES:
        return r * c2 - Fraction((r - 1) * c1sq, 2) - Fraction(r * r - 1, 2)
    raise UnsupportedGeometryError(f"delta is only defined on K-trivial surfaces, not {kind.value}")


# -- coefficient kernels ----------------------------------------------------


@lru_cache(maxsize=65536)
def _binom_coeffs(c: Fraction, e: Fraction, n: int) -> tuple:
    return binomial(c, e, n).coeffs


@lru_cache(maxsize=16384)
def _product_coeffs(factors: tuple, k: int) -> tuple:
    acc = list(_binom_coeffs(factors[0][0], factors[0][1], k))
    for c, e in factors[1:]:
        cs = _binom_coeffs(c, e, k)
        nxt = [Fraction(0)] * (k + 1)
        for i, a in enumerate(acc):
            if a:
                for j in range(k + 1 - i):
                    nxt[i + j] += a * cs[j]
        acc = nxt
    return tuple(acc)


def _coeff_of_product(factors, k: int) -> Fraction:
    """``Coeff_{t^k}`` of ``prod (1 + c t)^e`` over ``factors = [(c, e), ...]``.

    All factors but the last are multiplied out once and cached, so sweeping
    the last exponent (which carries ``chi``) costs O(k) per value.
    """
    factors = [(Fraction(c), Fraction(e)) for c, e in factors]
    if len(factors) == 1:
        return _binom_coeffs(factors[0][0], factors[0][1], k)[k]
    prefix = _product_coeffs(tuple(factors[:-1]), k)
    last = binomial(factors[-1][0], factors[-1][1], k).coeffs
    return sum((prefix[i] * last[k - i] for i in range(k + 1)), Fraction(0))


def generalized_binomial(x: Number, k: int) -> Fraction:
    """``x (x-1) ... (x-k+1) / k!`` for any rational ``x``."""
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


# -- closed forms -----------------------------------------------------------


def segre_closed(kind: GeometryKind, r: int, chi: Number, delta: Number, k: int) -> SegreValue:
    """Top Segre integral on ``X^[k]`` from ``(r, chi, delta)`` on a K-trivial surface."""
    if k < 0:
        raise ValueError(f"number of points must be non-negative, got {k}")
    chi = Fraction(chi)
    dl = Fraction(delta)
    if kind is GeometryKind.K3:
        factors = [(2 + r, dl), (1 + r, chi - dl - (r + 1) * k)]
    elif kind in (GeometryKind.ABELIAN, GeometryKind.BIELLIPTIC):
        factors = [(2 + r, dl), ((1 + r) * (2 + r), 1), (1 + r, chi - dl - (r + 1) * k - 1)]
    elif kind is GeometryKind.ENRIQUES:
        factors = [(2 + r, dl), ((1 + r) * (2 + r), HALF), (1 + r, chi - dl - k * (r + 1) - HALF)]
    else:
        raise UnsupportedGeometryError(f"no closed (chi, delta) formula for {kind.value}")
    return SegreValue(_coeff_of_product(factors, k))


def segre_delta0(r: int, chi: Number, k: int) -> SegreValue:
    """``(r+1)^k binom(chi - (r+1)k, k)``: the K3 answer when ``delta = 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return SegreValue((r + 1) ** k * generalized_binomial(Fraction(chi) - (r + 1) * k, k))


# -- generating series for K3 and Enriques ----------------------------------


@lru_cache(maxsize=256)
def _universal_factors(r: int, order: int) -> tuple:
    """``(A0, A1, A2)`` in the variable ``t``; they depend on the rank only."""
    u = binomial(1 + r, 1, order)
    v = binomial(2 + r, 1, order)
    w = binomial((1 + r) * (2 + r), 1, order)
    a0 = mul(rational_pow(u, -r - 1), rational_pow(v, r))
    a1 = mul(rational_pow(u, Fraction(r, 2)), rational_pow(v, Fraction(-(r - 1), 2)))
    a2 = mul(mul(rational_pow(u, r * r + 2 * r), rational_pow(v, 1 - r * r)), rational_pow(w, -1))
    return a0, a1, a2


def universal_product(r: int, c2: Number, c1_sq: Number, a2_exponent: Number,
                      order: int) -> TruncatedSeries:
    """``A0^c2 A1^c1^2 A2^a2_exponent`` as a series in ``t``.

    ``a2_exponent`` is 1 on K3, 1/2 on Enriques and 0 on abelian surfaces.
    """
    a0, a1, a2 = _universal_factors(r, order)
    out = mul(rational_pow(a0, c2), rational_pow(a1, c1_sq))
    return mul(out, rational_pow(a2, a2_exponent))


def k_trivial_change_of_variables(r: int, order: int) -> TruncatedSeries:
    """``z(t) = t (1 + (1+r) t)^(1+r)``."""
    body = binomial(1 + r, 1 + r, order - 1)
    return series_from_coeffs((0,) + body.coeffs, order)


@lru_cache(maxsize=256)
def _k_trivial_inverse(r: int, order: int) -> TruncatedSeries:
    return reverse(k_trivial_change_of_variables(r, order))


def segre_series(kind: GeometryKind, b: SurfaceBundle, k_max: int) -> TruncatedSeries:
    """``sum_k z^k int s(F^[k])`` up to ``z**k_max`` by explicit reversion."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    if kind is GeometryKind.K3:
        a2_exp = Fraction(1)
    elif kind is GeometryKind.ENRIQUES:
        a2_exp = HALF
    else:
        raise UnsupportedGeometryError(
            f"generating series implemented for K3 and Enriques only, not {kind.value}"
        )
    order = k_max + 2
    in_t = universal_product(b.rank, b.c2, b.c1_sq, a2_exp, order)
    t_of_z = _k_trivial_inverse(b.rank, order)
    return compose(in_t, t_of_z).truncate(k_max)


# -- arbitrary surfaces, rank one -------------------------------------------


def _sqrt_sum(order: int) -> TruncatedSeries:
    """``sqrt(1+2t) + sqrt(1+6t)``."""
    return binomial(2, HALF, order) + binomial(6, HALF, order)


def lehn_functions(order: int) -> tuple:
    """``(A1, A2, A3, A4)`` as series in ``t`` for ``z = t (1+2t)^2``."""
    s = _sqrt_sum(order)
    a1 = binomial(2, HALF, order)
    a2 = mul(binomial(2, Fraction(3, 2), order), binomial(6, -HALF, order))
    a3 = scale(mul(binomial(2, -1, order), s), HALF)
    # 4 s^-2 == (s/2)^-2
    a4 = mul(mul(binomial(2, HALF, order), binomial(6, HALF, order)),
             rational_pow(scale(s, HALF), -2))
    return a1, a2, a3, a4


def lehn_product(L_sq: int, chi_O: int, L_dot_K: int, K_sq: int, order: int) -> TruncatedSeries:
    a1, a2, a3, a4 = lehn_functions(order)
    out = rational_pow(a1, L_sq)
    out = mul(out, rational_pow(a2, chi_O))
    out = mul(out, rational_pow(a3, L_dot_K))
    return mul(out, rational_pow(a4, K_sq))


def rank1_change_of_variables(order: int) -> TruncatedSeries:
    """``z(t) = t (1+2t)^2``."""
    return series_from_coeffs([0, 1, 4, 4][: order + 1], order)


def lehn_series(L_sq: int, chi_O: int, L_dot_K: int, K_sq: int, k_max: int) -> TruncatedSeries:
    """Generating series in ``z`` for a line bundle on an arbitrary surface."""
    order = k_max + 2
    in_t = lehn_product(L_sq, chi_O, L_dot_K, K_sq, order)
    return compose(in_t, reverse(rank1_change_of_variables(order))).truncate(k_max)


def segre_rank1_general(L_sq: int, chi_O: int, L_dot_K: int, K_sq: int, k: int,
                        method: str = "residue") -> SegreValue:
    """Top Segre integral of ``L^[k]`` on an arbitrary surface.

    ``method="residue"`` takes ``Coeff_{t^k}`` of
    ``A(t) * z'(t) * (t / z(t))^(k+1)``; ``method="reversion"`` reads the
    ``z**k`` coefficient of :func:`lehn_series`.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if method == "reversion":
        return SegreValue(coefficient(lehn_series(L_sq, chi_O, L_dot_K, K_sq, k), k))
    if method != "residue":
        raise ValueError(f"unknown method {method!r}")
    order = k
    z = rank1_change_of_variables(order + 1)
    dz = derivative(z)
    t_over_z = binomial(2, -2 * (k + 1), order)
    integrand = mul(mul(lehn_product(L_sq, chi_O, L_dot_K, K_sq, order), dz), t_over_z)
    return SegreValue(coefficient(integrand, k))


@lru_cache(maxsize=4096)
def _half_sum_power(m: int, order: int) -> TruncatedSeries:
    """``((sqrt(1+2t) + sqrt(1+6t)) / 2)^m``."""
    return rational_pow(scale(_sqrt_sum(order), HALF), m)


def segre_general_type(m: int, n: int, p: int, k: int) -> SegreValue:
    """``Coeff_{t^k}`` of ``2^-m S^m (1+2t)^((n-1)/2) (1+6t)^((p-1)/2)``."""
    if (m + n + p) % 2:
        raise ParityError(f"m + n + p = {m + n + p} must be even")
    if k < 0:
        raise ValueError("k must be non-negative")
    s = _half_sum_power(m, k)
    rest = _binom_coeffs(Fraction(2), Fraction(n - 1, 2), k)
    rest2 = _binom_coeffs(Fraction(6), Fraction(p - 1, 2), k)
    tail = mul(TruncatedSeries(rest), TruncatedSeries(rest2))
    return SegreValue(sum((s.coeffs[i] * tail.coeffs[k - i] for i in range(k + 1)), Fraction(0)))


def mnp_from_bundle(L_sq: int, L_dot_K: int, K_sq: int, chi_O: int, k: int) -> tuple:
    """The exponent triple ``(m, n, p)`` for a line bundle ``L``."""
    m = L_dot_K - 2 * K_sq
    n = (L_sq - 2 * L_dot_K + K_sq) + 3 * chi_O - 4 * k - 1
    p = K_sq - chi_O + 3
    twice_chi_L = 2 * chi_O + L_sq - L_dot_K
    if m + n + p != twice_chi_L - 4 * k + 2:
        raise AssertionError("m + n + p disagrees with 2 chi(L) - 4k + 2")
    return m, n, p


def segre_blowup_k3(h: int, ell: int, k: int) -> SegreValue:
    """``L = H - ell E`` on the blowup of a K3 at a point, ``H^2 = 2h``."""
    if k < 0 or ell < 0 or h < 1:
        raise ValueError("need k >= 0, ell >= 0, h >= 1")
    order = k
    e1 = h - Fraction(ell * ell, 2) - 2 * k - ell + Fraction(3, 2)
    series = mul(binomial(2, e1, order), binomial(6, -HALF, order))
    series = mul(series, _half_sum_power(ell + 2, order))
    # 2^(-l-2) S^(l+2) == (S/2)^(l+2)
    return SegreValue(coefficient(series, k))


def segre_of_bundle(kind: GeometryKind, b: SurfaceBundle, k: int) -> SegreValue:
    """Closed-form Segre integral straight from bundle numerics."""
    if kind.k_trivial:
        return segre_closed(kind, b.rank, chi_riemann_roch(b), delta(kind, b), k)
    if b.rank != 1:
        raise UnsupportedGeometryError("only rank 1 is available on non K-trivial surfaces")
    return segre_rank1_general(b.c1_sq, b.chi_O, b.c1_dot_K, b.K_sq, k)
