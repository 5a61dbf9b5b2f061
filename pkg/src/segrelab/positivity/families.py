"""Numerics of the example families and the verdicts they receive."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..surface import GeometryKind, SurfaceBundle, chi_riemann_roch, delta, segre_closed
from ..verdict import CriterionVerdict
from .criteria import check_abelian, check_blowup, check_k3

K3 = GeometryKind.K3


@dataclass(frozen=True)
class FamilyReport:
    family: str
    params: dict
    bundle: Optional[SurfaceBundle]
    chi: Optional[int]
    delta: Optional[Fraction]
    hypotheses: dict
    checks: dict = field(default_factory=dict)
    verdict: Optional[CriterionVerdict] = None
    rejected: Optional[str] = None

    @property
    def hypotheses_hold(self) -> bool:
        return self.rejected is None and all(self.hypotheses.values())

    @property
    def passes(self) -> bool:
        """Family hypotheses hold, the theorem applies and the integral is positive."""
        if not self.hypotheses_hold or self.verdict is None:
            return False
        return self.verdict.hypotheses_hold and self.verdict.segre.positive

    def as_dict(self) -> dict:
        out = {
            "family": self.family,
            "params": dict(self.params),
            "chi": self.chi,
            "delta": None if self.delta is None else str(self.delta),
            "hypotheses": dict(self.hypotheses),
            "checks": dict(self.checks),
            "rejected": self.rejected,
            "passes": self.passes,
        }
        if self.bundle is not None:
            b = self.bundle
            out["bundle"] = {"rank": b.rank, "c1_sq": b.c1_sq, "c2": b.c2}
        if self.verdict is not None:
            out["verdict"] = self.verdict.as_dict()
        return out


def twist_by(b: SurfaceBundle, H_sq: int, c1_dot_H: int) -> SurfaceBundle:
    """Numerics of ``F (x) H`` for a line bundle ``H`` (K-trivial surface)."""
    r = b.rank
    c1_sq = b.c1_sq + 2 * r * c1_dot_H + r * r * H_sq
    c2 = b.c2 + (r - 1) * c1_dot_H + r * (r - 1) // 2 * H_sq
    return SurfaceBundle(r, c1_sq, b.c1_dot_K, c2, b.chi_O, b.K_sq, b.kind)


def family_k3_line_bundle(g: int, n: int, k: int) -> FamilyReport:
    """``L = H^n`` on a Picard rank one K3 with ``H^2 = 2g - 2``."""
    L = SurfaceBundle.on(K3, 1, n * n * (2 * g - 2), 0)
    chi = chi_riemann_roch(L)
    verdict = check_k3(L, k)
    return FamilyReport(
        family="k3-line-bundle",
        params={"g": g, "n": n, "k": k},
        bundle=L, chi=chi, delta=delta(K3, L),
        hypotheses={"n_ge_1": n >= 1, "g_ge_3k_minus_1": g >= 3 * k - 1},
        checks={"chi_formula": chi == 2 + n * n * (g - 1)},
        verdict=verdict,
    )


def family_lazarsfeld_mukai(g: int, d: int, r: int, k: int, twisted: bool = True) -> FamilyReport:
    """Lazarsfeld-Mukai bundle ``E`` on a K3 with ``H^2 = 2g - 2``, or ``E (x) H``.

    ``E`` has rank ``r``, ``c1 = H``, ``c2 = d`` and Brill-Noether number
    ``rho = g - r (r - 1 + g - d)``.
    """
    H_sq = 2 * g - 2
    E = SurfaceBundle.on(K3, r, H_sq, d)
    rho = g - r * (r - 1 + g - d)
    params = {"g": g, "d": d, "r": r, "k": k, "twisted": twisted}
    checks = {"delta_E_is_rho": delta(K3, E) == rho}
    if twisted:
        F = twist_by(E, H_sq, H_sq)
        chi = chi_riemann_roch(F)
        hyps = {
            "rho_ge_0": rho >= 0,
            "g_gt_2k_minus_2_gt_0": g > 2 * k - 2 > 0,
            "g_gt_two_fifths_d_plus_1": 5 * g > 2 * (d + 1),
        }
        checks["chi_formula"] = chi == g * (r + 3) - d + r - 3
        checks["delta_F_is_rho"] = delta(K3, F) == rho
        # chi(F) - (r+2)k >= (d+4)(r-2)/5 + (k-2) >= 0 under the hypotheses
        slack = chi - (r + 2) * k
        floor_ = Fraction((d + 4) * (r - 2), 5) + (k - 2)
        checks["chain_bound"] = slack >= floor_
        checks["chain_floor_nonneg"] = floor_ >= 0
        return FamilyReport("lazarsfeld-mukai-twisted", params, F, chi, delta(K3, F),
                            hyps, checks, check_k3(F, k))
    chi = chi_riemann_roch(E)
    hyps = {
        "rank_is_2": r == 2,
        "2d_minus_2_ge_g": 2 * d - 2 >= g,
        "g_gt_2k_minus_3_plus_3d_over_2": 2 * g > 4 * k - 6 + 3 * d,
    }
    checks["chi_ge_4k_plus_rho"] = chi >= 4 * k + rho
    checks["rho_ge_0"] = rho >= 0
    checks["stable_route_chi"] = chi >= (r + 1) * k + rho
    return FamilyReport("lazarsfeld-mukai", params, E, chi, delta(K3, E), hyps, checks, check_k3(E, k))


def family_ulrich(a: int, h: int, k: int, m: int = 1) -> FamilyReport:
    """Twist by ``H`` of a rank ``2a`` Ulrich bundle for ``(X, mH)``, ``H^2 = 2h``.

    The Ulrich bundle has Mukai vector ``(r, (3rm/2) H, 2 h m^2 r - r)``.
    """
    r = 2 * a
    H_sq = 2 * h
    c1_coeff = Fraction(3 * r * m, 2)  # c1(E) = c1_coeff * H
    c1_sq = int(c1_coeff * c1_coeff * H_sq)
    v4 = 2 * h * m * m * r - r
    c2 = Fraction(c1_sq, 2) - (v4 - r)
    E = SurfaceBundle.on(K3, r, c1_sq, int(c2))
    F = twist_by(E, H_sq, int(c1_coeff * H_sq))
    chi = chi_riemann_roch(F)
    dl = delta(K3, F)
    checks = {
        "chi_formula": chi == r * h * (2 * m + 1) * (m + 1),
        "delta_formula": dl == 1 + Fraction(r * r * m * m * h, 4) + r * r,
    }
    if m == 1:
        checks["c2_formula"] = E.c2 == 9 * a * a * h - 4 * a * (h - 1)
        checks["chi_is_12ah"] = chi == 12 * a * h
        checks["delta_is_1_a2h_4a2"] = dl == 1 + a * a * h + 4 * a * a
    checks["chi_ge_r_plus_2_k"] = chi >= (2 * a + 2) * k
    return FamilyReport(
        family="ulrich",
        params={"a": a, "h": h, "k": k, "m": m},
        bundle=F, chi=chi, delta=dl,
        hypotheses={"h_gt_2k_minus_3_gt_0": h > 2 * k - 3 > 0},
        checks=checks,
        verdict=check_k3(F, k),
    )


def family_semihomogeneous(a: int, b: int, k: int) -> FamilyReport:
    """Simple semihomogeneous ``W`` on a principally polarized abelian surface.

    ``rk W = a^2``, ``c1(W) = a b H`` with ``H^2 = 2``, ``chi(W) = b^2``.
    """
    params = {"a": a, "b": b, "k": k}
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        return FamilyReport("semihomogeneous", params, None, None, None,
                            {"coprime": False}, rejected="a and b must be coprime positive integers")
    r = a * a
    c1_sq = 2 * a * a * b * b
    W = SurfaceBundle.on(GeometryKind.ABELIAN, r, c1_sq, a * a * b * b - b * b)
    chi = chi_riemann_roch(W)
    return FamilyReport(
        family="semihomogeneous",
        params=params,
        bundle=W, chi=chi, delta=delta(GeometryKind.ABELIAN, W),
        hypotheses={"coprime": True, "b_gt_a2k": b > a * a * k},
        checks={
            "chi_is_b2": chi == b * b,
            "chi_ge_a2_plus_2_k": b * b >= (a * a + 2) * k,
        },
        verdict=check_abelian(W, k),
    )


def family_abelian_line_bundle(h: int, n: int, k: int) -> FamilyReport:
    """``L = H^n`` on a Picard rank one abelian surface, ``H^2 = 2h``."""
    L = SurfaceBundle.on(GeometryKind.ABELIAN, 1, 2 * h * n * n, 0)
    return FamilyReport(
        family="abelian-line-bundle",
        params={"h": h, "n": n, "k": k},
        bundle=L, chi=chi_riemann_roch(L), delta=delta(GeometryKind.ABELIAN, L),
        hypotheses={"H_sq_ge_6k": 2 * h >= 6 * k, "n_ge_1": n >= 1},
        verdict=check_abelian(L, k),
    )


def family_blowup_line_bundle(h: int, ell: int, k: int) -> FamilyReport:
    verdict = check_blowup(h, ell, k)
    return FamilyReport(
        family="blowup-line-bundle",
        params={"h": h, "ell": ell, "k": k},
        bundle=SurfaceBundle(1, 2 * h - ell * ell, ell, 0, 2, -1, GeometryKind.BLOWUP_K3),
        chi=2 + (2 * h - ell * ell - ell) // 2,
        delta=None,
        hypotheses=dict(verdict.flags),
        checks=dict(verdict.side_conditions),
        verdict=verdict,
    )


def enriques_small_cases() -> list:
    """Line bundles on Enriques surfaces left over by the odd-rank theorem.

    Rank one, ``delta = 0``, ``2 <= k <= 5`` and
    ``4k > chi >= 1 + (k+1)^2 / 2``. Returns ``(k, chi, L^2, SegreValue)``.
    """
    out = []
    E = GeometryKind.ENRIQUES
    for k in range(2, 6):
        lo = 1 + Fraction((k + 1) ** 2, 2)
        chi = math.ceil(lo)
        while chi < 4 * k:
            out.append((k, chi, 2 * (chi - 1), segre_closed(E, 1, chi, 0, k)))
            chi += 1
    return out
