"""Theorem checkers: numeric hypotheses plus the sign of the Segre integral."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InconsistentDataError, UnsupportedGeometryError
from ..surface import (
    GeometryKind,
    SurfaceBundle,
    chi_riemann_roch,
    delta,
    mnp_from_bundle,
    segre_blowup_k3,
    segre_closed,
    segre_general_type,
)
from ..verdict import CriterionVerdict
from .lattice import bs_obstruction_blowup, seshadri_lower_bound

VERY_AMPLE = "F is (k-1)-very ample"

_ABELIAN_LIKE = (GeometryKind.ABELIAN, GeometryKind.BIELLIPTIC)


def _require(b: SurfaceBundle, kinds) -> GeometryKind:
    if b.kind is not None:
        if b.kind not in kinds:
            names = "/".join(k.value for k in kinds)
            raise UnsupportedGeometryError(f"expected a bundle on a {names} surface, got {b.kind.value}")
        return b.kind
    if (b.chi_O, b.K_sq) != kinds[0].invariants or b.c1_dot_K != 0:
        raise UnsupportedGeometryError(
            f"numerics (chi(O), K^2, c1.K) = {(b.chi_O, b.K_sq, b.c1_dot_K)} "
            f"do not describe a {kinds[0].value} surface"
        )
    return kinds[0]


def bundle_from_invariants(kind: GeometryKind, r: int, chi: int, delta_: Fraction) -> SurfaceBundle:
    """A numerical bundle on a K-trivial surface with prescribed ``(r, chi, delta)``.

    Solves Riemann-Roch and the ``delta`` formula for ``(c1^2, c2)``.
    Raises if the solution would need an odd ``c1^2``.
    """
    delta_ = Fraction(delta_)
    if kind is GeometryKind.K3:
        half_c1 = delta_ - 1 - r * r + r * chi
    elif kind in _ABELIAN_LIKE:
        half_c1 = delta_ + r * chi
    elif kind is GeometryKind.ENRIQUES:
        half_c1 = delta_ + r * chi - Fraction(r * r + 1, 2)
    else:
        raise UnsupportedGeometryError(f"{kind.value} is not K-trivial")
    if half_c1.denominator != 1:
        raise InconsistentDataError(
            f"delta = {delta_} is not attained in rank {r} on a {kind.value} surface"
        )
    x = int(half_c1)
    c2 = r * kind.invariants[0] + x - chi
    return SurfaceBundle.on(kind, r, 2 * x, c2)


def check_k3(b: SurfaceBundle, k: int) -> CriterionVerdict:
    _require(b, (GeometryKind.K3,))
    r = b.rank
    chi = chi_riemann_roch(b)
    d = delta(GeometryKind.K3, b)
    return CriterionVerdict(
        criterion="k3",
        flags={"chi_ge": chi >= (r + 2) * k, "delta_ge": d >= 0},
        segre=segre_closed(GeometryKind.K3, r, chi, d, k),
        side_conditions={"stable_route_chi": chi >= (r + 1) * k + d},
        assumptions=(VERY_AMPLE,),
    )


def check_abelian(b: SurfaceBundle, k: int) -> CriterionVerdict:
    """Abelian or bielliptic surfaces share the same criterion."""
    kind = _require(b, _ABELIAN_LIKE)
    r = b.rank
    chi = chi_riemann_roch(b)
    d = delta(kind, b)
    return CriterionVerdict(
        criterion="abelian",
        flags={"chi_ge": chi >= (r + 2) * k, "delta_ge": d >= 0},
        segre=segre_closed(kind, r, chi, d, k),
        assumptions=(VERY_AMPLE,),
    )


def check_enriques(b: SurfaceBundle, k: int) -> CriterionVerdict:
    """Odd-rank theorem: ``chi >= 2k(r+1)`` and ``delta >= 0``."""
    _require(b, (GeometryKind.ENRIQUES,))
    r = b.rank
    chi = chi_riemann_roch(b)
    d = delta(GeometryKind.ENRIQUES, b)
    return CriterionVerdict(
        criterion="enriques",
        flags={
            "rank_odd": r % 2 == 1,
            "chi_ge": chi >= 2 * k * (r + 1),
            "delta_ge": d >= 0,
        },
        segre=segre_closed(GeometryKind.ENRIQUES, r, chi, d, k),
        assumptions=(VERY_AMPLE,),
    )


def check_enriques_conjecture(b: SurfaceBundle, k: int) -> CriterionVerdict:
    """Conjectured bound ``chi >= (5r/4 + 2) k`` for every rank."""
    _require(b, (GeometryKind.ENRIQUES,))
    r = b.rank
    chi = chi_riemann_roch(b)
    d = delta(GeometryKind.ENRIQUES, b)
    return CriterionVerdict(
        criterion="enriques-conjecture",
        flags={"chi_ge": 4 * chi >= (5 * r + 8) * k, "delta_ge": d >= 0},
        segre=segre_closed(GeometryKind.ENRIQUES, r, chi, d, k),
        assumptions=(VERY_AMPLE,),
        conjectural=True,
    )


def blowup_segre_bound_holds(h: int, ell: int, k: int) -> bool:
    """The two inequalities under which the lemma forces a positive integral."""
    return k <= ell + 1 and 2 * h > ell * (ell + 1) + 6 * k - 6


def check_blowup(h: int, ell: int, k: int) -> CriterionVerdict:
    """``L = H - ell E`` on a K3 of Picard rank one blown up at a point."""
    two_h = 2 * h
    flags = {
        "ell_ge_k_minus_1": ell >= k - 1,
        "h_gt_vanishing": two_h > (ell + 2) ** 2 - 6,
        "h_gt_M_sq": two_h > (ell + 1) ** 2 + 4 * k,
        "h_gt_segre": two_h > ell * (ell + 1) + 6 * k - 6,
    }
    side = {"seshadri_ge_ell_plus_1": seshadri_lower_bound(two_h) >= ell + 1}
    if k >= 1 and flags["h_gt_M_sq"]:
        search = bs_obstruction_blowup(h, ell, k)
        side["obstruction_only_E"] = set(search.candidates) <= {(0, 1)}
    return CriterionVerdict(
        criterion="blowup",
        flags=flags,
        segre=segre_blowup_k3(h, ell, k),
        side_conditions=side,
        assumptions=("H^1(L(-E)) = 0",),
    )


def check_general_type(L_sq: int, L_dot_K: int, K_sq: int, chi_O: int, k: int) -> CriterionVerdict:
    """Rank one on a minimal surface of general type."""
    if (L_sq - L_dot_K) % 2:
        raise InconsistentDataError("L^2 - L.K must be even (adjunction)")
    chi_L = chi_O + (L_sq - L_dot_K) // 2
    m, n, p = mnp_from_bundle(L_sq, L_dot_K, K_sq, chi_O, k)
    return CriterionVerdict(
        criterion="general-type",
        flags={
            "chi_L_ge_3k": chi_L >= 3 * k,
            "LK_ge": L_dot_K >= 2 * K_sq + k + 1,
            "p_nonneg": p >= 0,
        },
        segre=segre_general_type(m, n, p, k),
        side_conditions={"K_sq_positive": K_sq > 0, "chi_O_positive": chi_O > 0},
        assumptions=(VERY_AMPLE, "X minimal of general type"),
    )
