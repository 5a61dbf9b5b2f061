"""Divisor searches behind (k-1)-very ampleness, and Seshadri lower bounds.

Both searches look for an effective ``D`` with

    L.D - k <= D^2 < L.D / 2 < k,    L - 2D Q-effective,

the numerical obstruction to (k-1)-very ampleness of a nef ``L`` with
``L^2 > 4k``. Effectivity is replaced by the necessary numerical conditions
available in each lattice model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

HARD_CAP = 10_000


@dataclass(frozen=True)
class Rank1Search:
    n: int
    h: int
    k: int
    precondition: bool  # L^2 > 4k
    searched_up_to: int
    exhaustive: bool
    witnesses: tuple

    @property
    def witness(self) -> Optional[int]:
        return self.witnesses[0] if self.witnesses else None

    @property
    def predicted_very_ample(self) -> bool:
        return self.precondition and self.exhaustive and not self.witnesses


def _chain(LD: int, D2: int, k: int) -> bool:
    # L.D - k <= D^2 < L.D/2 < k, cleared of denominators
    return LD - k <= D2 and 2 * D2 < LD and LD < 2 * k


def bs_obstruction_rank1(n: int, h: int, k: int, search_bound: Optional[int] = None) -> Rank1Search:
    """Search ``D = aH`` for ``L = nH`` on a Picard rank one surface, ``H^2 = 2h``.

    ``L.D / 2 < k`` forces ``a n h < k``, which bounds the search; an explicit
    ``search_bound`` can only shorten it (and the result is then flagged as
    not exhaustive if it cut the derived range).
    """
    if n < 1 or h < 1:
        raise ValueError("need n >= 1 and h >= 1")
    derived = max(0, (k - 1) // (n * h)) if k > 0 else 0
    limit = derived if search_bound is None else min(derived, search_bound)
    limit = min(limit, HARD_CAP)
    witnesses = []
    for a in range(1, limit + 1):
        if n - 2 * a < 0:
            break
        if _chain(2 * n * a * h, 2 * a * a * h, k):
            witnesses.append(a)
    return Rank1Search(
        n=n, h=h, k=k,
        precondition=2 * n * n * h > 4 * k,
        searched_up_to=limit,
        exhaustive=limit >= derived,
        witnesses=tuple(witnesses),
    )


@dataclass(frozen=True)
class BlowupSearch:
    h: int
    ell: int
    k: int
    precondition: bool  # M^2 > 4k
    bounds: tuple
    candidates: list
    full_chain: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.precondition:
            return "precondition_failed"
        if not self.candidates:
            return "very_ample"
        if self.candidates == [(0, 1)]:
            return "requires_cohomology"
        return "obstructed"


def bs_obstruction_blowup(h: int, ell: int, k: int, bounds: Optional[tuple] = None) -> BlowupSearch:
    """Search ``D = aH + bE`` against ``M = H - (ell+1)E`` on a blown-up K3.

    Lattice: ``H^2 = 2h``, ``E^2 = -1``, ``H.E = 0``. A candidate survives the
    conditions used in the positivity argument: ``a >= 0`` (D effective),
    ``b >= 1`` when ``a = 0``, ``1 - 2a >= 0`` (``M - 2D`` Q-effective) and
    ``D^2 < D.M / 2 < k``. Whether each survivor also meets the left end
    ``D.M - k <= D^2`` of the chain is recorded in ``full_chain``.
    """
    if bounds is None:
        a_max = b_max = k + ell + 2
    else:
        a_max, b_max = bounds
    a_max, b_max = min(a_max, HARD_CAP), min(b_max, HARD_CAP)
    candidates = []
    full = {}
    for a in range(0, a_max + 1):
        if 1 - 2 * a < 0:
            break
        for b in range(-b_max, b_max + 1):
            if a == 0 and b < 1:
                continue
            D2 = 2 * h * a * a - b * b
            DM = 2 * h * a + b * (ell + 1)
            if 2 * D2 < DM and DM < 2 * k:
                candidates.append((a, b))
                full[(a, b)] = _chain(DM, D2, k)
    return BlowupSearch(
        h=h, ell=ell, k=k,
        precondition=2 * h - (ell + 1) ** 2 > 4 * k,
        bounds=(a_max, b_max),
        candidates=candidates,
        full_chain=full,
    )


def seshadri_lower_bound(H_sq: int) -> Fraction:
    """Lower bound for the Seshadri constant of a Picard rank one K3 at a point.

    ``floor(sqrt(H^2))`` in general; when ``H^2 = a^2 + a - 2`` the bound is
    ``a - 2/(a+1)`` and when ``H^2 = a^2 + (a-1)/2`` it is ``a - 1/(2a+1)``.
    If several shapes apply the smallest bound is returned.
    """
    if H_sq < 2 or H_sq % 2:
        raise ValueError("H^2 must be an even integer >= 2")
    bounds = []
    a = 1
    while a * a <= H_sq + 2:
        if a * a + a - 2 == H_sq:
            bounds.append(a - Fraction(2, a + 1))
        if a % 2 == 1 and a * a + (a - 1) // 2 == H_sq:
            bounds.append(a - Fraction(1, 2 * a + 1))
        a += 1
    if bounds:
        return min(bounds)
    return Fraction(math.isqrt(H_sq))
