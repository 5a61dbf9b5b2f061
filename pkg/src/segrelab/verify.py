"""Named invariant checks behind ``segrelab verify``.

Each check returns a :class:`CheckResult`; the grid helpers are public so the
test suite can run the same computations with its own bounds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .curve import CurveBundle, segre_curve_closed, segre_curve_series
from .positivity.criteria import bundle_from_invariants
from .positivity.lattice import bs_obstruction_blowup, seshadri_lower_bound
from .positivity.lemma import verify_lemma_claim, verify_positivity_lemma
from .positivity.scan import (
    scan_abelian,
    scan_blowup,
    scan_curve,
    scan_enriques,
    scan_general_type,
    scan_k3,
    scan_lemma,
    scan_quot,
)
from .series import (
    TruncatedSeries,
    add,
    binomial,
    compose,
    mul,
    reciprocal,
    rational_pow,
    reverse,
    series_from_coeffs,
    sub,
    variable,
)
from .surface import (
    GeometryKind,
    SurfaceBundle,
    chi_riemann_roch,
    delta,
    mnp_from_bundle,
    segre_blowup_k3,
    segre_closed,
    segre_delta0,
    segre_general_type,
    segre_rank1_general,
    segre_series,
)

K3 = GeometryKind.K3
ENRIQUES = GeometryKind.ENRIQUES


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}: {self.detail} ({self.seconds:.2f}s)"


# ------------------------------------------------------------------ grids

def two_path_mismatches(kind: GeometryKind, r_range: Iterable[int] = range(1, 4),
                        c1_range: Iterable[int] = range(-2, 9),
                        c2_range: Iterable[int] = range(-2, 5), k_max: int = 8) -> tuple:
    """Compare reversion coefficients with the closed form; returns ``(cases, mismatches)``.

    Odd ``c1^2`` is kept: both sides are then formal, with a half-integer ``chi``.
    """
    bad = []
    cases = 0
    for r in r_range:
        for c1 in c1_range:
            for c2 in c2_range:
                b = SurfaceBundle.on(kind, r, c1, c2)
                chi = chi_riemann_roch(b, strict=False)
                d = delta(kind, b)
                series = segre_series(kind, b, k_max)
                for k in range(k_max + 1):
                    cases += 1
                    closed = segre_closed(kind, r, chi, d, k).value
                    if series.coeffs[k] != closed:
                        bad.append((r, c1, c2, k, series.coeffs[k], closed))
    return cases, bad


def delta0_mismatches(r_range=range(1, 5), chi_range=range(-4, 25), k_range=range(0, 9)) -> tuple:
    bad = []
    cases = 0
    for r in r_range:
        for chi in chi_range:
            for k in k_range:
                cases += 1
                a = segre_closed(K3, r, chi, 0, k).value
                b = segre_delta0(r, chi, k).value
                if a != b:
                    bad.append((r, chi, k, a, b))
    return cases, bad


def k1_mismatches(c1_range=range(-4, 21, 2), g_range=range(0, 5), d_range=range(-3, 13)) -> tuple:
    """``k = 1``: rank one with ``delta = 0`` gives ``c1^2``; on curves the signed value is ``d``."""
    bad = []
    cases = 0
    for kind in (K3, GeometryKind.ABELIAN, ENRIQUES):
        for c1 in c1_range:
            b = SurfaceBundle.on(kind, 1, c1, 0)
            cases += 1
            if delta(kind, b) != 0:
                bad.append((kind.value, c1, "delta", delta(kind, b)))
                continue
            v = segre_closed(kind, 1, chi_riemann_roch(b), 0, 1).value
            if v != c1:
                bad.append((kind.value, c1, v))
    for g in g_range:
        for r in (1, 2, 3):
            for d in d_range:
                cases += 1
                v = segre_curve_closed(CurveBundle(g, r, d), 1).value
                if v != d:
                    bad.append(("curve", g, r, d, v))
    return cases, bad


def curve_two_path_mismatches(g_range=range(0, 5), r_range=range(1, 4),
                              d_range=range(-2, 11), k_max: int = 8) -> tuple:
    bad = []
    cases = 0
    for g in g_range:
        for r in r_range:
            for d in d_range:
                b = CurveBundle(g, r, d)
                s = segre_curve_series(b, k_max)
                for k in range(k_max + 1):
                    cases += 1
                    signed = s.coeffs[k] * (-1) ** k
                    if signed != segre_curve_closed(b, k).value:
                        bad.append((g, r, d, k))
    return cases, bad


def cross_formula_mismatches(k_max: int = 6) -> tuple:
    """Rank-one formula against the K3 closed form, the blowup formula and the lemma route."""
    bad = []
    cases = 0
    for L_sq in range(-2, 13, 2):
        chi = 2 + L_sq // 2
        for k in range(k_max + 1):
            cases += 1
            a = segre_rank1_general(L_sq, 2, 0, 0, k).value
            if a != segre_closed(K3, 1, chi, 0, k).value:
                bad.append(("k3", L_sq, k))
    for h in range(1, 13):
        for ell in range(0, 4):
            for k in range(0, k_max + 1):
                cases += 1
                a = segre_rank1_general(2 * h - ell * ell, 2, ell, -1, k).value
                if a != segre_blowup_k3(h, ell, k).value:
                    bad.append(("blowup", h, ell, k))
    for K_sq, chi_O in ((1, 1), (1, 2), (2, 1), (2, 3), (3, 2)):
        for L_dot_K in range(1, 9):
            for L_sq in range(-3, 15):
                if (L_sq - L_dot_K) % 2:
                    continue
                for k in range(0, 5):
                    cases += 1
                    m, n, p = mnp_from_bundle(L_sq, L_dot_K, K_sq, chi_O, k)
                    a = segre_general_type(m, n, p, k).value
                    b = segre_rank1_general(L_sq, chi_O, L_dot_K, K_sq, k).value
                    if a != b:
                        bad.append(("general-type", K_sq, chi_O, L_dot_K, L_sq, k))
    return cases, bad


# ------------------------------------------------------------ engine laws

_EXPONENTS = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2),
              Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2))


def _rand_series(rng: random.Random, order: int, const=None, low: int = 0) -> TruncatedSeries:
    cs = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3))) for _ in range(order + 1)]
    for i in range(low):
        cs[i] = Fraction(0)
    if const is not None:
        cs[0] = Fraction(const)
    return series_from_coeffs(cs, order)


def engine_law_case(rng: random.Random, i: int) -> Optional[str]:
    """Run one randomized law; returns a description on failure."""
    order = rng.randint(1, 8)
    law = i % 6
    if law == 0:
        a, b, c = (_rand_series(rng, order) for _ in range(3))
        if sub(add(a, b), b) != a or mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return f"ring: {a} {b} {c}"
        if mul(a, b) != mul(b, a) or mul(mul(a, b), c) != mul(a, mul(b, c)):
            return f"ring assoc/comm: {a} {b} {c}"
    elif law == 1:
        a = _rand_series(rng, order, const=1)
        p, q = rng.choice(_EXPONENTS), rng.choice(_EXPONENTS)
        if mul(rational_pow(a, p), rational_pow(a, q)) != rational_pow(a, p + q):
            return f"pow additivity: {a} {p} {q}"
    elif law == 2:
        a = _rand_series(rng, order, const=1)
        s = rational_pow(a, Fraction(1, 2))
        if mul(s, s) != a:
            return f"sqrt-square: {a}"
    elif law == 3:
        f = _rand_series(rng, order, low=1)
        if f.coeffs[1] == 0:
            f = add(f, variable(order))
        g = reverse(f)
        t = variable(order)
        if compose(f, g) != t or compose(g, f) != t:
            return f"reverse: {f}"
    elif law == 4:
        a = _rand_series(rng, order)
        if a.coeffs[0] == 0:
            a = add(a, series_from_coeffs([1], order))
        if mul(a, reciprocal(a)) != series_from_coeffs([1], order):
            return f"reciprocal: {a}"
    else:
        c = Fraction(rng.randint(-6, 6), rng.choice((1, 2)))
        p = rng.choice(_EXPONENTS)
        # ((1 + ct)^2)^p takes the general recurrence; (1 + ct)^(2p) is closed form
        sq = mul(binomial(c, 1, order), binomial(c, 1, order))
        if rational_pow(sq, p) != binomial(c, 2 * p, order):
            return f"binomial: {c} {p}"
    return None


def engine_laws(cases: int = 10_000, seed: int = 20240101) -> tuple:
    rng = random.Random(seed)
    bad = []
    for i in range(cases):
        err = engine_law_case(rng, i)
        if err:
            bad.append(err)
    return cases, bad


# ----------------------------------------------------------------- checks

SQRT_2T = (1, 1, Fraction(-1, 2), Fraction(1, 2), Fraction(-5, 8))
SQRT_6T = (1, 3, Fraction(-9, 2), Fraction(27, 2), Fraction(-405, 8))


def _grid_result(name: str, fn: Callable[[], tuple]) -> tuple:
    cases, bad = fn()
    if bad:
        return False, f"{len(bad)} of {cases} disagree, first {bad[0]}"
    return True, f"{cases} cases agree"


def check_sqrt_expansion():
    a = binomial(2, Fraction(1, 2), 4).coeffs
    b = binomial(6, Fraction(1, 2), 4).coeffs
    ok = a == SQRT_2T and b == SQRT_6T
    return ok, "sqrt(1+2t), sqrt(1+6t) through t^4" + ("" if ok else f": got {a}, {b}")


def check_lemma_counterexamples():
    r1 = verify_positivity_lemma(2, 19, 1, 10)
    r2 = verify_positivity_lemma(4, 0, 0, 3)
    ok = r1.coefficients[10] < 0 and r2.coefficients[3] == 0
    ok = ok and r1.first_nonpositive == 10 and r2.positive_through_bound
    return ok, (f"(2,19,1) t^10 coefficient {r1.coefficients[10]}, "
                f"(4,0,0) t^3 coefficient {r2.coefficients[3]}")


def check_lemma_grid():
    rep = scan_lemma()
    s = rep.summary()["lemma"]
    return s["counterexamples"] == 0, f"{s['covered']} admissible (m,n,p), {s['counterexamples']} violations"


def check_lemma_claim():
    bad = []
    for m in range(0, 16):
        for shape in (("even", "i") if m % 2 == 0 else ("ii", "iii")):
            if not verify_lemma_claim(m, shape).ok:
                bad.append((m, shape))
    return not bad, "factor series through m = 15" + (f", failures {bad}" if bad else "")


def check_blowup_internals():
    found = []
    for h in range(1, 60):
        for ell in range(0, 6):
            for k in range(1, ell + 3):
                two_h = 2 * h
                if ell >= k - 1 and two_h > max((ell + 2) ** 2 - 6, (ell + 1) ** 2 + 4 * k,
                                                ell * (ell + 1) + 6 * k - 6):
                    s = bs_obstruction_blowup(h, ell, k)
                    # E itself survives only when ell + 1 < 2k
                    expect = [(0, 1)] if ell + 1 < 2 * k else []
                    if s.candidates != expect:
                        found.append((h, ell, k, s.candidates))
    sesh = (seshadri_lower_bound(10) == Fraction(5, 2)
            and seshadri_lower_bound(52) == Fraction(104, 15)
            and seshadri_lower_bound(16) == 4)
    ok = not found and sesh
    return ok, ("lattice search leaves only D = E; exceptional Seshadri bounds 5/2, 104/15"
                + (f"; bad {found[:3]}" if found else "") + ("" if sesh else "; seshadri mismatch"))


def check_theorem_grids():
    out = []
    ok = True
    scans = (scan_k3(), scan_abelian(), scan_enriques(r_range=range(1, 8, 2)), scan_blowup(),
             scan_general_type(), scan_curve(), scan_quot())
    for rep in scans:
        crit = "theorem" if "theorem" in rep.criteria else next(iter(rep.criteria))
        s = rep.summary()[crit]
        ok = ok and s["counterexamples"] == 0 and s["covered"] > 0
        out.append(f"{rep.kind} {s['counterexamples']}/{s['covered']}")
    return ok, "counterexamples/covered: " + ", ".join(out)


def check_enriques_experiments():
    rep = scan_enriques()
    s = rep.summary()
    n_old = s["r_plus_2_k"]["counterexamples"]
    n_conj = s["conjecture"]["counterexamples"]
    ok = n_old >= 1 and n_conj == 0
    first = rep.counterexamples("r_plus_2_k")[0].inputs if n_old else None
    return ok, f"{n_old} tuples break chi >= (r+2)k (first r,k,delta,chi = {first}), {n_conj} break the conjectured bound"


def check_enriques_small_cases():
    from .positivity.families import enriques_small_cases
    cases = enriques_small_cases()
    ok = all(v.positive for *_, v in cases)
    return ok, f"{len(cases)} rank one cases with 2 <= k <= 5 all positive" if ok else f"nonpositive in {cases}"


def check_bundle_roundtrip():
    bad = []
    for kind in (K3, GeometryKind.ABELIAN, ENRIQUES):
        for r in range(1, 5):
            for chi in range(-3, 12):
                for twice_d in range(0, 13):
                    d = Fraction(twice_d, 2)
                    try:
                        b = bundle_from_invariants(kind, r, chi, d)
                    except Exception:
                        continue
                    if chi_riemann_roch(b) != chi or delta(kind, b) != d:
                        bad.append((kind.value, r, chi, d))
    return not bad, "(r, chi, delta) -> bundle -> (chi, delta)" + (f" failed at {bad[:3]}" if bad else "")


CHECKS = {
    "sqrt-expansion": check_sqrt_expansion,
    "two-path-k3": lambda: _grid_result("two-path-k3", lambda: two_path_mismatches(K3)),
    "two-path-enriques": lambda: _grid_result("two-path-enriques", lambda: two_path_mismatches(ENRIQUES)),
    "delta0": lambda: _grid_result("delta0", delta0_mismatches),
    "k1-identities": lambda: _grid_result("k1-identities", k1_mismatches),
    "curve-two-path": lambda: _grid_result("curve-two-path", curve_two_path_mismatches),
    "cross-formula": lambda: _grid_result("cross-formula", cross_formula_mismatches),
    "bundle-roundtrip": check_bundle_roundtrip,
    "lemma-counterexamples": check_lemma_counterexamples,
    "lemma-grid": check_lemma_grid,
    "lemma-claim": check_lemma_claim,
    "blowup-internals": check_blowup_internals,
    "theorem-grids": check_theorem_grids,
    "enriques-experiments": check_enriques_experiments,
    "enriques-small-cases": check_enriques_small_cases,
    "engine-laws": lambda: _grid_result("engine-laws", lambda: engine_laws(2_000)),
}


def run_checks(names: Optional[Iterable[str]] = None) -> list:
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in names:
        t0 = time.perf_counter()
        ok, detail = CHECKS[name]()
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return results
