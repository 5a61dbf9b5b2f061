"""Acceptance gate: ten criteria, each exact and under its time limit.

Every criterion starts from cold caches. One PASS/FAIL line per criterion is
written to the terminal at the end of the module.
"""

import time
from fractions import Fraction

import pytest

from oracles import binomial_series, delta0_k3
import segrelab.positivity.lemma as lemma_mod
import segrelab.surface as surface_mod
from segrelab.positivity import (
    bs_obstruction_blowup,
    scan_abelian,
    scan_blowup,
    scan_curve,
    scan_enriques,
    scan_general_type,
    scan_k3,
    scan_lemma,
    scan_quot,
    seshadri_lower_bound,
    verify_positivity_lemma,
)
from segrelab.series import binomial, format_rational
from segrelab.surface import GeometryKind, segre_closed, segre_delta0
from segrelab.verify import (
    SQRT_2T,
    SQRT_6T,
    cross_formula_mismatches,
    engine_laws,
    k1_mismatches,
    two_path_mismatches,
)

RESULTS = {}


def _cold():
    for mod in (surface_mod, lemma_mod):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


@pytest.fixture(scope="module", autouse=True)
def report(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = ["", "acceptance criteria:"]
    for n in sorted(RESULTS):
        name, ok, secs, limit, detail = RESULTS[n]
        lines.append(f"  {n:2d} {'PASS' if ok else 'FAIL'} {name}: {detail} "
                     f"[{secs:.4f}s / limit {limit}s]")
    for line in lines:
        if tr is not None:
            tr.write_line(line)
        else:
            print(line)


def gate(n, name, limit, fn):
    _cold()
    t0 = time.perf_counter()
    ok, detail = fn()
    secs = time.perf_counter() - t0
    passed = ok and secs < limit
    RESULTS[n] = (name, passed, secs, limit, detail)
    print(f"ACCEPTANCE {n} {'PASS' if passed else 'FAIL'} {name} ({secs:.4f}s)")
    assert ok, detail
    assert secs < limit, f"{name} took {secs:.3f}s, limit {limit}s"


def test_01_sqrt_expansions():
    def run():
        a = binomial(2, Fraction(1, 2), 4).coeffs
        b = binomial(6, Fraction(1, 2), 4).coeffs
        shown = "; ".join(", ".join(map(format_rational, cs)) for cs in (a, b))
        return a == SQRT_2T and b == SQRT_6T, shown

    gate(1, "square-root expansions", 0.001, run)
    # independent oracle, outside the timed region
    assert tuple(binomial_series(2, Fraction(1, 2), 4)) == SQRT_2T
    assert tuple(binomial_series(6, Fraction(1, 2), 4)) == SQRT_6T


def test_02_two_path_segre_equality():
    def run():
        out = []
        for kind in (GeometryKind.K3, GeometryKind.ENRIQUES):
            cases, bad = two_path_mismatches(kind, range(1, 4), range(-2, 9), range(-2, 5), 8)
            out.append((kind.value, cases, bad))
        ok = all(not bad for _, _, bad in out)
        return ok, "; ".join(f"{k}: {c} cases, {len(b)} mismatches" for k, c, b in out)

    gate(2, "two-path Segre equality", 10, run)


def test_03_delta_zero_specialization():
    def run():
        bad = 0
        cases = 0
        for r in range(1, 4):
            for chi in range(-6, 31):
                for k in range(0, 9):
                    cases += 1
                    v = segre_closed(GeometryKind.K3, r, chi, 0, k).value
                    if v != segre_delta0(r, chi, k).value or v != delta0_k3(r, chi, k):
                        bad += 1
        return bad == 0, f"{cases} cases, {bad} mismatches"

    gate(3, "delta = 0 specialization", 1, run)


def test_04_k1_identities():
    def run():
        cases, bad = k1_mismatches()
        return not bad, f"{cases} cases, {len(bad)} mismatches"

    gate(4, "k = 1 identities", 1, run)


def test_05_positivity_lemma():
    def run():
        rep = scan_lemma(range(0, 13), range(-12, 13), range(0, 13))
        s = rep.summary()["lemma"]
        r1 = verify_positivity_lemma(2, 19, 1, 10)
        r2 = verify_positivity_lemma(4, 0, 0, 3)
        ok = (s["counterexamples"] == 0 and s["covered"] > 0
              and r1.coefficients[10] < 0 and r2.coefficients[3] == 0)
        return ok, (f"{s['covered']} admissible triples, {s['counterexamples']} violations; "
                    f"(2,19,1)[10] = {r1.coefficients[10]}, (4,0,0)[3] = {r2.coefficients[3]}")

    gate(5, "positivity lemma", 30, run)


def test_06_theorem_grids():
    def run():
        scans = [
            ("k3", scan_k3(), "theorem"),
            ("abelian", scan_abelian(), "theorem"),
            ("enriques odd rank", scan_enriques(r_range=range(1, 8, 2)), "theorem"),
            ("blowup", scan_blowup(), "theorem"),
            ("general type", scan_general_type(), "theorem"),
            ("curve", scan_curve(), "chi_bound"),
            ("quot", scan_quot(), "theorem"),
        ]
        parts = []
        ok = True
        for name, rep, crit in scans:
            s = rep.summary()[crit]
            ok = ok and s["covered"] > 0 and s["counterexamples"] == 0
            parts.append(f"{name} {s['counterexamples']}/{s['covered']}")
        return ok, "counterexamples/covered " + ", ".join(parts)

    gate(6, "theorem grids", 30, run)


def test_07_enriques_experiments():
    def run():
        rep = scan_enriques(range(1, 9), range(1, 11))
        s = rep.summary()
        old = s["r_plus_2_k"]["counterexamples"]
        conj = s["conjecture"]["counterexamples"]
        first = rep.counterexamples("r_plus_2_k")[0] if old else None
        where = "none"
        if first is not None:
            r, k, d, chi = first.inputs
            where = f"r={r} k={k} delta={format_rational(d)} chi={chi} value={format_rational(first.value)}"
        return old >= 1 and conj == 0, f"{old} below (r+2)k bound (first {where}), {conj} below conjecture"

    gate(7, "Enriques experiments", 30, run)


def test_08_cross_formula_consistency():
    def run():
        cases, bad = cross_formula_mismatches()
        return not bad, f"{cases} cases, {len(bad)} mismatches"

    gate(8, "cross-formula consistency", 10, run)


def test_09_blowup_internals():
    def run():
        bad = []
        checked = 0
        for h in range(1, 50):
            for ell in range(0, 6):
                for k in range(1, ell + 3):
                    if ell >= k - 1 and 2 * h > max((ell + 2) ** 2 - 6, (ell + 1) ** 2 + 4 * k,
                                                    ell * (ell + 1) + 6 * k - 6):
                        checked += 1
                        cands = bs_obstruction_blowup(h, ell, k).candidates
                        if set(cands) - {(0, 1)}:
                            bad.append((h, ell, k, cands))
        only_e = bs_obstruction_blowup(30, 3, 3).candidates == [(0, 1)]
        sesh = (seshadri_lower_bound(10) == Fraction(5, 2)
                and seshadri_lower_bound(52) == Fraction(104, 15))
        ok = not bad and only_e and sesh
        return ok, f"{checked} hypothesis cases leave at most D = E; Seshadri 5/2 and 104/15 {'ok' if sesh else 'wrong'}"

    gate(9, "blowup proof internals", 1, run)


def test_10_engine_laws():
    def run():
        cases, bad = engine_laws(10_000, seed=12345)
        return not bad, f"{cases} seeded cases, {len(bad)} failures" + (f", first {bad[0]}" if bad else "")

    gate(10, "engine laws", 10, run)
