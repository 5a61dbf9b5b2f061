"""Parameter-grid scanners.

A scan evaluates one pure function on every cell of a Cartesian grid. Each
row records the inputs, the value (usually a Segre integral), named boolean
flags and whether the value is positive. A *criterion* is a tuple of flag
names; a row is a counterexample to it when all those flags hold and the
row is not positive.

Rows are sorted by input tuple, so a report is the same whatever the number
of worker processes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from ..curve import CurveBundle, check_curve_criterion, check_quot_criterion
from ..series import format_rational
from ..surface import GeometryKind, mnp_from_bundle, segre_closed, segre_general_type
from .criteria import blowup_segre_bound_holds, check_blowup
from .lemma import verify_positivity_lemma

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ScanRow:
    inputs: tuple
    value: Optional[Fraction]
    flags: dict
    positive: bool
    extra: dict = field(default_factory=dict)

    @property
    def sign(self) -> str:
        if self.value is None:
            return "none"
        return "+" if self.value > 0 else ("0" if self.value == 0 else "-")


@dataclass
class ScanReport:
    kind: str
    columns: tuple
    criteria: dict
    rows: list
    metadata: dict

    def flag_names(self) -> list:
        names: list = []
        for row in self.rows:
            for f in row.flags:
                if f not in names:
                    names.append(f)
        return names

    def extra_names(self) -> list:
        names: list = []
        for row in self.rows:
            for f in row.extra:
                if f not in names:
                    names.append(f)
        return names

    def covered(self, criterion: str) -> list:
        need = self.criteria[criterion]
        return [row for row in self.rows if all(row.flags[f] for f in need)]

    def counterexamples(self, criterion: str) -> list:
        return [row for row in self.covered(criterion) if not row.positive]

    def summary(self) -> dict:
        out = {"rows": len(self.rows)}
        for name in self.criteria:
            cov = self.covered(name)
            out[name] = {
                "covered": len(cov),
                "counterexamples": sum(1 for row in cov if not row.positive),
            }
        return out

    def summary_line(self) -> str:
        s = self.summary()
        parts = [f"{self.kind}: {s['rows']} rows"]
        for name in self.criteria:
            parts.append(f"{name}: {s[name]['counterexamples']} counterexamples "
                         f"in {s[name]['covered']} covered rows")
        return "; ".join(parts)

    def row_dict(self, row: ScanRow) -> dict:
        d = {c: _cell_str(v) for c, v in zip(self.columns, row.inputs)}
        d["value"] = None if row.value is None else format_rational(row.value)
        d["sign"] = row.sign
        d.update(row.flags)
        d.update({k: _cell_str(v) for k, v in row.extra.items()})
        d["positive"] = row.positive
        for name, need in self.criteria.items():
            d[f"counterexample_{name}"] = all(row.flags[f] for f in need) and not row.positive
        return d

    def header(self) -> list:
        return (list(self.columns) + ["value", "sign"] + self.flag_names()
                + self.extra_names() + ["positive"]
                + [f"counterexample_{name}" for name in self.criteria])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=self.header(), lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: _csv_str(v) for k, v in self.row_dict(row).items()})
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "metadata": self.metadata,
            "criteria": {k: list(v) for k, v in self.criteria.items()},
            "summary": self.summary(),
            "rows": [self.row_dict(row) for row in self.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def _cell_str(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    return v


def _csv_str(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def positivity_thresholds(report: ScanReport, group: Sequence[str], var: str,
                          only: Optional[str] = None) -> dict:
    """Per group, the least scanned ``var`` from which every larger value is positive.

    ``only`` names a flag that a row must carry to be considered (e.g. the
    geometric parity flag). ``None`` marks groups whose largest value is not
    positive.
    """
    gi = [report.columns.index(g) for g in group]
    vi = report.columns.index(var)
    buckets: dict = {}
    for row in report.rows:
        if only is not None and not row.flags[only]:
            continue
        key = tuple(row.inputs[i] for i in gi)
        buckets.setdefault(key, []).append((row.inputs[vi], row.positive))
    out = {}
    for key, vals in sorted(buckets.items()):
        vals.sort()
        threshold = None
        for x, pos in reversed(vals):
            if not pos:
                break
            threshold = x
        out[key] = threshold
    return out


# ---------------------------------------------------------------- cells

def _cell_k_trivial(kind: GeometryKind, cell: tuple):
    r, k, d, chi = cell
    seg = segre_closed(kind, r, chi, d, k)
    flags = {"chi_ge": chi >= (r + 2) * k, "delta_ge": d >= 0}
    return ScanRow(cell, seg.value, flags, seg.positive)


def _cell_k3(cell: tuple) -> ScanRow:
    return _cell_k_trivial(GeometryKind.K3, cell)


def _cell_abelian(cell: tuple) -> ScanRow:
    return _cell_k_trivial(GeometryKind.ABELIAN, cell)


def _cell_enriques(cell: tuple) -> ScanRow:
    r, k, d, chi = cell
    half_c1 = d + r * chi - Fraction(r * r + 1, 2)
    seg = segre_closed(GeometryKind.ENRIQUES, r, chi, d, k)
    flags = {
        "geometric": half_c1.denominator == 1,
        "delta_ge_0": d >= 0,
        "chi_ge_r_plus_2_k": chi >= (r + 2) * k,
        "chi_ge_conjecture": 4 * chi >= (5 * r + 8) * k,
        "rank_odd": r % 2 == 1,
        "chi_ge_theorem": chi >= 2 * k * (r + 1),
    }
    return ScanRow(cell, seg.value, flags, seg.positive)


def _cell_blowup(cell: tuple) -> ScanRow:
    h, ell, k = cell
    v = check_blowup(h, ell, k)
    flags = dict(v.flags)
    flags["segre_bound"] = blowup_segre_bound_holds(h, ell, k)
    return ScanRow(cell, v.segre.value, flags, v.segre.positive)


def _cell_general_type(cell: tuple) -> ScanRow:
    K_sq, chi_O, k, L_dot_K, chi_L = cell
    L_sq = 2 * (chi_L - chi_O) + L_dot_K
    m, n, p = mnp_from_bundle(L_sq, L_dot_K, K_sq, chi_O, k)
    seg = segre_general_type(m, n, p, k)
    flags = {
        "surface_ok": K_sq >= 1 and chi_O >= 1 and 2 * chi_O - 6 <= K_sq <= 9 * chi_O,
        "hodge_index": L_sq * K_sq <= L_dot_K * L_dot_K,
        "chi_L_ge_3k": chi_L >= 3 * k,
        "LK_ge": L_dot_K >= 2 * K_sq + k + 1,
        "p_nonneg": p >= 0,
    }
    return ScanRow(cell, seg.value, flags, seg.positive, {"L_sq": L_sq, "m": m, "n": n, "p": p})


def _cell_curve(cell: tuple) -> ScanRow:
    g, r, d, k = cell
    v = check_curve_criterion(CurveBundle(g, r, d), k)
    return ScanRow(cell, v.segre.value, dict(v.flags), v.segre.positive)


def _cell_quot(cell: tuple) -> ScanRow:
    g, N, d_L, k = cell
    v = check_quot_criterion(g, N, d_L, k)
    return ScanRow(cell, v.segre.value, dict(v.flags), v.segre.positive)


def _cell_lemma(cell: tuple) -> ScanRow:
    m, n, p = cell
    bound = max(min((m + n + p) // 2 - 1, m - 1), 0)
    rep = verify_positivity_lemma(m, n, p, bound)
    first = rep.first_nonpositive
    return ScanRow(
        cell,
        None if first is None else Fraction(first),
        {"hypotheses": rep.hypotheses},
        rep.positive_through_bound,
        {"bound": rep.bound},
    )


# ---------------------------------------------------------------- driver

def _evaluate_chunk(args) -> list:
    fn, cells = args
    return [fn(c) for c in cells]


def run_grid(fn: Callable[[tuple], ScanRow], cells: Iterable[tuple], workers: int = 1,
             chunk: int = 512) -> list:
    """Evaluate ``fn`` on every cell; rows come back sorted by input tuple."""
    cells = list(cells)
    if workers <= 1 or len(cells) <= chunk:
        rows = [fn(c) for c in cells]
    else:
        # Interleaved chunks spread expensive cells across workers.
        n = max(workers * 4, -(-len(cells) // chunk))
        parts = [(fn, cells[i::n]) for i in range(n)]
        rows = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_evaluate_chunk, parts):
                rows.extend(part)
    rows.sort(key=lambda row: row.inputs)
    return rows


def _grid_meta(**axes) -> dict:
    return {name: [_cell_str(v) for v in values] for name, values in axes.items()}


def _report(kind, columns, criteria, fn, cells, grid, workers, seed, timestamp) -> ScanReport:
    rows = run_grid(fn, cells, workers)
    meta = {"grid": grid, "seed": seed}
    if timestamp:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return ScanReport(kind, tuple(columns), criteria, rows, meta)


def half_steps(lo, hi) -> list:
    """``lo, lo + 1/2, ..., hi``."""
    lo, hi = Fraction(lo), Fraction(hi)
    out = []
    x = lo
    while x <= hi:
        out.append(x)
        x += HALF
    return out


def scan_enriques(r_range: Iterable[int] = range(1, 9), k_range: Iterable[int] = range(1, 11),
                  chi_margin_range: Iterable[int] = range(0, 25),
                  delta_range: Optional[Iterable] = None, workers: int = 1,
                  seed: Optional[int] = None, timestamp: bool = False) -> ScanReport:
    """Sign of the Enriques integral on ``chi = (r+2)k + margin``.

    Every rank and every half-integer ``delta`` is scanned; cells whose
    ``c1^2`` would be odd carry ``geometric = False`` and are left out of
    every criterion.
    """
    rs, ks, ms = list(r_range), list(k_range), list(chi_margin_range)
    ds = [Fraction(d) for d in (half_steps(0, 6) if delta_range is None else delta_range)]
    cells = [(r, k, d, (r + 2) * k + j) for r in rs for k in ks for d in ds for j in ms]
    criteria = {
        "r_plus_2_k": ("geometric", "delta_ge_0", "chi_ge_r_plus_2_k"),
        "conjecture": ("geometric", "delta_ge_0", "chi_ge_conjecture"),
        "theorem": ("geometric", "rank_odd", "delta_ge_0", "chi_ge_theorem"),
    }
    grid = _grid_meta(r=rs, k=ks, delta=ds, chi_margin=ms)
    return _report("enriques", ("r", "k", "delta", "chi"), criteria, _cell_enriques,
                   cells, grid, workers, seed, timestamp)


def _scan_k_trivial(kind, fn, r_range, k_range, delta_range, chi_margin_range,
                    workers, seed, timestamp) -> ScanReport:
    rs, ks, ds, ms = list(r_range), list(k_range), list(delta_range), list(chi_margin_range)
    cells = [(r, k, d, (r + 2) * k + j) for r in rs for k in ks for d in ds for j in ms]
    grid = _grid_meta(r=rs, k=ks, delta=ds, chi_margin=ms)
    return _report(kind, ("r", "k", "delta", "chi"), {"theorem": ("chi_ge", "delta_ge")},
                   fn, cells, grid, workers, seed, timestamp)


def scan_k3(r_range=range(1, 5), k_range=range(1, 9), delta_range=range(0, 7),
            chi_margin_range=range(0, 7), workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    return _scan_k_trivial("k3", _cell_k3, r_range, k_range, delta_range, chi_margin_range,
                           workers, seed, timestamp)


def scan_abelian(r_range=range(1, 5), k_range=range(1, 9), delta_range=range(0, 7),
                 chi_margin_range=range(0, 7), workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    return _scan_k_trivial("abelian", _cell_abelian, r_range, k_range, delta_range,
                           chi_margin_range, workers, seed, timestamp)


def scan_blowup(h_range=range(1, 41), ell_range=range(0, 8), k_range=range(1, 8),
                workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    hs, ls, ks = list(h_range), list(ell_range), list(k_range)
    cells = list(itertools.product(hs, ls, ks))
    criteria = {
        "theorem": ("ell_ge_k_minus_1", "h_gt_vanishing", "h_gt_M_sq", "h_gt_segre"),
        "segre_bound": ("segre_bound",),
    }
    return _report("blowup", ("h", "ell", "k"), criteria, _cell_blowup, cells,
                   _grid_meta(h=hs, ell=ls, k=ks), workers, seed, timestamp)


def scan_general_type(K_sq_range=range(1, 4), chi_O_range=range(1, 4), k_range=range(1, 6),
                      L_dot_K_range=range(1, 25), chi_L_range=range(1, 21),
                      workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    """Rank one on minimal surfaces of general type, parametrized by ``chi(L)``."""
    axes = [list(a) for a in (K_sq_range, chi_O_range, k_range, L_dot_K_range, chi_L_range)]
    cells = list(itertools.product(*axes))
    criteria = {"theorem": ("surface_ok", "hodge_index", "chi_L_ge_3k", "LK_ge")}
    names = ("K_sq", "chi_O", "k", "L_dot_K", "chi_L")
    return _report("general-type", names, criteria, _cell_general_type, cells,
                   _grid_meta(**dict(zip(names, axes))), workers, seed, timestamp)


def scan_curve(g_range=range(0, 5), r_range=range(1, 4), d_range=range(-2, 21),
               k_range=range(0, 9), workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    axes = [list(a) for a in (g_range, r_range, d_range, k_range)]
    names = ("g", "r", "d", "k")
    return _report("curve", names, {"chi_bound": ("chi_bound",)}, _cell_curve,
                   list(itertools.product(*axes)), _grid_meta(**dict(zip(names, axes))),
                   workers, seed, timestamp)


def scan_quot(g_range=range(0, 5), N_range=range(1, 4), d_L_range=range(-2, 16),
              k_range=range(0, 9), workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    axes = [list(a) for a in (g_range, N_range, d_L_range, k_range)]
    names = ("g", "N", "d_L", "k")
    criteria = {
        "theorem": ("chi_ge_k_plus_g", "chi_ge_k_N_ratio"),
        "ratio_only": ("chi_ge_k_N_ratio",),
    }
    return _report("quot", names, criteria, _cell_quot, list(itertools.product(*axes)),
                   _grid_meta(**dict(zip(names, axes))), workers, seed, timestamp)


def scan_lemma(m_range=range(0, 13), n_range=range(-12, 13), p_range=range(0, 13),
               workers: int = 1, seed=None, timestamp=False) -> ScanReport:
    """Positivity of ``f(t)`` through the claimed bound on an ``(m, n, p)`` grid.

    The row value is the first nonpositive index at or below the bound, if any.
    """
    axes = [list(a) for a in (m_range, n_range, p_range)]
    names = ("m", "n", "p")
    return _report("lemma", names, {"lemma": ("hypotheses",)}, _cell_lemma,
                   list(itertools.product(*axes)), _grid_meta(**dict(zip(names, axes))),
                   workers, seed, timestamp)


SCANNERS = {
    "enriques": scan_enriques,
    "k3": scan_k3,
    "abelian": scan_abelian,
    "blowup": scan_blowup,
    "general-type": scan_general_type,
    "curve": scan_curve,
    "quot": scan_quot,
    "lemma": scan_lemma,
}
