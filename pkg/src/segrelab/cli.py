"""Command-line front end: ``segrelab {segre,series,scan,verify,examples}``.

Exit codes: 0 success, 1 a checked property failed, 2 usage error,
3 empty or degenerate input, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from fractions import Fraction
from typing import Optional, Sequence

from . import curve, surface
from .errors import SegreLabError
from .positivity import families
from .positivity.scan import SCANNERS
from .series import TruncatedSeries, format_rational
from .surface import GeometryKind, SurfaceBundle
from .verify import CHECKS, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EMPTY, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class EmptyInput(Exception):
    pass


# ------------------------------------------------------------ parsing helpers

_RANGE = re.compile(r"^\s*(-?[\d/]+)\s*\.\.\s*(-?[\d/]+)\s*(?::\s*([\d/]+))?\s*$")


def parse_range(text, integral: bool = True) -> list:
    """``"lo..hi"`` (inclusive), ``"lo..hi:step"``, ``"a,b,c"`` or a single value."""
    if isinstance(text, (list, tuple)):
        vals = [Fraction(str(v)) for v in text]
    else:
        text = str(text)
        m = _RANGE.match(text)
        if m:
            lo, hi = Fraction(m.group(1)), Fraction(m.group(2))
            step = Fraction(m.group(3)) if m.group(3) else Fraction(1)
            if step <= 0:
                raise UsageError(f"range step must be positive in {text!r}")
            vals = []
            x = lo
            while x <= hi:
                vals.append(x)
                x += step
        else:
            try:
                vals = [Fraction(p) for p in text.split(",") if p.strip()]
            except ValueError:
                raise UsageError(f"cannot parse range {text!r}; use lo..hi") from None
    if integral:
        if any(v.denominator != 1 for v in vals):
            raise UsageError(f"range {text!r} must be integral")
        return [int(v) for v in vals]
    return vals


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


_NEG_VALUE = re.compile(r"^-\d[\d/]*(\.\.-?[\d/]+(:[\d/]+)?)?$")


def fix_negative_values(argv: Sequence[str]) -> list:
    """Glue ``--opt -12..12`` into ``--opt=-12..12`` so argparse reads it as a value."""
    out: list = []
    for tok in argv:
        if (out and _NEG_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".segrelab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _check_writable(path: Optional[str]) -> None:
    if path is None:
        return
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
        raise OSError(f"cannot write to {path}")


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def _need(args, *names) -> list:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        opts = ", ".join("--" + n.replace("_", "-") for n in missing)
        what = getattr(args, "kind", None) or getattr(args, "family", None) or ""
        raise UsageError(f"{args.command} {what} needs {opts}".replace("  ", " "))
    return [getattr(args, n) for n in names]


# ------------------------------------------------------------------- segre

SEGRE_KINDS = ("k3", "abelian", "bielliptic", "enriques", "blowup-k3", "general-rank1",
               "general-type", "curve", "quot")


def compute_segre(args) -> surface.SegreValue:
    kind = args.kind
    k = _need(args, "k")[0]
    if k < 0:
        raise UsageError("--k must be non-negative")
    if kind in ("k3", "abelian", "bielliptic", "enriques"):
        gk = GeometryKind.parse(kind)
        if args.chi is not None or args.delta is not None:
            r, chi, d = _need(args, "r", "chi", "delta")
            return surface.segre_closed(gk, r, chi, d, k)
        if k == 0 and args.r is None:
            return surface.SegreValue(1)
        r, c1_sq, c2 = _need(args, "r", "c1_sq", "c2")
        return surface.segre_of_bundle(gk, SurfaceBundle.on(gk, r, c1_sq, c2), k)
    if kind == "blowup-k3":
        h, ell = _need(args, "h", "ell")
        return surface.segre_blowup_k3(h, ell, k)
    if kind == "general-rank1":
        L_sq, L_dot_K, K_sq, chi_O = _need(args, "L_sq", "L_dot_K", "K_sq", "chi_O")
        return surface.segre_rank1_general(L_sq, chi_O, L_dot_K, K_sq, k)
    if kind == "general-type":
        m, n, p = _need(args, "m", "n", "p")
        return surface.segre_general_type(m, n, p, k)
    if kind == "curve":
        g, r, d = _need(args, "g", "r", "d")
        return curve.segre_curve_closed(curve.CurveBundle(g, r, d), k)
    if kind == "quot":
        g, N, d_L = _need(args, "g", "N", "d_L")
        return curve.segre_quot(g, N, d_L, k)
    raise UsageError(f"unknown kind {kind!r}")


def cmd_segre(args) -> int:
    value = compute_segre(args)
    fmt = args.format or "plain"
    if fmt == "json":
        text = json.dumps({"kind": args.kind, "k": args.k, "value": str(value), "sign": value.sign}) + "\n"
    elif fmt == "csv":
        text = f"kind,k,value,sign\n{args.kind},{args.k},{value},{value.sign}\n"
    else:
        text = f"{value}\n"
    _emit(text, args.output)
    return EXIT_OK


# ------------------------------------------------------------------ series

def cmd_series(args) -> int:
    kind = args.kind
    k_max = _need(args, "k_max")[0]
    if k_max < 0:
        raise UsageError("--k-max must be non-negative")
    if kind in ("k3", "enriques"):
        gk = GeometryKind.parse(kind)
        r, c1_sq, c2 = _need(args, "r", "c1_sq", "c2")
        s = surface.segre_series(gk, SurfaceBundle.on(gk, r, c1_sq, c2), k_max)
    elif kind == "curve":
        g, r, d = _need(args, "g", "r", "d")
        s = curve.segre_curve_series(curve.CurveBundle(g, r, d), k_max)
        # print the signed values, as ``segre --kind curve`` does
        s = TruncatedSeries(tuple(c * (-1) ** i for i, c in enumerate(s.coeffs)))
    elif kind == "general-rank1":
        L_sq, L_dot_K, K_sq, chi_O = _need(args, "L_sq", "L_dot_K", "K_sq", "chi_O")
        s = surface.lehn_series(L_sq, chi_O, L_dot_K, K_sq, k_max)
    else:
        raise UsageError(f"series is available for k3, enriques, curve, general-rank1; not {kind!r}")
    values = [format_rational(c) for c in s.coeffs]
    fmt = args.format or "plain"
    if fmt == "json":
        text = json.dumps([{"k": i, "value": v} for i, v in enumerate(values)]) + "\n"
    elif fmt == "csv":
        text = "k,value\n" + "".join(f"{i},{v}\n" for i, v in enumerate(values))
    else:
        text = ", ".join(values) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# -------------------------------------------------------------------- scan

# CLI option -> scanner keyword, per scan kind
SCAN_AXES = {
    "enriques": ("r", "k", "chi_margin", "delta"),
    "k3": ("r", "k", "delta", "chi_margin"),
    "abelian": ("r", "k", "delta", "chi_margin"),
    "blowup": ("h", "ell", "k"),
    "general-type": ("K_sq", "chi_O", "k", "L_dot_K", "chi_L"),
    "curve": ("g", "r", "d", "k"),
    "quot": ("g", "N", "d_L", "k"),
    "lemma": ("m", "n", "p"),
}
ALL_AXES = sorted({a for axes in SCAN_AXES.values() for a in axes})


def cmd_scan(args) -> int:
    kind = "lemma" if args.lemma41 else args.kind
    if kind is None:
        raise UsageError("scan needs --kind or --lemma41")
    if kind not in SCANNERS:
        raise UsageError(f"unknown scan kind {kind!r}; choose from {', '.join(SCANNERS)}")
    axes = SCAN_AXES[kind]
    stray = [a for a in ALL_AXES if getattr(args, "axis_" + a) is not None and a not in axes]
    if stray:
        raise UsageError(f"scan --kind {kind} does not take " + ", ".join("--" + a.replace("_", "-") for a in stray))
    kwargs = {}
    for a in axes:
        raw = getattr(args, "axis_" + a)
        if raw is None:
            continue
        vals = parse_range(raw, integral=not (a == "delta" and kind == "enriques"))
        if not vals:
            raise EmptyInput(f"--{a.replace('_', '-')} {raw} is empty")
        kwargs[a + "_range"] = vals
    workers = args.workers if args.workers is not None else 1
    if workers < 1:
        raise UsageError("--workers must be positive")
    fmt = args.format or "json"
    _check_writable(args.output)
    report = SCANNERS[kind](workers=workers, seed=args.seed, timestamp=bool(args.timestamp), **kwargs)
    if not report.rows:
        raise EmptyInput("the scan grid is empty")
    if fmt == "json":
        _emit(report.to_json(), args.output)
    elif fmt == "csv":
        _emit(report.to_csv(), args.output)
    else:
        lines = [report.summary_line()]
        for name in report.criteria:
            for row in report.counterexamples(name)[: args.show]:
                d = report.row_dict(row)
                ins = ", ".join(f"{c}={d[c]}" for c in report.columns)
                lines.append(f"  {name}: {ins} value={d['value']}")
        _emit("\n".join(lines) + "\n", args.output)
    if args.output is not None or fmt != "plain":
        out = sys.stderr if args.output is None else sys.stdout
        print(report.summary_line(), file=out)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    names = None
    if args.only:
        names = [n.strip() for chunk in args.only for n in chunk.split(",") if n.strip()]
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check(s) {', '.join(unknown)}; available: {', '.join(CHECKS)}")
    results = run_checks(names)
    if (args.format or "plain") == "json":
        text = json.dumps([{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results], indent=1) + "\n"
    else:
        text = "".join(r.line() + "\n" for r in results)
    _emit(text, args.output)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- examples

FAMILIES = ("lazarsfeld-mukai", "ulrich", "semihomogeneous", "blowup-line-bundle",
            "k3-line-bundle", "abelian-line-bundle", "enriques-small")


def build_family(args) -> list:
    fam = args.family
    k = args.k if args.k is not None else 1
    if fam == "lazarsfeld-mukai":
        g, d, r = _need(args, "g", "d", "r")
        return [families.family_lazarsfeld_mukai(g, d, r, k, twisted=not args.untwisted)]
    if fam == "ulrich":
        a, h = _need(args, "a", "h")
        return [families.family_ulrich(a, h, k, m=args.m if args.m is not None else 1)]
    if fam == "semihomogeneous":
        a, b = _need(args, "a", "b")
        return [families.family_semihomogeneous(a, b, k)]
    if fam == "blowup-line-bundle":
        h, ell = _need(args, "h", "ell")
        return [families.family_blowup_line_bundle(h, ell, k)]
    if fam == "k3-line-bundle":
        g, n = _need(args, "g", "n")
        return [families.family_k3_line_bundle(g, n, k)]
    if fam == "abelian-line-bundle":
        h, n = _need(args, "h", "n")
        return [families.family_abelian_line_bundle(h, n, k)]
    raise UsageError(f"unknown family {fam!r}")


def cmd_examples(args) -> int:
    fmt = args.format or "plain"
    if args.family == "enriques-small":
        rows = [{"k": k, "chi": chi, "L_sq": L_sq, "segre": str(v), "sign": v.sign}
                for k, chi, L_sq, v in families.enriques_small_cases()]
    else:
        rows = [rep.as_dict() for rep in build_family(args)]
    if fmt == "json":
        text = json.dumps(rows, indent=1) + "\n"
    elif fmt == "csv":
        flat = [_flatten(r) for r in rows]
        names: list = []
        for r in flat:
            names.extend(n for n in r if n not in names)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        text = buf.getvalue()
    else:
        text = "".join(_plain_family(r) for r in rows)
    _emit(text, args.output)
    return EXIT_OK


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for key, v in d.items():
        name = f"{prefix}{key}"
        if isinstance(v, dict):
            out.update(_flatten(v, name + "."))
        elif isinstance(v, list):
            out[name] = ";".join(map(str, v))
        else:
            out[name] = v
    return out


def _plain_family(row: dict) -> str:
    if "family" not in row:
        return f"k={row['k']} chi={row['chi']} L^2={row['L_sq']} segre={row['segre']} ({row['sign']})\n"
    lines = [f"{row['family']} {row['params']}"]
    if row["rejected"]:
        lines.append(f"  rejected: {row['rejected']}")
        return "\n".join(lines) + "\n"
    lines.append(f"  bundle: {row.get('bundle')}  chi={row['chi']}  delta={row['delta']}")
    for title, key in (("hypotheses", "hypotheses"), ("checks", "checks")):
        if row[key]:
            lines.append(f"  {title}: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in row[key].items()))
    if "verdict" in row:
        v = row["verdict"]
        lines.append(f"  segre={v['segre']} ({v['sign']})  theorem flags: "
                     + ", ".join(f"{k}={'yes' if b else 'no'}" for k, b in v["flags"].items()))
    lines.append(f"  {'PASS' if row['passes'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option values; command-line options win")
    common.add_argument("--format", choices=("json", "csv", "plain"), default=None)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="segrelab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def numeric(sp, *names, kind=int):
        for n in names:
            sp.add_argument("--" + n.replace("_", "-"), dest=n, type=kind, default=None)

    s = sub.add_parser("segre", parents=[common], help="one top Segre integral")
    s.add_argument("--kind", choices=SEGRE_KINDS, default=None)
    numeric(s, "r", "k", "c1_sq", "c2", "h", "ell", "L_sq", "L_dot_K", "K_sq", "chi_O",
            "m", "n", "p", "g", "d", "N", "d_L")
    numeric(s, "chi", "delta", kind=_rational)
    s.set_defaults(func=cmd_segre)

    s = sub.add_parser("series", parents=[common], help="generating series coefficients")
    s.add_argument("--kind", choices=("k3", "enriques", "curve", "general-rank1"), default=None)
    numeric(s, "r", "c1_sq", "c2", "g", "d", "L_sq", "L_dot_K", "K_sq", "chi_O", "k_max")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("scan", parents=[common], help="parameter-grid scan")
    s.add_argument("--kind", choices=tuple(SCANNERS), default=None)
    s.add_argument("--lemma41", action="store_true", default=None,
                   help="scan the coefficient-positivity lemma over (m, n, p)")
    for a in ALL_AXES:
        s.add_argument("--" + a.replace("_", "-"), dest="axis_" + a, default=None, metavar="LO..HI")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--timestamp", action="store_true", default=None,
                   help="record the run time in the metadata (breaks byte-identical output)")
    s.add_argument("--show", type=int, default=5, help="counterexamples listed in plain format")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("verify", parents=[common], help="run the invariant checks")
    s.add_argument("--only", action="append", default=None, metavar="NAME[,NAME]",
                   help="checks: " + ", ".join(CHECKS))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("examples", parents=[common], help="numerics of named families")
    s.add_argument("family", choices=FAMILIES)
    numeric(s, "g", "d", "r", "k", "a", "h", "m", "b", "ell", "n")
    s.add_argument("--untwisted", action="store_true", help="Lazarsfeld-Mukai bundle without the twist")
    s.set_defaults(func=cmd_examples)
    return p


def _apply_config(args, parser: argparse.ArgumentParser) -> None:
    if not args.config:
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("--config must hold a JSON object")
    for key, value in cfg.items():
        key = key.replace("-", "_")
        if key in ("command", "func", "config"):
            continue
        dest = key
        if args.command == "scan" and key in ALL_AXES:
            dest = "axis_" + key
        if not hasattr(args, dest):
            raise UsageError(f"config key {key!r} is not an option of {args.command}")
        if getattr(args, dest) is None:
            if dest.startswith("axis_") and isinstance(value, list):
                value = ",".join(str(v) for v in value)
            elif dest in ("chi", "delta"):
                value = Fraction(str(value))
            setattr(args, dest, value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(fix_negative_values(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        _apply_config(args, parser)
        if args.command in ("segre", "series") and args.kind is None:
            raise UsageError(f"{args.command} needs --kind")
        _check_writable(args.output)
        return args.func(args)
    except UsageError as e:
        print(f"segrelab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyInput as e:
        print(f"segrelab: empty input: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except (SegreLabError, ValueError) as e:
        print(f"segrelab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"segrelab: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
