"""Command-line entry point.

Exit status: 0 success, 1 invalid configuration, 2 bad data, 3 a checked
identity or inequality failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .ap import BUILTIN, CurveModel, angle_sequences, ingest_eigenvalues
from .ap.traces import compute_traces, good_primes
from .cg import ContextBatch, cg_norm_sides, cg_product_sides, a_D, a_D_square, degree_of_D
from .errors import (
    CacheCorruptionError,
    DataIntegrityError,
    DomainError,
    EmptySampleError,
    ParseError,
    TruncationError,
    ValidationError,
)
from .majorant import coefficient_constants, majorant_pair, sandwich_violation
from .measure import Interval
from .pnt import coeff_partial_sum, pnt_bound
from .sato_tate import BoundProfile, effective_bound, joint_discrepancy, sandwich_check
from .svg import loglog_svg

DEFAULT_SEED = 20240917
# options that change how a result is computed or delivered but never its content
NOT_ECHOED = {"workers", "cache_dir", "no_cache", "output", "svg", "out_dir", "func"}
DATA_ERRORS = (DataIntegrityError, ParseError, ValidationError, CacheCorruptionError, TruncationError, EmptySampleError)


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


# --- value parsing -------------------------------------------------------------


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _count(text: str) -> int:
    v = _number(text)
    if v != int(v) or v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(v)


def _int_list(text: str) -> list[int]:
    return [_count(t) for t in text.split(",") if t.strip()]


def _interval(text: str) -> Interval:
    try:
        return Interval.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _workers(text: str):
    if text == "auto":
        return "auto"
    return _count(text)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


# --- output --------------------------------------------------------------------


@dataclass
class Table:
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    failed: str | None = None


def _echo(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in NOT_ECHOED or v is None:
            continue
        if isinstance(v, list):
            v = [str(x) if isinstance(x, Interval) else x for x in v]
        elif isinstance(v, Interval):
            v = str(v)
        out[k] = v
    return out


def render(table: Table, args) -> str:
    config = _echo(args)
    if args.format == "json":
        doc = {
            "version": __version__,
            "config": config,
            "notes": table.notes,
            "rows": [{c: r.get(c, "") for c in table.columns} for r in table.rows],
        }
        return json.dumps(doc, indent=2, sort_keys=False, default=_fmt) + "\n"
    buf = io.StringIO()
    buf.write(f"# stlab {__version__} {args.command}\n")
    buf.write("# config " + json.dumps(config, sort_keys=True, default=_fmt) + "\n")
    for note in table.notes:
        buf.write(f"# {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(r.get(c, "")) for c in table.columns])
    return buf.getvalue()


def _write(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


# --- shared loaders --------------------------------------------------------------


def _curve(text: str) -> CurveModel:
    try:
        return CurveModel.parse(text)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _profile(args, log_q_default: float | None = None) -> BoundProfile:
    base = {}
    if args.profile not in (None, "default"):
        try:
            base = json.loads(Path(args.profile).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read profile {args.profile}: {exc}") from None
    for key, attr in (("c_main", "c_main"), ("c_cdt", "c_cdt"), ("c_st", "c_st"),
                      ("field_degree", "field_degree"), ("y_max", "y"), ("log_Q", "log_q")):
        v = getattr(args, attr, None)
        if v is not None:
            base[key] = v
    if "log_Q" not in base and log_q_default is not None:
        base["log_Q"] = log_q_default
    try:
        return BoundProfile(**base)
    except (TypeError, DomainError) as exc:
        raise ConfigError(f"invalid profile: {exc}") from None


def _sources(args, limit: int):
    """Two sequences from --curve/--curve2 or --input/--input2, plus log Q."""
    seqs, conductors = [None, None], [None, None]
    curves = []
    for slot, (cflag, iflag) in enumerate((("curve", "input"), ("curve2", "input2"))):
        ctext, itext = getattr(args, cflag, None), getattr(args, iflag, None)
        if (ctext is None) == (itext is None):
            raise ConfigError(f"give exactly one of --{cflag} and --{iflag}")
        if itext is not None:
            seq = ingest_eigenvalues(itext)
            seqs[slot] = seq
            conductors[slot] = seq.meta.get("conductor_norm")
        else:
            curves.append((slot, _curve(ctext)))
    if curves:
        got = angle_sequences([c for _, c in curves], limit, args.workers,
                              args.cache_dir, not args.no_cache)
        for (slot, c), seq in zip(curves, got):
            seqs[slot] = seq
            conductors[slot] = c.conductor_estimate
    log_q = None
    if all(conductors):
        log_q = math.log(conductors[0]) + math.log(conductors[1])
    return seqs[0], seqs[1], log_q


def _checkpoints(args) -> list[int]:
    if args.checkpoints:
        xs = sorted(set(args.checkpoints))
        if xs[-1] > args.xmax:
            raise ConfigError(f"checkpoint {xs[-1]} exceeds --xmax {args.xmax}")
        return xs
    xs, x = [], 1000
    while x < args.xmax:
        xs.append(x)
        x *= 10
    return xs + [args.xmax]


# --- commands --------------------------------------------------------------------


def cmd_ap(args) -> Table:
    c = _curve(args.curve)
    ps = good_primes(c, args.xmax)
    a = compute_traces([c], ps, args.workers)[0]
    t = Table(["prime", "a_p", "normalized_trace"])
    for p, ap in zip(ps.tolist(), a.tolist()):
        t.rows.append({"prime": p, "a_p": ap, "normalized_trace": ap / (2.0 * math.sqrt(p))})
    t.notes.append(f"source curve {c.label} coefficients {list(c.coeffs)} bad primes {sorted(c.bad_primes)}")
    return t


def _angle_table(seq) -> Table:
    t = Table(["prime", "angle"])
    t.rows = [{"prime": p, "angle": th} for p, th in seq.entries]
    t.notes.append(f"source {seq.source}")
    return t


def cmd_angles(args) -> Table:
    c = _curve(args.curve)
    (seq,) = angle_sequences([c], args.xmax, args.workers, args.cache_dir, not args.no_cache)
    return _angle_table(seq)


def cmd_ingest(args) -> Table:
    seq = ingest_eigenvalues(args.input)
    t = _angle_table(seq)
    if seq.meta:
        t.notes.append("meta " + json.dumps(seq.meta, sort_keys=True))
    return t


REPORT_COLUMNS = ["x", "interval_lo", "interval_hi", "interval2_lo", "interval2_hi",
                  "empirical", "reference", "abs_error", "effective_bound", "primes"]


def _svg(args, rows):
    if not getattr(args, "svg", None):
        return
    err = [(r["x"], r["abs_error"]) for r in rows]
    bnd = [(r["x"], r["effective_bound"]) for r in rows if r["effective_bound"] != ""]
    Path(args.svg).write_text(
        loglog_svg({"abs_error": err, "effective_bound": bnd}, "Sato-Tate discrepancy", "x"),
        encoding="utf-8",
    )


def cmd_discrepancy(args) -> Table:
    from .sato_tate import discrepancy

    c = _curve(args.curve)
    (seq,) = angle_sequences([c], args.xmax, args.workers, args.cache_dir, not args.no_cache)
    profile = _profile(args, math.log(c.conductor_estimate) if c.conductor_estimate > 1 else None)
    t = Table(list(REPORT_COLUMNS))
    for I in args.interval or [Interval(0.0, math.pi / 2)]:
        for x in _checkpoints(args):
            t.rows.append(discrepancy(seq, I, x, profile).row())
    t.notes.append("Q approximated by the conductor; profile " + json.dumps(profile.as_dict(), sort_keys=True))
    _svg(args, t.rows)
    return t


def cmd_joint(args) -> Table:
    seq, seq2, log_q = _sources(args, args.xmax)
    profile = _profile(args, log_q)
    cols = list(REPORT_COLUMNS)
    if args.sandwich_M:
        cols += ["M", "t_minus_sum", "count", "t_plus_sum", "margin_lower", "margin_upper"]
    t = Table(cols)
    I = args.interval or [Interval(0.0, math.pi / 2)]
    I2 = args.interval2 or I
    if len(I) != len(I2):
        raise ConfigError("--interval and --interval2 must be given the same number of times")
    for a, b in zip(I, I2):
        polys = {M: majorant_pair(a, b, M) for M in (args.sandwich_M or [])}
        for x in _checkpoints(args):
            base = joint_discrepancy(seq, seq2, a, b, x, profile).row()
            if not polys:
                t.rows.append(base)
            for M, (lo, hi) in polys.items():
                s = sandwich_check(seq, seq2, lo, hi, x)
                t.rows.append({**base, "M": M, "t_minus_sum": s.lower, "count": s.count,
                               "t_plus_sum": s.upper, "margin_lower": s.margin_lower,
                               "margin_upper": s.margin_upper})
    t.notes.append("Q approximated by the conductor product; profile "
                   + json.dumps(profile.as_dict(), sort_keys=True))
    _svg(args, t.rows)
    return t


def cmd_majorant(args) -> Table:
    rng = np.random.default_rng(args.seed)
    grid = np.linspace(0.0, math.pi, args.grid)
    t = Table(["M", "interval_lo", "interval_hi", "interval2_lo", "interval2_hi",
               "K", "K_main", "max_violation"])
    if args.interval:
        pairs = list(zip(args.interval, args.interval2 or args.interval))
    else:
        pairs = []
        for _ in range(args.pairs):
            a, b = np.sort(rng.uniform(0.0, math.pi, 2)), np.sort(rng.uniform(0.0, math.pi, 2))
            pairs.append((Interval(*a), Interval(*b)))
    worst = 0.0
    for M in args.M:
        for I, I2 in pairs:
            lo, hi = majorant_pair(I, I2, M)
            k = [coefficient_constants(T) for T in (lo, hi)]
            v = sandwich_violation(lo, hi, grid, grid)
            worst = max(worst, v)
            t.rows.append({"M": M, "interval_lo": I.lo, "interval_hi": I.hi,
                           "interval2_lo": I2.lo, "interval2_hi": I2.hi,
                           "K": max(c.K for c in k), "K_main": max(c.K_main for c in k),
                           "max_violation": v})
    if worst > 1e-9:
        t.notes.append(f"SANDWICH VIOLATION {worst!r}")
        t.failed = f"grid sandwich violated by {worst!r}"
    return t


def cmd_cg_verify(args) -> Table:
    rng = np.random.default_rng(args.seed)
    t = Table(["check", "m", "n", "samples", "max_residual", "min_value", "status"])
    tol = 1e-9
    failures = []

    def row(check, m, n, samples, resid, minv=""):
        ok = resid <= tol and (minv == "" or minv >= -tol)
        if not ok:
            failures.append(f"{check} ({m},{n})")
        t.rows.append({"check": check, "m": m, "n": n, "samples": samples, "max_residual": resid,
                       "min_value": minv, "status": "pass" if ok else "FAIL"})

    small = ContextBatch.random(args.cg_samples, rng)
    for j in range(args.max_jk + 1):
        for k in range(args.max_jk + 1):
            lhs, rhs = cg_product_sides(small, j, k)
            row("product_rule", j, k, len(small), float(np.max(np.abs(lhs - rhs))))
        lhs, rhs = cg_norm_sides(small, j)
        row("norm_rule", j, j, len(small), float(np.max(np.abs(lhs - rhs))))
    big = ContextBatch.random(args.samples, rng)
    for m in range(args.max_mn + 1):
        for n in range(args.max_mn + 1):
            if max(m, n) < 1:
                continue
            total = a_D(big, m, n, convention=args.convention)
            sq = a_D_square(big, m, n)
            resid = float(max(np.max(np.abs(total - sq)), np.max(np.abs(total.imag))))
            row("a_D_square", m, n, len(big), resid, float(np.min(total.real)))
            led = degree_of_D(m, n, args.convention, strict=False)
            row("degree", m, n, 1, float(abs(led.total - led.expected)), "")
    t.notes.append(f"convention {args.convention}")
    if failures:
        t.failed = "identity checks failed: " + ", ".join(failures)
    return t


def cmd_pnt(args) -> Table:
    seq, seq2, log_q = _sources(args, args.xmax)
    profile = _profile(args, log_q)
    t = Table(["m", "n", "x", "re_sum", "im_sum", "primes", "normalized", "bound_ratio"])
    xs = _checkpoints(args)
    for m in range(args.max_mn + 1):
        for n in range(args.max_mn + 1):
            if (m, n) == (0, 0) or (args.min_mn and min(m, n) < args.min_mn):
                continue
            series = coeff_partial_sum(seq, seq2, m, n, xs)
            for cp in series.checkpoints:
                ratio = pnt_bound(profile, m, n, 0.0, cp.x) / cp.x if cp.x >= 2 else ""
                x = int(cp.x) if float(cp.x).is_integer() else cp.x
                t.rows.append({"m": m, "n": n, "x": x, "re_sum": cp.value.real, "im_sum": cp.value.imag,
                               "primes": cp.prime_count, "normalized": cp.normalized, "bound_ratio": ratio})
    t.notes.append("profile " + json.dumps(profile.as_dict(), sort_keys=True))
    return t


def cmd_bound(args) -> Table:
    profile = _profile(args)
    t = Table(["x", "log_x", "effective_bound", "M", "log_x_threshold", "in_range"])
    if args.log_x:
        points = [("", L) for L in args.log_x]
    else:
        points = [(x, math.log(x)) for x in _checkpoints(args)]
    for x, L in points:
        b = effective_bound(profile, log_x=L)
        t.rows.append({"x": x, "log_x": L, "effective_bound": b.value, "M": b.M,
                       "log_x_threshold": b.log_x_threshold, "in_range": b.in_range})
    t.notes.append("profile " + json.dumps(profile.as_dict(), sort_keys=True))
    return t


def cmd_report(args) -> Table:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    joint = cmd_joint(args)
    (out / "joint.csv").write_text(render(joint, _with(args, "joint")), encoding="utf-8")
    pnt = cmd_pnt(args)
    (out / "pnt.csv").write_text(render(pnt, _with(args, "pnt")), encoding="utf-8")
    err = [(r["x"], r["abs_error"]) for r in joint.rows]
    bnd = [(r["x"], r["effective_bound"]) for r in joint.rows]
    (out / "joint.svg").write_text(loglog_svg({"abs_error": err, "effective_bound": bnd},
                                              "joint Sato-Tate discrepancy", "x"), encoding="utf-8")
    summary = Table(["artifact", "rows"])
    summary.rows = [{"artifact": "joint.csv", "rows": len(joint.rows)},
                    {"artifact": "pnt.csv", "rows": len(pnt.rows)},
                    {"artifact": "joint.svg", "rows": len(err)}]
    return summary


def _with(args, command):
    ns = argparse.Namespace(**vars(args))
    ns.command = command
    return ns


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="write here instead of standard output")
    common.add_argument("--workers", type=_workers, default=1, help="thread count or 'auto'")
    common.add_argument("--cache-dir", help="angle cache directory (default $STLAB_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    prof = argparse.ArgumentParser(add_help=False)
    prof.add_argument("--profile", default="default", help="'default' or a JSON file of constants")
    prof.add_argument("--c-main", type=_number)
    prof.add_argument("--c-cdt", type=_number)
    prof.add_argument("--c-st", type=_number)
    prof.add_argument("--field-degree", type=int)
    prof.add_argument("--y", type=int, choices=(0, 2))
    prof.add_argument("--log-q", type=_number, help="log of the conductor product Q")

    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--xmax", type=_count, required=True)
    rng.add_argument("--checkpoints", type=_int_list, help="comma-separated cutoffs (default powers of 10)")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--curve", help="built-in label or a1,a2,a3,a4,a6")
    pair.add_argument("--curve2")
    pair.add_argument("--input", help="normalized-trace CSV instead of --curve")
    pair.add_argument("--input2")

    p = _Parser(prog="stlab", description="Sato-Tate statistics for pairs of Satake-angle sequences.")
    p.add_argument("--version", action="version", version=f"stlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ap", parents=[common, rng], help="traces a_p of one curve")
    s.add_argument("--curve", required=True)
    s.set_defaults(func=cmd_ap)

    s = sub.add_parser("angles", parents=[common, rng], help="Satake angles of one curve")
    s.add_argument("--curve", required=True)
    s.set_defaults(func=cmd_angles)

    s = sub.add_parser("ingest", parents=[common], help="validate a normalized-trace CSV")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("discrepancy", parents=[common, rng, prof], help="single-curve discrepancy")
    s.add_argument("--curve", required=True)
    s.add_argument("--interval", type=_interval, action="append")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_discrepancy)

    s = sub.add_parser("joint", parents=[common, rng, prof, pair], help="joint discrepancy of two sources")
    s.add_argument("--interval", type=_interval, action="append")
    s.add_argument("--interval2", type=_interval, action="append")
    s.add_argument("--sandwich-M", type=_int_list, help="also run the majorant sandwich at these degrees")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_joint)

    s = sub.add_parser("majorant-check", parents=[common], help="certify majorant polynomials")
    s.add_argument("--M", type=_int_list, default=[4, 8, 16, 32])
    s.add_argument("--pairs", type=_count, default=20)
    s.add_argument("--grid", type=_count, default=300)
    s.add_argument("--interval", type=_interval, action="append")
    s.add_argument("--interval2", type=_interval, action="append")
    s.set_defaults(func=cmd_majorant)

    s = sub.add_parser("cg-verify", parents=[common], help="check coefficient identities")
    s.add_argument("--max-mn", type=int, default=5)
    s.add_argument("--max-jk", type=int, default=6)
    s.add_argument("--samples", type=_count, default=100_000)
    s.add_argument("--cg-samples", type=_count, default=1000)
    s.add_argument("--convention", choices=("weyl", "literal"), default="weyl")
    s.set_defaults(func=cmd_cg_verify)

    s = sub.add_parser("pnt", parents=[common, rng, prof, pair], help="coefficient partial sums over primes")
    s.add_argument("--max-mn", type=int, default=3)
    s.add_argument("--min-mn", type=int, default=0, help="skip pairs with min(m, n) below this")
    s.set_defaults(func=cmd_pnt)

    s = sub.add_parser("bound", parents=[common, prof], help="tabulate the effective bound")
    s.add_argument("--xmax", type=_count, default=10**6)
    s.add_argument("--checkpoints", type=_int_list)
    s.add_argument("--log-x", type=_number, action="append", help="evaluate at x = exp(value)")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("report", parents=[common, rng, prof, pair], help="joint, pnt and plot in one go")
    s.add_argument("--out-dir", required=True)
    s.add_argument("--interval", type=_interval, action="append")
    s.add_argument("--interval2", type=_interval, action="append")
    s.add_argument("--sandwich-M", type=_int_list)
    s.add_argument("--max-mn", type=int, default=3)
    s.add_argument("--min-mn", type=int, default=0)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "xmax", 5) < 5:
            raise ConfigError("--xmax must be at least 5")
        table = args.func(args)
        _write(render(table, args), args.output)
        failed = table.failed
        if failed:
            print(f"stlab: check failed: {failed}", file=sys.stderr)
            return 3
        return 0
    except ConfigError as exc:
        print(f"stlab: configuration error: {exc}", file=sys.stderr)
        return 1
    except DATA_ERRORS as exc:
        print(f"stlab: data error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"stlab: assertion failed: {exc}", file=sys.stderr)
        return 3
    except (DomainError, OSError) as exc:
        print(f"stlab: configuration error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
