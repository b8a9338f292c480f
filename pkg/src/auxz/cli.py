"""auxz command line: grid checks, point evaluations, zero scans and the threshold solver.

Exit status is 0 when every record passes, 2 when any record fails (or a zero
census disagrees with the argument-principle count), and 1 on usage or
domain errors.  Reports are deterministic: the same command line at the same
precision yields byte-identical output unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import mpmath as mp

from . import __version__
from .auxiliary import (
    r_eval_with_error,
    r_minus_one_bound,
    rs_bound_cases,
    verify_r_minus_one,
    verify_rzeta_bound,
)
from .bounds import (
    LOG_ARGUMENTS,
    PAPER_TAU0,
    corollary_rhs,
    final_inequality_check,
    mainbound_rhs,
    rect32_check,
    rect_boundary_check_s3,
    solve_threshold,
    vdc_d2_bound,
    vdc_d3_bound,
    verify_domination,
    verify_lemma1,
    verify_vdc2,
    verify_vdc3,
)
from .errors import BoundaryZeroError, ConvergenceError, DomainError, SizeError
from .numerics import PrecisionCtx, StripPoint, zeta_with_error
from .records import AxisGrid, CheckRecord, GridSpec, Rectangle, make_record
from .sums import SUP_SUM_CAP, ZETA_SUM_CAP, maclaurin_tail_bound, verify_maclaurin, zeta_sum
from .zeros import count_with_rect, find_zeros

log = logging.getLogger("auxz")

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2
PREC_ENV = "AUXZ_PREC_BITS"
DEFAULT_BITS = 128
THRESHOLD_BITS = 256
MAX_SCAN_T = 10_000
CSV_COLUMNS = ("tag", "sigma", "t", "tau", "lhs", "rhs", "margin", "pass")

TAGS = (
    "rzeta",
    "rminus1",
    "maclaurin",
    "vdc2",
    "vdc3",
    "lemma1",
    "rect32",
    "s3-boundary",
    "domination",
    "final",
)

# axis name -> default values, parsed by _value at 320 bits
_DEFAULT_GRIDS = {
    "rzeta": {
        "sigma": ["0", "0.25", "0.5", "0.75", "1", "1.25", "1.5", "1.75", "2"],
        "t": ["3*pi*1.01", "15", "30", "60", "120", "250", "500"],
    },
    "rminus1": {"sigma": ["2", "3", "4", "6"], "t": ["32*pi", "150", "500", "1000"]},
    "maclaurin": {
        "sigma": ["0.5", "0.75", "1", "1.5", "2"],
        "t": ["10", "100", "1000"],
        "r": ["0.5", "1", "2"],
    },
    "vdc2": {"x": ["10", "50", "100", "500", "1000"], "t": ["1e3", "1e4", "1e5"]},
    "vdc3": {"x": ["10", "50", "100", "500", "1000"], "t": ["1e3", "1e4", "1e5"]},
    "lemma1": {"sigma": [f"{k / 10:.1f}" for k in range(11, 41)], "t": ["1", "10", "100", "1000"]},
    "rect32": {"t": ["2707"]},
    "s3-boundary": {"sigma": ["1.5", "1.75", "2"], "t": ["2707", "1e4"]},
    "domination": {
        "sigma": ["1", "1.1", "1.2", "1.3", "1.4", "1.5"],
        "tau": ["20.1", "1e2", "1e4", "1e8", "1e16", "1e32", "1e64"],
    },
    "final": {"sigma": ["1"], "tau": ["1e65", "1e66", "1e67", "1e68", "1e69", "1e70"]},
}

_AXES = ("sigma", "t", "x", "tau", "r")


def _value(text: str) -> mp.mpf:
    """A decimal number or a product of numbers and ``pi`` such as ``3*pi*1.01``."""
    with mp.workprec(320):
        v = mp.mpf(1)
        for factor in text.strip().split("*"):
            v *= mp.pi if factor.strip() == "pi" else mp.mpf(factor.strip())
        return v


def _axis(text: str) -> tuple:
    """A single value, a comma list, or ``lo:hi:count[:log]``."""
    try:
        if ":" in text:
            with mp.workprec(320):
                return tuple(AxisGrid.parse(text).values())
        return tuple(_value(v) for v in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad grid {text!r}: {exc}") from None


def build_grid(tag: str, overrides: dict[str, str | None]) -> GridSpec:
    defaults = _DEFAULT_GRIDS[tag]
    for name, text in overrides.items():
        if text is not None and name not in defaults:
            raise DomainError(f"--{name} is not an axis of check {tag!r} (axes: {', '.join(defaults)})")
    axes = {}
    for name, values in defaults.items():
        text = overrides.get(name)
        axes[name] = _axis(text) if text is not None else tuple(_value(v) for v in values)
    return GridSpec(axes)


# --------------------------------------------------------------------------
# per-tag validation and evaluation


def _validate(tag: str, p: dict) -> str | None:
    """Raise DomainError for an invalid point; return a reason string if the point is out of scope."""
    if "t" in p and not p["t"] > 0:
        raise DomainError(f"{tag}: t must be positive (got {mp.nstr(p['t'], 15)})")
    tau = p["t"] / (2 * mp.pi) if "t" in p else p.get("tau")
    if tag == "rzeta":
        if not rs_bound_cases(p["sigma"], tau):
            return "no bound case applies"
    elif tag == "rminus1":
        r_minus_one_bound(p["sigma"], tau)
    elif tag == "maclaurin":
        maclaurin_tail_bound(p["sigma"], tau, p["r"])
        if tau ** p["r"] > ZETA_SUM_CAP:
            raise SizeError(f"maclaurin: tau**r exceeds {ZETA_SUM_CAP}")
    elif tag in ("vdc2", "vdc3"):
        vdc_d2_bound(p["x"], p["t"])
        if p["x"] > SUP_SUM_CAP:
            raise SizeError(f"{tag}: X exceeds {SUP_SUM_CAP}")
        if tag == "vdc3":
            if not (p["x"] > 1 and tau > 1):
                return "exponent alpha undefined"
            alpha = mp.log(p["x"]) / mp.log(tau)
            if not vdc_d3_bound(alpha, tau).valid:
                return "third-derivative bound not valid here"
    elif tag == "lemma1":
        if not p["sigma"] > 1:
            raise DomainError(f"lemma1 needs sigma > 1 (got {mp.nstr(p['sigma'], 15)})")
    elif tag == "s3-boundary":
        if not (mp.mpf(1.5) <= p["sigma"] <= 2 and p["t"] >= 2707):
            raise DomainError("s3-boundary needs 3/2 <= sigma <= 2 and t >= 2707")
    elif tag == "domination":
        if not (1 <= p["sigma"] <= mp.mpf(1.5)):
            raise DomainError("domination needs 1 <= sigma <= 3/2")
        mainbound_rhs(p["sigma"], tau)
        corollary_rhs(tau)
    elif tag == "final":
        corollary_rhs(tau)
    return None


def _evaluate(job) -> list[CheckRecord]:
    tag, p, bits, log_of = job
    ctx = PrecisionCtx(bits)
    if tag == "rzeta":
        pt = StripPoint(p["sigma"], p["t"])
        return [verify_rzeta_bound(pt, ctx, case) for case in rs_bound_cases(pt.sigma, pt.tau)]
    if tag == "rminus1":
        return [verify_r_minus_one(StripPoint(p["sigma"], p["t"]), ctx)]
    if tag == "maclaurin":
        return [verify_maclaurin(StripPoint(p["sigma"], p["t"]), p["r"], ctx)]
    if tag == "vdc2":
        return [verify_vdc2(p["x"], p["t"], ctx)]
    if tag == "vdc3":
        rec = verify_vdc3(p["x"], p["t"], ctx)
        return [] if rec is None else [rec]
    if tag == "lemma1":
        return [verify_lemma1(p["sigma"], p["t"], ctx)]
    if tag == "rect32":
        return [rect32_check(p["t"], ctx)]
    if tag == "s3-boundary":
        return [rect_boundary_check_s3(p["t"], p["sigma"], ctx)]
    if tag == "domination":
        return [verify_domination(p["sigma"], p["tau"])]
    if tag == "final":
        return [final_inequality_check(p["tau"], p["sigma"], ctx, log_of=log_of)]
    raise DomainError(f"unknown check tag {tag!r}")


def run_jobs(jobs: list, workers: int) -> list[CheckRecord]:
    """Evaluate jobs, in a process pool if ``workers > 1``; results keep job order."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate, jobs))
    else:
        chunks = [_evaluate(j) for j in jobs]
    return [rec for chunk in chunks for rec in chunk]


# --------------------------------------------------------------------------
# serialisation


def _digits(bits: int) -> int:
    return max(15, min(50, int(bits * 0.30103) - 4))


def _num(v, digits: int):
    if v is None:
        return None
    if not isinstance(v, mp.mpf):
        with mp.workprec(320):
            v = mp.mpf(v)
    return mp.nstr(v, digits)


def _plain(v, digits: int):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, mp.mpf):
        return mp.nstr(v, digits)
    if isinstance(v, mp.mpc):
        return {"re": mp.nstr(v.real, digits), "im": mp.nstr(v.imag, digits)}
    if isinstance(v, (list, tuple)):
        return [_plain(x, digits) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x, digits) for k, x in v.items()}
    return str(v)


def record_dict(rec: CheckRecord, digits: int) -> dict:
    return {
        "tag": rec.tag,
        "sigma": _num(rec.sigma, digits),
        "t": _num(rec.t, digits),
        "tau": _num(rec.tau, digits),
        "lhs": _num(rec.lhs, digits),
        "rhs": _num(rec.rhs, digits),
        "margin": _num(rec.margin, digits),
        "err": mp.nstr(rec.err, 6),
        "pass": rec.passed,
        "params": _plain(rec.params, digits),
    }


def summarize(records: list[CheckRecord], digits: int) -> dict:
    passed = sum(1 for r in records if r.passed)
    return {
        "total": len(records),
        "passed": passed,
        "failed": len(records) - passed,
        "min_margin": _num(min(r.margin for r in records), digits) if records else None,
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report["records"] or "result" not in report:
        writer.writerow(CSV_COLUMNS)
        for r in report["records"]:
            writer.writerow([r[c] if c != "pass" else str(r["pass"]).lower() for c in CSV_COLUMNS])
    else:
        writer.writerow(("quantity", "value"))
        for key, val in _flatten(report["result"]):
            writer.writerow((key, val))
    return buf.getvalue()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


# --------------------------------------------------------------------------
# commands


def _base_report(args, bits: int, extra_config: dict | None = None) -> dict:
    config = {"command": args.command, "prec_bits": bits, "format": args.format}
    config.update(extra_config or {})
    return {"schema": SCHEMA, "tool": "auxz", "tool_version": __version__, "config": config}


def _finish(report: dict, records: list[CheckRecord], digits: int) -> int:
    records = sorted(records, key=CheckRecord.sort_key)
    report["records"] = [record_dict(r, digits) for r in records]
    report["summary"] = summarize(records, digits)
    return EXIT_OK if report["summary"]["failed"] == 0 else EXIT_FAIL


def cmd_check(args, bits: int) -> tuple[dict, int]:
    overrides = {name: getattr(args, name) for name in _AXES}
    grid = build_grid(args.tag, overrides)
    extra = {"tag": args.tag, "grid": grid.describe()}
    if args.tag == "final":
        extra["log_of"] = args.log_of
    report = _base_report(args, bits, extra)
    jobs, skipped = [], []
    with mp.workprec(320):
        for p in grid.points():
            reason = _validate(args.tag, p)
            if reason:
                skipped.append({**{k: mp.nstr(v, 15) for k, v in p.items()}, "reason": reason})
            else:
                jobs.append((args.tag, p, bits, args.log_of))
    log.info("check %s: %d points, %d out of scope", args.tag, len(jobs), len(skipped))
    records = run_jobs(jobs, args.workers)
    code = _finish(report, records, _digits(bits))
    report["skipped"] = skipped
    return report, code


def _point(args) -> mp.mpc:
    if args.sigma is None or args.t is None:
        raise DomainError("--sigma and --t are required")
    return mp.mpc(_value(args.sigma), _value(args.t))


def cmd_eval_r(args, bits: int) -> tuple[dict, int]:
    ctx = PrecisionCtx(bits)
    s = _point(args)
    value, err = r_eval_with_error(s, ctx)
    if err > ctx.target_eps:
        raise ConvergenceError(f"R not resolved to {mp.nstr(ctx.target_eps, 3)} (error {mp.nstr(err, 3)})")
    digits = _digits(bits)
    report = _base_report(args, bits, {"sigma": mp.nstr(s.real, 20), "t": mp.nstr(s.imag, 20)})
    code = _finish(report, [], digits)
    report["result"] = {"value": _plain(value, digits), "abs": _num(abs(value), digits), "err": mp.nstr(err, 6)}
    return report, code


def cmd_eval_zeta(args, bits: int) -> tuple[dict, int]:
    ctx = PrecisionCtx(bits)
    s = _point(args)
    value, err = zeta_with_error(s, ctx)
    digits = _digits(bits)
    report = _base_report(args, bits, {"sigma": mp.nstr(s.real, 20), "t": mp.nstr(s.imag, 20)})
    code = _finish(report, [], digits)
    report["result"] = {"value": _plain(value, digits), "abs": _num(abs(value), digits), "err": mp.nstr(err, 6)}
    return report, code


def cmd_zeta_sum(args, bits: int) -> tuple[dict, int]:
    ctx = PrecisionCtx(bits)
    if args.x is None:
        raise DomainError("--x is required")
    s = _point(args)
    x = _value(args.x)
    value = zeta_sum(x, s, ctx)
    digits = _digits(bits)
    report = _base_report(
        args, bits, {"x": mp.nstr(x, 20), "sigma": mp.nstr(s.real, 20), "t": mp.nstr(s.imag, 20)}
    )
    code = _finish(report, [], digits)
    report["result"] = {"value": _plain(value, digits), "terms": int(mp.floor(x))}
    return report, code


def _rect(text: str) -> Rectangle:
    parts = text.split(":")
    if len(parts) != 4:
        raise DomainError(f"--rect must be sigma_min:sigma_max:t_min:t_max, got {text!r}")
    try:
        return Rectangle(*(float(v) for v in parts))
    except ValueError as exc:
        raise DomainError(f"bad --rect {text!r}: {exc}") from None


def _zero_dict(z, digits: int) -> dict:
    return {
        "beta": _num(z.beta, digits),
        "gamma": _num(z.gamma, digits),
        "residual": mp.nstr(z.residual, 6),
        "multiplicity": z.multiplicity,
    }


def cmd_scan_zeros(args, bits: int) -> tuple[dict, int]:
    ctx = PrecisionCtx(bits)
    rect = _rect(args.rect)
    if rect.t_max > MAX_SCAN_T:
        raise DomainError(f"scan-zeros is limited to t <= {MAX_SCAN_T}")
    digits = _digits(bits)
    report = _base_report(args, bits, {"rect": [rect.sigma_min, rect.sigma_max, rect.t_min, rect.t_max]})
    count, used = count_with_rect(rect, ctx)
    result = {
        "rect_used": [used.sigma_min, used.sigma_max, used.t_min, used.t_max],
        "argument_count": count,
    }
    try:
        zeros = find_zeros(used, ctx)
    except ConvergenceError as exc:
        _finish(report, [], digits)
        result.update(census=None, conjecture=None, error=str(exc), zeros=[])
        report["result"] = result
        return report, EXIT_FAIL
    records = [
        make_record(
            "zero", z.beta, 1, z.residual, sigma=z.beta, t=z.gamma,
            residual=mp.nstr(z.residual, 6), multiplicity=z.multiplicity,
        )
        for z in zeros
    ]
    code = _finish(report, records, digits)
    census = sum(z.multiplicity for z in zeros)
    result.update(
        census=census,
        conjecture=all(z.beta < 1 for z in zeros),
        zeros=[_zero_dict(z, digits) for z in zeros],
    )
    report["result"] = result
    if census != count or not result["conjecture"]:
        code = EXIT_FAIL
    return report, code


def _threshold_dict(res, digits: int) -> dict:
    return {
        "log_of": res.log_of,
        "tau0": mp.nstr(res.tau0, digits),
        "t0": mp.nstr(res.t0, digits),
        "bracket": [mp.nstr(b, 20) for b in res.bracket],
        "digits_verified": res.digits_verified,
        "sign_changes": res.sign_changes,
        "iterations": res.iterations,
    }


def cmd_solve_threshold(args, bits: int) -> tuple[dict, int]:
    ctx = PrecisionCtx(bits)
    digits = _digits(bits)
    report = _base_report(args, bits, {"log_of": args.log_of})
    main = solve_threshold(ctx, log_of=args.log_of)
    other = solve_threshold(ctx, log_of=next(k for k in LOG_ARGUMENTS if k != args.log_of))
    with ctx.workprec(8):
        above = main.tau0 * (1 + mp.mpf(10) ** -9)
    records = [final_inequality_check(above, 1, ctx, log_of=args.log_of)]
    code = _finish(report, records, digits)
    result = _threshold_dict(main, digits)
    result["reference_tau0"] = PAPER_TAU0
    result["alternative"] = _threshold_dict(other, digits)
    report["result"] = result
    return report, code


COMMANDS = {
    "eval-r": cmd_eval_r,
    "eval-zeta": cmd_eval_zeta,
    "zeta-sum": cmd_zeta_sum,
    "check": cmd_check,
    "scan-zeros": cmd_scan_zeros,
    "solve-threshold": cmd_solve_threshold,
}


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec-bits", type=int, default=None,
                        help=f"working precision in bits (default ${PREC_ENV} or {DEFAULT_BITS}; "
                             f"{THRESHOLD_BITS} for solve-threshold)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timing", action="store_true", help="record wall time (makes reports non-reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")

    point = _Parser(add_help=False)
    point.add_argument("--sigma", help="real part")
    point.add_argument("--t", help="imaginary part")

    parser = _Parser(prog="auxz", description="Verify explicit bounds for zeta and the auxiliary function R(s).")
    parser.add_argument("--version", action="version", version=f"auxz {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("eval-r", parents=[common, point], help="evaluate R(s) at one point")
    sub.add_parser("eval-zeta", parents=[common, point], help="evaluate zeta(s) at one point")
    zs = sub.add_parser("zeta-sum", parents=[common, point], help="partial sum of n**(-s) for n <= x")
    zs.add_argument("--x", help="summation limit")

    chk = sub.add_parser("check", parents=[common], help="run one inequality over a grid",
                         description="Grid axes take a value, a comma list, or lo:hi:count[:log]. "
                                     "Axes left out use the built-in default grid of the tag.")
    chk.add_argument("--tag", choices=TAGS, required=True)
    for name in _AXES:
        chk.add_argument(f"--{name}", default=None, help=f"{name} grid")
    chk.add_argument("--log-of", choices=LOG_ARGUMENTS, default="tau", help="argument of the log in the final inequality")
    chk.add_argument("--workers", type=int, default=1, help="worker processes")

    sz = sub.add_parser("scan-zeros", parents=[common], help="locate zeros of R in a rectangle")
    sz.add_argument("--rect", default="0:1:0:100", help="sigma_min:sigma_max:t_min:t_max")

    st = sub.add_parser("solve-threshold", parents=[common], help="solve for the height tau0 of the final inequality")
    st.add_argument("--log-of", choices=LOG_ARGUMENTS, default="tau")
    return parser


def resolve_bits(args) -> int:
    if args.prec_bits is not None:
        bits = args.prec_bits
    elif os.environ.get(PREC_ENV):
        try:
            bits = int(os.environ[PREC_ENV])
        except ValueError:
            raise DomainError(f"${PREC_ENV} must be an integer") from None
    else:
        bits = THRESHOLD_BITS if args.command == "solve-threshold" else DEFAULT_BITS
    if bits < 64:
        raise DomainError(f"precision must be at least 64 bits (got {bits})")
    return bits


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    start = time.perf_counter()
    try:
        bits = resolve_bits(args)
        report, code = COMMANDS[args.command](args, bits)
    except (DomainError, SizeError, BoundaryZeroError, ConvergenceError) as exc:
        print(f"auxz: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report["wall_time_s"] = round(time.perf_counter() - start, 3) if args.timing else None
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code
