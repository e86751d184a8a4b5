"""Command-line interface.

    lzeros [--config FILE] [-v] COMMAND [options]

Commands: zero, scan, count, gue, primes, dh-probe, saddle, gram.
Exit codes: 0 ok, 2 usage or invalid input, 3 no solution (gap), 4 convergence failure.

A config file holds ``key = value`` lines (``#`` starts a comment); keys are
option names with dashes or underscores, and command-line flags override them.
The environment variable LZEROS_PRECISION_GUARD sets the guard digits.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

from flint import arb

from . import __version__
from .errors import ConvergenceError, DomainError, InsufficientData, LZerosError, NoSolution
from .lfuncs import LFunctionSpec, spec_for, zeta
from .numerics import PrecisionContext, fixed_decimal, mid, to_decimal, to_real

log = logging.getLogger("lzeros")

EXIT_OK, EXIT_USAGE, EXIT_GAP, EXIT_CONVERGENCE = 0, 2, 3, 4
CSV_COLUMNS = ("n", "x", "y", "residual_exponent", "verified_digits", "iterations")
GUARD_ENV = "LZEROS_PRECISION_GUARD"
SCAN_CAP = 10**6


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class RunConfig:
    family: str = "zeta"
    k: int | None = None
    j: int | None = None
    digits: int = 30
    residual_exponent: int | None = None
    output: str | None = None
    format: str = "csv"
    parallelism: int = 1

    def __post_init__(self):
        if self.digits < 15:
            raise UsageError("--digits must be >= 15")
        if self.residual_exponent is not None and self.residual_exponent < 10:
            raise UsageError("--residual-exponent must be >= 10")
        if self.parallelism < 1:
            raise UsageError("--parallelism must be >= 1")
        if self.format not in ("csv", "json", "text"):
            raise UsageError(f"unknown format {self.format!r}")

    @property
    def target_exponent(self) -> int:
        return self.residual_exponent if self.residual_exponent is not None else self.digits

    def spec(self) -> LFunctionSpec:
        try:
            return spec_for(self.family, self.k, self.j)
        except (ValueError, DomainError) as exc:
            raise UsageError(str(exc)) from exc

    def hash(self) -> str:
        blob = {k: v for k, v in asdict(self).items() if k not in ("output", "parallelism")}
        return hashlib.sha256(json.dumps(blob, sort_keys=True).encode()).hexdigest()[:16]


def guard_digits() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return PrecisionContext().guard_digits
    try:
        g = int(raw)
    except ValueError as exc:
        raise UsageError(f"{GUARD_ENV} must be an integer") from exc
    if g < 0:
        raise UsageError(f"{GUARD_ENV} must be >= 0")
    return g


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; keys are normalized to option dests."""
    out = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (t.strip() for t in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def run_config(args) -> RunConfig:
    return RunConfig(
        family=getattr(args, "family", "zeta"),
        k=getattr(args, "k", None),
        j=getattr(args, "j", None),
        digits=getattr(args, "digits", 30),
        residual_exponent=getattr(args, "residual_exponent", None),
        output=getattr(args, "out", None),
        format=getattr(args, "format", "csv"),
        parallelism=getattr(args, "parallelism", 1),
    )


def solver_config(rc: RunConfig):
    from .solver import SolverConfig

    return SolverConfig.for_digits(rc.target_exponent)


# ---------------------------------------------------------------------------
# zero rows and files


@dataclass(frozen=True)
class ZeroRow:
    """One CSV row; y stays a decimal string so re-ingestion is exact."""

    n: int
    x: str
    y: str
    residual_exponent: int
    verified_digits: int
    iterations: int

    def as_list(self) -> list:
        return [self.n, self.x, self.y, self.residual_exponent, self.verified_digits, self.iterations]


def _fraction_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return str(q.numerator / q.denominator) if q.denominator in (2, 4, 5, 8, 10) else f"{q.numerator}/{q.denominator}"


def row_from_record(rec, decimals: int, spec: LFunctionSpec | None = None) -> ZeroRow:
    ctx = PrecisionContext(max(15, rec.precision_digits + 10))
    with ctx.working():
        y = fixed_decimal(rec.y, decimals)
        xs = _fraction_str(spec.critical_x) if spec is not None else fixed_decimal(rec.x, decimals)
    return ZeroRow(int(rec.n), xs, y, rec.residual_exponent, rec.verified_digits, rec.iterations)


def seed_row(spec: LFunctionSpec, n: int, digits: int) -> ZeroRow:
    from .solver import seed

    ctx = PrecisionContext(digits + 5, guard_digits())
    with ctx.working():
        y = seed(spec, n, ctx)
    return ZeroRow(int(n), _fraction_str(spec.critical_x), format_seed(y, digits, ctx), 0, 0, 0)


def format_seed(y, digits: int, ctx: PrecisionContext) -> str:
    """Fixed-point for moderate heights; `digits` significant digits with an exponent beyond 1e15."""
    with ctx.working(len(str(int(abs(float(mid(y))) if math.isfinite(float(mid(y))) else 0))) + 10):
        y = mid(to_real(y))
        if abs(y) < arb(10) ** 15:
            return fixed_decimal(y, digits)
        e = int(math.floor(float(mid(abs(y).log() / arb(10).log()))))
        m = y / arb(10) ** e
        if abs(m) >= 10:
            m, e = m / 10, e + 1
        return f"{fixed_decimal(m, digits - 1)}e{e}"


def write_csv(rows: Iterable[ZeroRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_list())


def write_json(rows: Sequence[ZeroRow], fh, rc: RunConfig, spec: LFunctionSpec) -> None:
    doc = {
        "metadata": {"family": spec.name, "config_hash": rc.hash(), "tool_version": __version__,
                     "digits": rc.digits, "residual_exponent": rc.target_exponent},
        "zeros": [dict(zip(CSV_COLUMNS, r.as_list())) for r in rows],
    }
    json.dump(doc, fh, indent=2)
    fh.write("\n")


def read_zero_table(path: str) -> list[ZeroRow]:
    """Zero rows from a CSV or JSON file written by ``scan``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read zeros file: {exc}") from exc
    if text.lstrip().startswith("{"):
        items = json.loads(text)["zeros"]
    else:
        items = list(csv.DictReader(io.StringIO(text)))
        if items and set(CSV_COLUMNS) - set(items[0]):
            raise UsageError(f"{path}: expected columns {','.join(CSV_COLUMNS)}")
    rows = [ZeroRow(int(d["n"]), str(d["x"]), str(d["y"]), int(d["residual_exponent"]),
                    int(d["verified_digits"]), int(d["iterations"])) for d in items]
    return sorted(rows, key=lambda r: r.n)


# ---------------------------------------------------------------------------
# solving helpers


def _solve_row(job) -> ZeroRow:
    spec, n, config, guard, decimals = job
    from .solver import solve_zero

    rec = solve_zero(spec, n, config, PrecisionContext(config.initial_precision, guard))
    return row_from_record(rec, decimals, spec)


def solve_rows(spec: LFunctionSpec, ns: Sequence[int], rc: RunConfig, on_row=None) -> list[ZeroRow]:
    """Solve labels in order; rows are merged in label order whatever the parallelism."""
    config = solver_config(rc)
    guard = guard_digits()
    jobs = [(spec, n, config, guard, rc.digits) for n in ns]
    out = []
    if rc.parallelism <= 1:
        for job in jobs:
            row = _solve_row(job)
            out.append(row)
            if on_row:
                on_row(row)
        return out
    chunk = 8 * rc.parallelism
    with ProcessPoolExecutor(max_workers=rc.parallelism) as pool:
        for i in range(0, len(jobs), chunk):
            for row in pool.map(_solve_row, jobs[i : i + chunk]):
                out.append(row)
                if on_row:
                    on_row(row)
    return out


def zeta_zero_rows(lo: int, hi: int, digits: int, parallelism: int) -> list[ZeroRow]:
    rc = RunConfig(family="zeta", digits=digits, parallelism=parallelism)
    return solve_rows(rc.spec(), list(range(lo, hi + 1)), rc)


# ---------------------------------------------------------------------------
# commands


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_zero(args) -> int:
    rc = run_config(args)
    spec = rc.spec()
    if args.seed_only:
        row = seed_row(spec, args.n, rc.digits)
    else:
        from .solver import solve_zero

        rec = solve_zero(spec, args.n, solver_config(rc), PrecisionContext(15, guard_digits()))
        row = row_from_record(rec, rc.digits, spec)
    if rc.format == "json":
        buf = io.StringIO()
        write_json([row], buf, rc, spec)
        _emit(buf.getvalue(), rc.output)
    elif rc.format == "csv":
        buf = io.StringIO()
        write_csv([row], buf)
        _emit(buf.getvalue(), rc.output)
    else:
        lines = [f"family: {spec.name}", f"n: {row.n}", f"x: {row.x}", f"y: {row.y}"]
        if not args.seed_only:
            lines += [f"residual_exponent: {row.residual_exponent}", f"verified_digits: {row.verified_digits}",
                      f"iterations: {row.iterations}"]
        _emit("\n".join(lines) + "\n", rc.output)
    return EXIT_OK


def _resume_path(out: str) -> str:
    return out + ".resume"


def cmd_scan(args) -> int:
    rc = run_config(args)
    spec = rc.spec()
    lo, hi = args.from_, args.to
    if lo > hi:
        raise UsageError("--from must not exceed --to")
    if hi - lo + 1 > SCAN_CAP:
        raise UsageError(f"at most {SCAN_CAP} labels per scan")
    ns = list(range(lo, hi + 1))
    if args.seed_only:
        rows = [seed_row(spec, n, rc.digits) for n in ns]
        return _write_rows(rows, rc, spec)
    if rc.format == "json" or not rc.output:
        rows = solve_rows(spec, ns, rc)
        return _write_rows(rows, rc, spec)

    # CSV file output is written row by row so an interrupted scan can resume
    done = []
    if args.resume and os.path.exists(rc.output):
        done = read_zero_table(rc.output)
        finished = {r.n for r in done}
        ns = [n for n in ns if n not in finished]
    mode = "a" if done else "w"
    with open(rc.output, mode, encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if not done:
            w.writerow(CSV_COLUMNS)

        def on_row(row: ZeroRow) -> None:
            w.writerow(row.as_list())
            fh.flush()

        try:
            solve_rows(spec, ns, rc, on_row)
        except KeyboardInterrupt:
            fh.flush()
            n_done = {r.n for r in read_zero_table(rc.output)}
            pending = [n for n in range(lo, hi + 1) if n not in n_done]
            with open(_resume_path(rc.output), "w", encoding="utf-8") as mk:
                json.dump({"next": pending[0] if pending else None, "to": hi, "config_hash": rc.hash()}, mk)
            print(f"interrupted; rerun with --resume to continue from n={pending[0] if pending else hi}",
                  file=sys.stderr)
            return 130
    if os.path.exists(_resume_path(rc.output)):
        os.remove(_resume_path(rc.output))
    return EXIT_OK


def _write_rows(rows, rc: RunConfig, spec) -> int:
    buf = io.StringIO()
    if rc.format == "json":
        write_json(rows, buf, rc, spec)
    else:
        write_csv(rows, buf)
    _emit(buf.getvalue(), rc.output)
    return EXIT_OK


def cmd_count(args) -> int:
    from .solver import counting_line, counting_strip

    rc = run_config(args)
    spec = rc.spec()
    ctx = PrecisionContext(rc.digits, guard_digits())
    methods = ("line", "strip") if args.method == "both" else (args.method,)
    lines = []
    for m in methods:
        fn = counting_line if m == "line" else counting_strip
        raw = fn(spec, args.T, ctx, lower=args.lower)
        val = int(round(float(raw)))
        if args.verbose or len(methods) > 1:
            lines.append(f"{m} {val} {to_decimal(raw, 12)}")
        else:
            lines.append(str(val))
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def _zero_source(args) -> list[ZeroRow]:
    if args.zeros_file:
        return read_zero_table(args.zeros_file)
    return zeta_zero_rows(args.from_, args.to, args.digits, args.parallelism)


def cmd_gue(args) -> int:
    from .analysis import pair_correlation

    rows = _zero_source(args)
    rows = [r for r in rows if args.from_ <= r.n <= args.to] if args.zeros_file else rows
    rep = pair_correlation(rows, args.from_, args.to, args.step, args.alpha_max, min_span=args.min_span)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("alpha", "empirical", "theoretical"))
    for a, e, t in rep.rows():
        w.writerow((f"{a:.4f}", repr(e), repr(t)))
    _emit(buf.getvalue(), args.out)
    print(f"mean_abs_deviation {rep.mean_abs_deviation:.6f} over {len(rep.alpha_grid)} bins, "
          f"M={rep.M} N={rep.N}", file=sys.stderr)
    return EXIT_OK


def cmd_primes(args) -> int:
    from .analysis import j_from_zeros, pi_from_zeros, psi_from_zeros, sieve_pi

    if args.zeros_file:
        rows = read_zero_table(args.zeros_file)[: args.zeros] if args.zeros else read_zero_table(args.zeros_file)
    else:
        rows = zeta_zero_rows(1, args.zeros or 50, 20, args.parallelism)
    if args.xmax < 2:
        raise UsageError("--xmax must be >= 2")
    ctx = PrecisionContext(args.digits, guard_digits())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("x", "psi", "J", "pi", "pi_rounded", "pi_sieve"))
    x = 2.0
    while x <= args.xmax + 1e-12:
        xs = repr(round(x, 10))
        p = pi_from_zeros(xs, rows, ctx)
        w.writerow((xs, to_decimal(psi_from_zeros(xs, rows, ctx), 15), to_decimal(j_from_zeros(xs, rows, ctx), 15),
                    to_decimal(p, 15), int(round(float(p))), sieve_pi(x)))
        x += args.dx
    _emit(buf.getvalue(), args.out)
    print(f"zeros used: {len(rows)}", file=sys.stderr)
    return EXIT_OK


def cmd_dh_probe(args) -> int:
    from .lfuncs import dh_spec
    from .solver import SolverConfig, find_offline_zero, gap_scan, offline_candidates

    spec = dh_spec()
    config = SolverConfig()
    gaps = gap_scan(spec, args.nmin, args.nmax, config)
    ctx = PrecisionContext(args.digits, guard_digits())
    lines = [f"gaps: {','.join(str(g) for g in gaps)}", "n,x,y,phase_sum_over_pi,odd_integer,defect"]
    for n, loc in offline_candidates(spec, gaps, ctx, config):
        try:
            rec = find_offline_zero(spec, "0.75", loc, radius=0.5, ctx=ctx)
        except ConvergenceError as exc:
            lines.append(f"{n},,{to_decimal(loc, 12)},,,search failed: {exc}")
            continue
        with ctx.working():
            lines.append(",".join([str(n), fixed_decimal(rec.x, 12), fixed_decimal(rec.y, 12),
                                   fixed_decimal(rec.phase_sum, 6), str(rec.odd_integer), to_decimal(rec.phase_defect, 3)]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_saddle(args) -> int:
    from .saddle import zeta_saddle

    if not args.dy > 0 or args.y_to < args.y_from:
        raise UsageError("need --dy > 0 and --y-to >= --y-from")
    ctx = PrecisionContext(args.digits, guard_digits())
    steps = int(math.floor((args.y_to - args.y_from) / args.dy + 1e-9))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("y", "re_saddle", "im_saddle", "abs_saddle", "abs_zeta"))
    y0, dy = Decimal(repr(args.y_from)), Decimal(repr(args.dy))
    with ctx.working():
        x = mid(to_real(args.x))
        for i in range(steps + 1):
            # decimal steps, so the printed grid is exact
            yd = y0 + i * dy
            y = to_real(str(yd))
            s = zeta_saddle((x, y), ctx=ctx)
            z = zeta((x, y), ctx)
            w.writerow((f"{yd:.6f}", to_decimal(s.real, 12), to_decimal(s.imag, 12),
                        to_decimal(abs(s), 12), to_decimal(abs(z), 12)))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_gram(args) -> int:
    from .analysis import gram_points

    ctx = PrecisionContext(max(args.digits, 15), guard_digits())
    signs = ("+", "-") if args.sign == "both" else (args.sign,)
    lines = []
    for s in signs:
        y = gram_points(args.n, s, ctx, refine=not args.closed_form)
        with ctx.working():
            lines.append(f"y{s}_{args.n} {fixed_decimal(y, args.digits)}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_family(p) -> None:
    p.add_argument("--family", default="zeta", choices=["zeta", "dirichlet", "modular12", "dh"])
    p.add_argument("--k", type=int, help="Dirichlet modulus")
    p.add_argument("--j", type=int, help="Dirichlet character index")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lzeros", description=__doc__.split("\n\n")[0])
    p.add_argument("--config", help="key = value defaults file")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"lzeros {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zero", help="one zero to the requested number of decimals")
    _add_family(z)
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--digits", type=int, default=30, help="decimals to print and to resolve")
    z.add_argument("--residual-exponent", type=int, help="stop once |L| <= 10^-E (default: --digits)")
    z.add_argument("--format", default="text", choices=["text", "csv", "json"])
    z.add_argument("--out")
    z.add_argument("--seed-only", action="store_true", help="print the Lambert-W seed without solving")
    z.set_defaults(func=cmd_zero)

    s = sub.add_parser("scan", help="a range of zeros as CSV or JSON")
    _add_family(s)
    s.add_argument("--from", dest="from_", type=int, required=True)
    s.add_argument("--to", type=int, required=True)
    s.add_argument("--digits", type=int, default=20)
    s.add_argument("--residual-exponent", type=int)
    s.add_argument("--format", default="csv", choices=["csv", "json"])
    s.add_argument("--out")
    s.add_argument("--parallelism", type=_positive_int, default=1)
    s.add_argument("--seed-only", action="store_true")
    s.add_argument("--resume", action="store_true", help="continue an interrupted CSV scan")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("count", help="number of zeros with 0 < y < T")
    _add_family(c)
    c.add_argument("--T", type=str, required=True)
    c.add_argument("--method", default="line", choices=["line", "strip", "both"])
    c.add_argument("--lower", action="store_true", help="count -T < y < 0 instead")
    c.add_argument("--digits", type=int, default=20)
    c.set_defaults(func=cmd_count)

    g = sub.add_parser("gue", help="pair correlation of zeta zeros against the GUE density")
    g.add_argument("--from", dest="from_", type=int, default=1)
    g.add_argument("--to", type=int, required=True)
    g.add_argument("--step", type=float, default=0.05)
    g.add_argument("--alpha-max", type=float, default=3.0)
    g.add_argument("--min-span", type=int, default=1000)
    g.add_argument("--zeros-file")
    g.add_argument("--digits", type=int, default=15)
    g.add_argument("--parallelism", type=_positive_int, default=1)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gue)

    r = sub.add_parser("primes", help="psi, J and pi from zeta zeros")
    r.add_argument("--xmax", type=float, required=True)
    r.add_argument("--dx", type=float, default=1.0)
    r.add_argument("--zeros-file")
    r.add_argument("--zeros", type=int, help="number of zeros to use (default: all in file, or 50)")
    r.add_argument("--digits", type=int, default=20)
    r.add_argument("--parallelism", type=_positive_int, default=1)
    r.add_argument("--out")
    r.set_defaults(func=cmd_primes)

    d = sub.add_parser("dh-probe", help="Davenport-Heilbronn gaps and off-line zeros")
    d.add_argument("--nmin", type=int, default=1)
    d.add_argument("--nmax", type=int, required=True)
    d.add_argument("--digits", type=int, default=30)
    d.add_argument("--out")
    d.set_defaults(func=cmd_dh_probe)

    a = sub.add_parser("saddle", help="saddle-point approximation of zeta along a vertical line")
    a.add_argument("--y-from", type=float, required=True)
    a.add_argument("--y-to", type=float, required=True)
    a.add_argument("--dy", type=float, default=0.01)
    a.add_argument("--x", type=str, default="0.5")
    a.add_argument("--digits", type=int, default=20)
    a.add_argument("--out")
    a.set_defaults(func=cmd_saddle)

    m = sub.add_parser("gram", help="Gram points from the Lambert-W form")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--sign", default="+", choices=["+", "-", "both"])
    m.add_argument("--digits", type=int, default=20)
    m.add_argument("--closed-form", action="store_true", help="skip the Newton refinement")
    m.set_defaults(func=cmd_gram)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config_file(known.config)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            dests = {a.dest: a for a in sp._actions}
            values = {}
            for k, v in cfg.items():
                key = "from_" if k == "from" else k
                if key not in dests:
                    continue
                act = dests[key]
                if isinstance(act, argparse._StoreTrueAction):
                    values[key] = v.lower() in ("1", "true", "yes", "on")
                else:
                    values[key] = act.type(v) if act.type else v
                act.required = False
            sp.set_defaults(**values)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"lzeros: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NoSolution as exc:
        where = f" near y = {to_decimal(exc.location, 12)}" if getattr(exc, "location", None) is not None else ""
        print(f"lzeros: no solution for n = {exc.n}: the equation jumps across its target{where} (gap)",
              file=sys.stderr)
        return EXIT_GAP
    except ConvergenceError as exc:
        print(f"lzeros: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (UsageError, DomainError, InsufficientData, ValueError) as exc:
        print(f"lzeros: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
