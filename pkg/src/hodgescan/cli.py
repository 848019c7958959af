"""Command-line front end.

Subcommands::

    hodgescan relations FILE...   relation lattice of the periods
    hodgescan hodge FILE...       polarized Picard lattice
    hodgescan curves FILE...      counts of smooth rational curves (lattice JSON or period file)
    hodgescan endo FILE...        endomorphism ring and the reduction bound on rho
    hodgescan certify FILE...     interval bounds (B, N, eps)
    hodgescan pham --d 4 --n 2    Fermat intersection data from a Pham basis
    hodgescan synth ...           planted period file plus answer file
    hodgescan report RESULT.json  render a result file as text or CSV

``--fixture NAME`` adds a bundled input (see ``hodgescan report --list``).
Exit codes: 0 success, 1 input error, 2 algorithmic failure, 3 internal
invariant violation.  Without ``--timings`` the output depends only on the
inputs and flags.

The Pham basis file is JSON ``{"d": 4, "n": 2, "basis": [[...], ...]}`` or
text with one index tuple per line, e.g. ``0 0 0 1`` or ``(0, 0, 0, 1)``.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property

from . import __version__
from . import exactlin as el
from . import formats as fm
from .cert import certificate, precision_for_digits, projector_from_periods
from .curves import METHODS, count_curves
from .errors import HodgescanError, InputError, InvariantViolation
from .hodge import (
    PeriodData,
    assemble_hodge_lattice,
    charles_gap,
    endomorphism_ring,
    lattice_signature,
    transcendental_complement,
)
from .interval import DEFAULT_PREC
from .pham import polarization_coefficients
from .relations import (
    DEFAULT_GAP_TOLERANCE,
    default_beta,
    integer_relation_lattice,
    plant_relations,
    round_periods,
)

RESULT_FORMAT = "hodgescan-result"
RESULT_VERSION = 1


class UsageError(InputError):
    code = "USAGE_ERROR"


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# per-input pipeline with cached intermediate results


class Pipeline:
    """Lazy, memoized chain period file -> relations -> lattice -> ..."""

    def __init__(self, path, args):
        self.path = path
        self.args = args
        self.timings = {}

    def _timed(self, name, fn):
        t0 = time.perf_counter()
        out = fn()
        self.timings[name] = time.perf_counter() - t0
        return out

    @cached_property
    def digest(self):
        return fm.file_digest(self.path)

    @cached_property
    def period_data(self):
        return fm.read_period_file(self.path)

    @cached_property
    def beta(self):
        if self.args.beta:
            return parse_beta(self.args.beta)
        digits = self.period_data.decimal_digits
        if not digits:
            raise InputError("decimal_digits is 0 in the header; pass --beta")
        return default_beta(digits)

    @cached_property
    def prec(self):
        if self.args.precision_bits:
            return self.args.precision_bits
        return precision_for_digits(self.period_data.decimal_digits) if self.period_data.decimal_digits else DEFAULT_PREC

    @cached_property
    def relations(self):
        pd = self.period_data

        def run():
            spm = round_periods(pd.real_periods(), self.beta, pd.real_radii())
            return integer_relation_lattice(spm, self.args.gap_tol, prec=self.prec)

        return self._timed("relations", run)

    @cached_property
    def lattice(self):
        return assemble_hodge_lattice(self.period_data, self.relations)

    @cached_property
    def transcendental(self):
        return transcendental_complement(self.lattice, self.period_data)

    @cached_property
    def endo(self):
        T = self.transcendental
        return self._timed("endo", lambda: endomorphism_ring(T, self.period_data, self.beta,
                                                             self.args.gap_tol, prec=self.prec))

    @cached_property
    def certificate(self):
        pd = self.period_data

        def run():
            proj = projector_from_periods(pd.periods, pd.radii, pd.intersection, self.prec)
            return certificate(self.lattice, self.relations, proj, pd.degree_d, pd.intersection,
                               pd.polarization_h)

        return self._timed("certify", run)


def parse_beta(text):
    """``10^30``, ``1e30`` or a plain integer."""
    t = text.replace(" ", "")
    try:
        if "^" in t:
            base, exp = t.split("^")
            value = int(base) ** int(exp)
        elif "e" in t.lower():
            mant, exp = t.lower().split("e")
            value = int(mant) * 10 ** int(exp)
        else:
            value = int(t)
    except ValueError:
        raise UsageError(f"cannot parse beta {text!r}") from None
    if value < 2:
        raise UsageError("beta must be at least 2")
    return value


# ---------------------------------------------------------------------------
# result sections


def relations_section(pl):
    rel = pl.relations
    return {
        "beta": {"kind": "exact_integer", "value": str(rel.beta)},
        "gap_tolerance": rel.gap_tolerance,
        "precision_bits": pl.prec,
        "m": fm.tag_int(rel.m),
        "p_effective": fm.tag_int(rel.p),
        "rho": fm.tag_int(rel.rho),
        "lattice": fm.tag_ints(el.hnf_basis(rel.lattice)),
        "reduced_basis": fm.tag_ints(rel.lattice),
        "norm_profile_sq": fm.tag_ints(rel.sq_norms),
        "B_bound": fm.tag_upper(rel.B_bound),
        "eps_bound": fm.tag_upper(rel.eps_bound),
        "kappa": fm.tag_approx(rel.kappa),
        "gap_ratio": fm.tag_approx(rel.gap_ratio),
        "gap_diagnostics": [
            {"rho": c["rho"], "condition_a": c["condition_a"], "condition_b": c["condition_b"],
             "log10_norm": round(c["log10_norm"], 6), "log10_expected": round(c["log10_expected"], 6)}
            for c in rel.candidates
        ],
    }


def lattice_section(lat):
    pos, neg, zero = lattice_signature(lat.gram)
    sec = {
        "rank": fm.tag_int(lat.rank),
        "gram": fm.tag_ints(lat.gram),
        "h_coords": fm.tag_ints(lat.h_coords),
        "h_squared": fm.tag_int(lat.h_squared()),
        "signature": fm.tag_ints([pos, neg, zero]),
        "discriminant": fm.tag_int(el.det(lat.gram)),
    }
    if lat.basis_in_homology is not None:
        sec["basis_in_homology"] = fm.tag_ints(lat.basis_in_homology)
    return sec


def curves_section(lat, dmax, method):
    report = count_curves(lat, dmax, method)
    counts = report.counts
    return {
        "method": method,
        "dmax": dmax,
        "counts": {str(d): fm.tag_int(c) for d, c in counts.items()},
        "classes": {str(d): fm.tag_ints(v) for d, v in report.classes.items()},
    }, report.timings


def endo_section(pl):
    E = pl.endo
    T = pl.transcendental
    rho = pl.relations.rho
    sec = {
        "transcendental_rank": fm.tag_int(len(T)),
        "rank": fm.tag_int(E.rank),
        "basis": fm.tag_ints(E.basis),
        "generator": fm.tag_ints(E.generator),
        "min_poly": fm.tag_ints(E.min_poly),
        "totally_real": E.totally_real,
        "totally_real_method": E.totally_real_method,
        "heuristic": E.totally_real_method != "sturm",
        "warnings": [E.diagnostics["warning"]] if "warning" in E.diagnostics else [],
    }
    sec["rho_reduction_bound"] = fm.tag_int(charles_gap(rho, E.rank, len(T), E.totally_real))
    return sec


def certificate_section(pl):
    c = pl.certificate
    return {
        "scope": "partial: the thresholds B_min and tau_N are not computed",
        "B": fm.tag_upper(c.B),
        "N": fm.tag_upper(c.N),
        "eps": fm.tag_upper(c.eps),
        "xi1": fm.tag_lower(c.xi1),
        "xi2": fm.tag_upper(c.xi2),
        "B_lattice": fm.tag_upper(c.B_lattice),
        "generator_norms": [fm.tag_interval(iv) for iv in c.norm_intervals],
        "generator_distances": [fm.tag_interval(iv) for iv in c.dist_intervals],
    }


# ---------------------------------------------------------------------------
# commands on input files


def _lattice_input(path):
    return path.endswith(".json")


def run_one(command, path, args):
    pl = Pipeline(path, args)
    rec = {"input": os.path.basename(path), "input_digest": pl.digest}
    timings = {}
    if command == "curves" and _lattice_input(path):
        lat = fm.load_lattice(path)
        rec["lattice"] = lattice_section(lat)
        rec["curves"], timings = curves_section(lat, args.dmax, args.method)
    else:
        rec["relations"] = relations_section(pl)
        if command in ("hodge", "curves", "endo", "certify"):
            rec["lattice"] = lattice_section(pl.lattice)
        if command == "curves":
            rec["curves"], timings = curves_section(pl.lattice, args.dmax, args.method)
        if command == "endo":
            rec["endomorphisms"] = endo_section(pl)
        if command == "certify":
            rec["certificate"] = certificate_section(pl)
    rec["status"] = "ok"
    if args.timings:
        timings = {**pl.timings, **{f"curves_d{d}": t for d, t in timings.items()}}
        rec["timings_seconds"] = {k: round(v, 6) for k, v in timings.items()}
    return rec


def run_guarded(command, path, args):
    try:
        return run_one(command, path, args), 0
    except HodgescanError as exc:
        warn(f"{os.path.basename(path)}: {exc.code}: {exc}")
        return error_record(path, exc), exc.exit_code
    except OSError as exc:
        warn(f"{path}: {exc}")
        return {"input": os.path.basename(path), "status": "IO_ERROR", "message": str(exc)}, 1
    except (ArithmeticError, AssertionError, ValueError) as exc:
        warn(f"{path}: internal error: {exc}")
        return {"input": os.path.basename(path), "status": InvariantViolation.code, "message": str(exc)}, 3


def warn(msg):
    print(f"hodgescan: {msg}", file=sys.stderr)


def error_record(path, exc):
    rec = {"input": os.path.basename(path), "status": exc.code, "message": str(exc)}
    details = {k: v for k, v in exc.details.items() if isinstance(v, (int, float, str, list))}
    if details:
        rec["details"] = details
    return rec


def input_paths(args):
    paths = list(args.inputs)
    for name in args.fixture or []:
        paths.append(fm.fixture_path(name))
    if not paths:
        raise UsageError("no input files (give paths or --fixture NAME)")
    return paths


def cmd_files(command, args):
    paths = input_paths(args)
    if args.jobs > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outs = list(pool.map(lambda p: run_guarded(command, p, args), paths))
    else:
        outs = [run_guarded(command, p, args) for p in paths]
    doc = envelope(command, args)
    doc["results"] = [r for r, _ in outs]
    emit(doc, args)
    return max(code for _, code in outs)


def envelope(command, args):
    flags = {"gap_tol": args.gap_tol}
    for key in ("beta", "precision_bits", "dmax", "method"):
        val = getattr(args, key, None)
        if val is not None:
            flags[key] = val
    return {"format": RESULT_FORMAT, "format_version": RESULT_VERSION, "tool_version": __version__,
            "command": command, "flags": flags}


# ---------------------------------------------------------------------------
# pham, synth, report


def cmd_pham(args):
    if args.basis_file:
        B, d, n = fm.load_pham_basis(args.basis_file)
    else:
        B, d, n = fm.load_pham_basis(fm.fixture_path("pham_d4_n2"))
    d = args.d if args.d is not None else d
    n = args.n if args.n is not None else n
    if d is None or n is None:
        raise UsageError("--d and --n are required for a plain-text basis file")
    if n % 2:
        raise UsageError("--n must be even")
    data = polarization_coefficients(B, d, n)
    gram = data.full_gram
    doc = {
        "format": "hodgescan-pham", "format_version": RESULT_VERSION, "tool_version": __version__,
        "d": d, "n": n,
        "basis": data.B,
        "b_BL": fm.tag_ints(data.b_BL),
        "a_BL": fm.tag_rationals(data.a_BL),
        "h_X": fm.tag_ints(data.h_coords),
        "L_squared": fm.tag_rational(data.L_squared),
        "gram": fm.tag_ints(gram),
        "determinant": fm.tag_int(el.det(gram)),
        "h_squared": fm.tag_int(el.bilinear(data.h_coords, gram, data.h_coords)),
        "signature": fm.tag_ints(list(el.signature(gram))),
    }
    emit(doc, args)
    return 0


def cmd_synth(args):
    if args.p < 1 or args.m < 1:
        raise UsageError("--m and --p must be positive")
    if not 0 <= args.rank <= args.m - args.p:
        raise UsageError("need 0 <= rank <= m - p")
    entries, L = plant_relations(args.m, args.p, args.rank, args.digits, args.seed)
    r = math.ceil(args.p / 2)
    zero = "0." + "0" * args.digits if args.digits else "0"
    periods = []
    for row in entries:
        cols = row + [zero] * (2 * r - args.p)
        periods.append([(cols[k], cols[r + k]) for k in range(r)])
    # a relation vector makes a usable polarization; the identity form is a placeholder
    h = list(L[0]) if L else [1] + [0] * (args.m - 1)
    intersection = el.identity(args.m)
    radius = f"5e-{args.digits + 1}"
    pd = PeriodData(intersection, h, periods, radius, el.dot(h, h), 2, args.digits)
    prefix = args.output or f"synth_m{args.m}_p{args.p}_r{args.rank}_s{args.seed}"
    period_path = prefix + ".periods"
    answer_path = prefix + ".answer.json"
    fm.write_period_file(pd, period_path)
    answer = {"format": "hodgescan-answer", "format_version": RESULT_VERSION, "m": args.m, "p": args.p,
              "rank": args.rank, "digits": args.digits, "seed": args.seed,
              "lattice": el.hnf_basis(L) if L else [],
              "period_digest": fm.file_digest(period_path)}
    with open(answer_path, "w", encoding="utf-8") as fh:
        fh.write(fm.dump_json(answer))
    print(period_path)
    print(answer_path)
    return 0


def cmd_report(args):
    if args.list:
        for name in fm.list_fixtures():
            print(name)
        return 0
    if not args.inputs:
        raise UsageError("report needs a result file")
    code = 0
    for path in args.inputs:
        doc = fm.load_json(path)
        if doc.get("format") != RESULT_FORMAT:
            raise InputError(f"{path} is not a result file")
        emit(doc, args, force=args.format or "text")
        code = max([code] + [0 if r.get("status") == "ok" else 2 for r in doc.get("results", [])])
    return code


# ---------------------------------------------------------------------------
# output


def _value(tagged):
    if isinstance(tagged, dict) and "kind" in tagged:
        if tagged["kind"] == "interval":
            return f"[{tagged['lo']}, {tagged['hi']}]"
        return tagged["value"]
    return tagged


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and "kind" not in obj:
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    else:
        v = _value(obj)
        if isinstance(v, (list, dict)):
            v = json.dumps(v, separators=(",", ":"))
        yield prefix, v


def render_text(doc):
    out = [f"{doc.get('format')} v{doc.get('format_version')}  command={doc.get('command', '-')}"]
    results = doc.get("results", [doc])
    for rec in results:
        if "input" in rec:
            out.append(f"== {rec['input']}  [{rec.get('status')}]")
        if rec.get("status") not in (None, "ok"):
            out.append(f"  error: {rec.get('message')}")
            continue
        for key, val in _flatten(rec):
            if key.startswith(("input", "status")) or ".classes." in key or key.endswith((".gram", "gap_diagnostics")):
                continue
            text = str(val)
            if len(text) > 100:
                text = text[:97] + "..."
            out.append(f"  {key}: {text}")
    return "\n".join(out) + "\n"


def render_csv(doc):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["input", "field", "value"])
    for rec in doc.get("results", [doc]):
        name = rec.get("input", "")
        for key, val in _flatten(rec):
            w.writerow([name, key, val])
    return buf.getvalue()


def emit(doc, args, force=None):
    fmt = force or args.format or "json"
    if fmt == "json":
        text = fm.dump_json(doc)
    elif fmt == "csv":
        text = render_csv(doc)
    else:
        text = render_text(doc)
    out = getattr(args, "output", None)
    if out and args.command not in ("synth",):
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def build_parser():
    common = Parser(add_help=False)
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)

    files = Parser(add_help=False)
    files.add_argument("inputs", nargs="*", help="period files (or lattice JSON for curves)")
    files.add_argument("--fixture", action="append", help="bundled input by name (repeatable)")
    files.add_argument("--beta", help="scaling factor, e.g. 10^30 (default 10^(digits-10))")
    files.add_argument("--gap-tol", type=float, default=DEFAULT_GAP_TOLERANCE, dest="gap_tol",
                       help="relative tolerance of the gap test (default %(default)s)")
    files.add_argument("--precision-bits", type=int, dest="precision_bits",
                       help="working precision (default: input digits plus 64 bits)")
    files.add_argument("--jobs", "-j", type=int, default=1, help="process inputs in parallel threads")
    files.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p = Parser(prog="hodgescan", description="Picard lattices from periods.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)
    sub.add_parser("relations", parents=[common, files], help="integer relation lattice")
    sub.add_parser("hodge", parents=[common, files], help="polarized Picard lattice")
    c = sub.add_parser("curves", parents=[common, files], help="count smooth rational curves")
    c.add_argument("--dmax", type=int, default=4)
    c.add_argument("--method", choices=METHODS, default="projection")
    sub.add_parser("endo", parents=[common, files], help="endomorphism ring of the transcendental lattice")
    sub.add_parser("certify", parents=[common, files], help="interval certificate (B, N, eps)")

    ph = sub.add_parser("pham", parents=[common], help="Fermat intersection data")
    ph.add_argument("--d", type=int)
    ph.add_argument("--n", type=int)
    ph.add_argument("--basis-file", dest="basis_file", help="default: the bundled d=4, n=2 basis")

    sy = sub.add_parser("synth", parents=[common], help="planted period file and its answer")
    sy.add_argument("--m", type=int, required=True)
    sy.add_argument("--p", type=int, required=True)
    sy.add_argument("--rank", type=int, required=True)
    sy.add_argument("--digits", type=int, required=True)
    sy.add_argument("--seed", type=int, default=0)

    rp = sub.add_parser("report", parents=[common], help="render result files")
    rp.add_argument("inputs", nargs="*")
    rp.add_argument("--list", action="store_true", help="list bundled fixtures")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hodgescan: error: {exc}", file=sys.stderr)
        return 1
    if getattr(args, "dmax", 1) < 0:
        print("hodgescan: error: --dmax must be non-negative", file=sys.stderr)
        return 1
    try:
        if args.command in ("relations", "hodge", "curves", "endo", "certify"):
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
            return cmd_files(args.command, args)
        return {"pham": cmd_pham, "synth": cmd_synth, "report": cmd_report}[args.command](args)
    except HodgescanError as exc:
        print(f"hodgescan: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"hodgescan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
