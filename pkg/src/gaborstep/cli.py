"""Command-line interface: one subcommand per analysis, JSON or CSV on stdout.

Exit codes: 0 success, 2 rejected input, 3 inconclusive result under ``--strict``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, kernels
from .abcproblem import AbcQuery, chart, chart_csv, chart_json, classify, parse_value, reduce
from .conditions import cc_bounds
from .frameset import ExponentSet, circle_range, is_frame_set
from .fundamental import (apply_frame_operator, apply_via_walnut, fundamental_decomposition_apply,
                          sqrt_inverse_check, walnut_band)
from .gabor import GaborSystem, frame_energy, gk_table
from .scalar import fmt_rational, parse_rational, set_tolerance, to_rational
from .stepfn import StepFunction, chi, norm_sq
from .witnesses import (alternating_case, case1_witness, case2_witness, find_two_overlap_cell,
                        periodization_witness, riesz_coefficient_norm_sq, riesz_witness,
                        two_overlap_witness)

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 2, 3


class InputError(ValueError):
    pass


def _num(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _step(text: str, approx: bool) -> StepFunction:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed step-function JSON: {exc}") from None
    if not isinstance(rows, list):
        raise InputError("step function must be a JSON array of pieces")
    return StepFunction.from_json(rows, approx=approx)


def _rational(text, approx: bool) -> Fraction:
    return to_rational(text, approx) if approx else parse_rational(text)


def _system(args) -> GaborSystem:
    g = _step(args.g, args.approx)
    return GaborSystem(g, _rational(args.a, args.approx), _rational(args.b, args.approx),
                       approx=args.approx)


def _grid(text: str) -> list:
    """``"lo:hi:step"`` (``hi`` exclusive) or a comma list; entries are rationals or ``irr:x``."""
    if ":" in text:
        lo, hi, step = (parse_rational(t) for t in text.split(":"))
        if step <= 0:
            raise InputError("grid step must be positive")
        out, x = [], lo
        while x < hi:
            out.append(x)
            x += step
        return out
    return [parse_value(t) for t in text.split(",") if t.strip()]


# subcommand handlers return (json payload, csv header, csv rows, inconclusive flag)

def cmd_gk(args):
    table = gk_table(_system(args))
    rows = [[k, fmt_rational(lo), fmt_rational(hi), _num(v)]
            for k in table.krange for lo, hi, v in table[k].cells()]
    return table.to_json(), ["k", "lo", "hi", "value"], rows, False


def cmd_cc(args):
    rep = cc_bounds(_system(args), nonneg_necessary=args.nonneg_necessary)
    js = rep.to_json()
    header = list(js)
    return js, header, [[js[h] for h in header]], rep.verdict == "Inconclusive"


def cmd_energy(args):
    sys_ = _system(args)
    f = _step(args.f, args.approx)
    e = frame_energy(f, sys_)
    nf = norm_sq(f)
    js = {
        "energy": _num(e),
        "norm_sq": _num(nf),
        "ratio": _num(e / nf) if nf else None,
        "exact": isinstance(e, Fraction),
    }
    header = list(js)
    return js, header, [[js[h] for h in header]], False


def cmd_frameset(args):
    e = ExponentSet.parse(args.exps)
    verdict = is_frame_set(e, args.tol)
    rng = circle_range(e, args.tol)
    a_enc = [float(x) ** 2 for x in rng.lo]
    b_enc = [float(x) ** 2 for x in rng.hi]
    js = {
        "exps": list(e.exps),
        "verdict": verdict.status.value,
        "rule": verdict.rule,
        "A_enclosure": a_enc,
        "B_enclosure": b_enc,
        "min_modulus_enclosure": [float(x) for x in rng.lo],
        "certificate": rng.certificate,
    }
    row = [" ".join(map(str, e.exps)), js["verdict"], *a_enc, *b_enc]
    return js, ["exps", "verdict", "A_lo", "A_hi", "B_lo", "B_hi"], [row], \
        verdict.status.value == "Inconclusive"


def cmd_abc(args):
    q = AbcQuery(parse_value(args.a), parse_rational(args.b), parse_value(args.c))
    r = reduce(q)
    v = classify(q)
    fmt = lambda x: fmt_rational(x) if isinstance(x, Fraction) else str(x)
    js = {
        "query": {"a": fmt(q.a), "b": fmt(q.b), "c": fmt(q.c)},
        "reduced": {"a": fmt(r.a), "b": fmt(r.b), "c": fmt(r.c)},
        "status": v.status.value,
        "rule": v.rule,
    }
    row = [fmt(q.a), fmt(q.b), fmt(q.c), v.status.value, v.rule]
    return js, ["a", "b", "c", "status", "rule"], [row], v.status.value == "Unknown"


def cmd_chart(args):
    rows = chart(_grid(args.a_grid), _grid(args.c_grid), jobs=args.jobs)
    js = chart_json(rows)
    return js, None, chart_csv(rows), False


def cmd_walnut(args):
    js = walnut_band(_system(args), args.column)
    rows = [[j, lo, hi, v] for j, ent in js["entries"].items() for lo, hi, v in _cells(ent)]
    return js, ["j", "lo", "hi", "value"], rows, False


def _cells(entry: dict):
    for row in entry["cell"]:
        if len(row) == 6:
            yield f"{row[0]}/{row[1]}", f"{row[2]}/{row[3]}", row[4]
        else:
            yield row[0], row[1], row[2]


def cmd_fundamental(args):
    if args.g is not None:
        if args.f is None:
            raise InputError("--f is required together with --g")
        sys_ = _system(args)
        f = _step(args.f, args.approx)
        s1 = apply_frame_operator(sys_, f)
        s2 = apply_via_walnut(sys_, f)
        s3 = fundamental_decomposition_apply(sys_, f)
        js = {"agree": s1 == s2 == s3, "frame_operator": s1.to_json()}
        return js, ["agree"], [[js["agree"]]], False
    a = _rational(args.a, args.approx)
    b = _rational(args.b, args.approx)
    js = sqrt_inverse_check(a, b, trials=args.trials, seed=args.seed)
    keys = ["a", "b", "trials", "max_err_beta_gamma", "max_err_identity"]
    return js, keys, [[js[k] for k in keys]], False


def _family_builder(name: str, params: dict):
    if name == "case1":
        return lambda n: case1_witness(params["d"], n)
    if name == "case2":
        return lambda n: case2_witness(params["d"], n)
    if name == "riesz":
        return lambda k: riesz_witness(params["n"], k)
    if name == "periodization":
        return lambda n: periodization_witness(chi(*params["E"]), n)
    if name == "two-overlap":
        return lambda n: two_overlap_witness(params["g"], params["m"], params["E"], n)
    raise InputError(f"unknown witness family {name!r}")


def _witness_row(job):
    name, params, sys_, n = job
    f = _family_builder(name, params)(n)
    nf = norm_sq(f)
    if name == "riesz":
        coeff = riesz_coefficient_norm_sq(n)
        return n, nf, coeff, nf / coeff
    e = frame_energy(f, sys_)
    return n, nf, e, e / nf


def cmd_witness(args):
    name = args.family
    params: dict = {}
    if name in ("case1", "case2"):
        c = parse_rational(args.c)
        build, d, _, case = alternating_case(c)
        if f"case{case}" != name:
            raise InputError(f"c = {args.c} belongs to case{case}")
        params["d"] = d
        sys_ = GaborSystem(chi(0, c), 1, 1)
    elif name == "riesz":
        params["n"] = int(args.c)
        sys_ = GaborSystem(chi(0, params["n"]), 1, 1)
    else:
        if args.g is None:
            raise InputError(f"--g is required for family {name}")
        g = _step(args.g, False)
        sys_ = GaborSystem(g, 1, 1)
        if name == "two-overlap":
            cell = find_two_overlap_cell(g)
            if cell is None:
                raise InputError("no matching cell: the H-gap of this window is positive")
            params.update(g=g, m=cell[0], E=cell[1])
        else:
            lo, hi = (parse_rational(t) for t in args.E.split(","))
            params["E"] = (lo, hi)
    ns = [int(t) for t in args.n_list.split(",") if t.strip()]
    jobs = [(name, params, sys_, n) for n in ns]
    if args.jobs > 1 and len(jobs) > 1 and name != "two-overlap":
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            table = list(pool.map(_witness_row, jobs))
    else:
        table = [_witness_row(j) for j in jobs]
    second = "coeff_norm_sq" if name == "riesz" else "energy"
    js = [{"n": n, "norm_sq": _num(nf), second: _num(e), "ratio": _num(r)} for n, nf, e, r in table]
    rows = [[n, _num(nf), _num(e), _num(r)] for n, nf, e, r in table]
    return js, ["n", "norm_sq", second, "ratio"], rows, False


def _add_system(p, need_g=True):
    p.add_argument("--g", required=need_g, help="window as JSON [[lo,hi,value],...]")
    p.add_argument("--a", default="1", help="translation step (p/q)")
    p.add_argument("--b", default="1", help="modulation step (p/q)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaborstep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--approx", action="store_true", help="accept float literals")
    common.add_argument("--strict", action="store_true", help="exit 3 on inconclusive results")
    common.add_argument("--tolerance", type=float, default=None, help="approx-mode equality tolerance")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gk", parents=[common], help="correlation functions G_k")
    _add_system(p)
    p.set_defaults(func=cmd_gk)

    p = sub.add_parser("cc", parents=[common], help="CC-condition frame bounds")
    _add_system(p)
    p.add_argument("--nonneg-necessary", action="store_true",
                   help="report NotFrame for nonnegative windows failing the condition")
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("energy", parents=[common], help="frame energy of a test function")
    _add_system(p)
    p.add_argument("--f", required=True, help="test function as JSON")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("frameset", parents=[common], help="integer-translate frame set test")
    p.add_argument("--exps", required=True, help="comma-separated integers")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_frameset)

    p = sub.add_parser("abc", parents=[common], help="classify (chi_[0,c), a, b)")
    p.add_argument("--a", required=True, help="p/q or irr:<approx>")
    p.add_argument("--b", default="1")
    p.add_argument("--c", required=True, help="p/q or irr:<approx>")
    p.set_defaults(func=cmd_abc)

    p = sub.add_parser("chart", parents=[common], help="classification over an (a, c) grid")
    p.add_argument("--a-grid", required=True, help="lo:hi:step or comma list")
    p.add_argument("--c-grid", required=True, help="lo:hi:step or comma list")
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("walnut", parents=[common], help="one column of the Walnut band matrix")
    _add_system(p)
    p.add_argument("--column", type=int, default=0)
    p.set_defaults(func=cmd_walnut)

    p = sub.add_parser("fundamental-check", parents=[common],
                       help="square-root identity, or representation agreement with --g/--f")
    _add_system(p, need_g=False)
    p.add_argument("--f", default=None)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fundamental)

    p = sub.add_parser("witness", parents=[common], help="decay table of a witness family")
    p.add_argument("--family", required=True,
                   choices=("case1", "case2", "riesz", "periodization", "two-overlap"))
    p.add_argument("--c", default="2", help="window length for case1/case2/riesz")
    p.add_argument("--g", default=None, help="window for periodization/two-overlap")
    p.add_argument("--E", default="0,1", help="interval lo,hi for periodization")
    p.add_argument("--n-list", default="2,4,8,16,32,64")
    p.set_defaults(func=cmd_witness)
    return parser


def _emit(fmt: str, js, header, rows, out) -> None:
    if fmt == "json":
        out.write(json.dumps(js, indent=2, sort_keys=True, default=_num) + "\n")
        return
    if isinstance(rows, str):
        out.write(rows)
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([json.dumps(x) if isinstance(x, (list, dict)) else x for x in r])
    out.write(buf.getvalue())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tolerance is not None:
        set_tolerance(args.tolerance)
    try:
        js, header, rows, inconclusive = args.func(args)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"gaborstep {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args.format, js, header, rows, sys.stdout)
    if args.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
