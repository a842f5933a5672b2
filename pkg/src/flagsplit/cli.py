"""Command-line front end.

Subcommands: rs, weight, char, filt, g1, poly, sln, verify.  Exit codes:
0 when the requested property holds (or the report is clean), 1 when a
checked property fails, 2 for usage or input errors.  With ``--json`` the
output is a single deterministic JSON document (stable key order, no
timing fields), so identical inputs and seed produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import charalg, fpoly, slnsplit, verify
from .errors import InputError, ResourceLimitError
from .rootdata import parabolic_subset, parse_system

# flags whose values may start with "-" (e.g. --weight -1,1); merged into
# --flag=value before argparse sees them
_VALUE_FLAGS = {"--weight", "--word", "--parabolic", "--subset", "--ideal", "--compat"}


def _preprocess(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse integer list {text!r}") from exc


def _emit(obj: dict, lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _char_json(ch: charalg.Character) -> list[dict]:
    return ch.to_json_obj()


def _char_lines(ch: charalg.Character) -> list[str]:
    out = [f"  {list(w)}  x{m}" for w, m in ch.items()]
    out.append(f"  dimension {ch.dimension()}")
    return out


def _common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # placed on the root parser (with real defaults) and on every leaf
    # subparser (with SUPPRESS), so the flags are accepted in both positions
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true",
                        **({"default": d} if suppress else {}),
                        help="machine-readable output")
    parser.add_argument("--seed", type=int,
                        default=d if suppress else 0)
    parser.add_argument("--term-cap", type=int,
                        default=d if suppress else charalg.DEFAULT_TERM_CAP)
    parser.add_argument("--dim-cap", type=int,
                        default=d if suppress else charalg.DEFAULT_DIM_CAP)
    parser.add_argument("--weyl-cap", type=int,
                        default=d if suppress else 1152)
    parser.add_argument("--enum-cap", type=int,
                        default=d if suppress else fpoly.DEFAULT_ENUM_CAP)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagsplit",
        description="Exact root-system, character and Frobenius-splitting checks.",
    )
    _common_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p_rs = sub.add_parser("rs", help="root-system data")
    rs_sub = p_rs.add_subparsers(dest="action", required=True)
    p_show = rs_sub.add_parser("show", parents=[common])
    p_show.add_argument("system")

    p_weight = sub.add_parser("weight", help="weight operations")
    w_sub = p_weight.add_subparsers(dest="action", required=True)
    p_reduce = w_sub.add_parser("reduce", parents=[common])
    p_reduce.add_argument("system")
    p_reduce.add_argument("--weight", required=True)
    p_reduce.add_argument("--degree", type=int, required=True)

    p_char = sub.add_parser("char", help="character computations")
    c_sub = p_char.add_subparsers(dest="action", required=True)
    for name in ("weyl", "euler"):
        pc = c_sub.add_parser(name, parents=[common])
        pc.add_argument("system")
        pc.add_argument("--weight", required=True)
    pc = c_sub.add_parser("sym", parents=[common])
    pc.add_argument("system")
    pc.add_argument("--degree", type=int, required=True)
    pc.add_argument("--parabolic", default="")
    pc = c_sub.add_parser("ext", parents=[common])
    pc.add_argument("system")
    pc.add_argument("--j", type=int, required=True)
    pc = c_sub.add_parser("trunc", parents=[common])
    pc.add_argument("system")
    pc.add_argument("--p", type=int, required=True)

    p_filt = sub.add_parser("filt", parents=[common],
                            help="graded sections with decompositions")
    p_filt.add_argument("system")
    p_filt.add_argument("--weight", required=True)
    p_filt.add_argument("--max-degree", type=int, required=True)
    p_filt.add_argument("--parabolic", default="")

    p_g1 = sub.add_parser("g1", parents=[common],
                          help="Frobenius-kernel cohomology characters")
    p_g1.add_argument("system")
    p_g1.add_argument("--word", default="")
    p_g1.add_argument("--weight", required=True)
    p_g1.add_argument("--p", type=int, required=True)
    p_g1.add_argument("--max-i", type=int, default=6)

    p_poly = sub.add_parser("poly", help="polynomial splitting checks")
    y_sub = p_poly.add_subparsers(dest="action", required=True)
    pp = y_sub.add_parser("check", parents=[common])
    pp.add_argument("--file", required=True)
    pp = y_sub.add_parser("trace", parents=[common])
    pp.add_argument("--file", required=True)
    pp.add_argument("--times", required=True)
    pp.add_argument("--out")
    pp = y_sub.add_parser("compat", parents=[common])
    pp.add_argument("--file", required=True)
    pp.add_argument("--ideal", required=True)

    p_sln = sub.add_parser("sln", help="type-A chart splittings")
    s_sub = p_sln.add_subparsers(dest="action", required=True)
    for name in ("build", "check", "mvk", "canonical", "parabolic"):
        ps = s_sub.add_parser(name, parents=[common])
        ps.add_argument("--n", type=int, required=True)
        ps.add_argument("--p", type=int, required=True)
        if name == "build":
            ps.add_argument("--out")
        if name == "mvk":
            ps.add_argument("--compat", default="")
        if name == "parabolic":
            ps.add_argument("--subset", required=True)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="batch invariant suites")
    p_verify.add_argument("suite", choices=verify.SUITES)
    p_verify.add_argument("--n", type=int, default=1)
    p_verify.add_argument("--p", type=int, default=2)
    p_verify.add_argument("--rank-cap", type=int, default=3)

    return parser


# -- handlers -----------------------------------------------------------------

def _cmd_rs(args) -> int:
    rs = parse_system(args.system)
    obj = {
        "type": rs.type_label,
        "rank": rs.rank,
        "N": rs.num_positive_roots,
        "coxeter_number": rs.coxeter_number,
        "rho": list(rs.rho),
        "cartan": [list(row) for row in rs.cartan],
        "symmetrizers": list(rs.symmetrizers),
        "highest_root": list(rs.highest_root.simple),
        "bad_primes": list(rs.bad_primes),
        "min_good_prime": rs.minimal_good_prime(),
        "positive_roots": [
            {"simple": list(r.simple), "fund": list(r.fund), "coroot": list(r.coroot)}
            for r in rs.positive_roots
        ],
    }
    lines = [
        f"{rs.type_label}{rs.rank}: {rs.num_positive_roots} positive roots, "
        f"Coxeter number {rs.coxeter_number}",
        f"rho = {list(rs.rho)}",
        f"good primes: p >= {rs.minimal_good_prime()} (bad: {list(rs.bad_primes) or 'none'})",
        "positive roots (simple | fundamental):",
    ]
    lines += [f"  {list(r.simple)} | {list(r.fund)}" for r in rs.positive_roots]
    _emit(obj, lines, args.json)
    return 0


def _cmd_weight_reduce(args) -> int:
    rs = parse_system(args.system)
    lam = _parse_ints(args.weight)
    trace = rs.cone_reduce(lam, args.degree)
    obj = {
        "type": rs.type_label,
        "rank": rs.rank,
        "weight": list(lam),
        "degree": args.degree,
        "steps": list(trace.steps),
        "intermediates": [list(w) for w in trace.intermediates],
        "outcome": trace.outcome,
    }
    if trace.outcome == "dominant":
        obj["dominant_weight"] = list(trace.dominant_weight)
        obj["remaining_degree"] = trace.remaining_degree
        lines = [
            f"Dominant({list(trace.dominant_weight)}, {trace.remaining_degree}) "
            f"via steps {list(trace.steps)}"
        ]
    else:
        lines = [f"AllCohomologyVanishes via steps {list(trace.steps)}"]
    _emit(obj, lines, args.json)
    return 0


def _cmd_char(args) -> int:
    rs = parse_system(args.system)
    if args.action == "weyl":
        ch = charalg.weyl_character(rs, _parse_ints(args.weight), dim_cap=args.dim_cap)
    elif args.action == "euler":
        ch = charalg.euler_char(rs, _parse_ints(args.weight), dim_cap=args.dim_cap)
    elif args.action == "sym":
        par = parabolic_subset(rs, _parse_ints(args.parabolic))
        ch = charalg.sym_power_char(par, args.degree, term_cap=args.term_cap)
    elif args.action == "ext":
        ch = charalg.exterior_power_char(rs, args.j, term_cap=args.term_cap)
    else:
        ch = charalg.truncated_char(rs, args.p, term_cap=args.term_cap)
    obj = {
        "type": rs.type_label,
        "rank": rs.rank,
        "action": args.action,
        "character": _char_json(ch),
        "dimension": ch.dimension(),
    }
    _emit(obj, _char_lines(ch), args.json)
    return 0


def _cmd_filt(args) -> int:
    rs = parse_system(args.system)
    par = parabolic_subset(rs, _parse_ints(args.parabolic))
    lam = _parse_ints(args.weight)
    gs = charalg.graded_section_char(
        par, lam, args.max_degree, dim_cap=args.dim_cap, term_cap=args.term_cap
    )
    degrees = []
    for (n, ch), (_, dec) in zip(gs.graded.pieces, gs.decompositions):
        degrees.append(
            {
                "degree": n,
                "character": _char_json(ch),
                "dimension": ch.dimension(),
                "decomposition": dec.to_json_obj(),
            }
        )
    obj = {
        "type": rs.type_label,
        "rank": rs.rank,
        "weight": list(lam),
        "parabolic": sorted(par.subset),
        "degrees": degrees,
        "all_ok": gs.all_ok,
    }
    lines = []
    for d in degrees:
        dec = d["decomposition"]
        summary = (
            " + ".join(f"{e['mult']}*H0({e['lambda']})" for e in dec["entries"])
            if dec["ok"] else f"FAILS at {dec['failure_weight']} x{dec['failure_mult']}"
        )
        lines.append(f"degree {d['degree']}: dim {d['dimension']} = {summary or '0'}")
    lines.append("all degrees decompose" if gs.all_ok else "counterexample found")
    _emit(obj, lines, args.json)
    return 0 if gs.all_ok else 1


def _cmd_g1(args) -> int:
    rs = parse_system(args.system)
    word = _parse_ints(args.word)
    lam = _parse_ints(args.weight)
    table = charalg.g1_cohomology_char(
        rs, word, lam, args.p, i_max=args.max_i,
        dim_cap=args.dim_cap, term_cap=args.term_cap,
    )
    obj = {
        "type": rs.type_label,
        "rank": rs.rank,
        "word": list(word),
        "weight": list(lam),
        "p": args.p,
        "cohomology": [
            {"i": i, "character": _char_json(ch), "dimension": ch.dimension()}
            for i, ch in sorted(table.items())
        ],
    }
    lines = [
        f"H^{i}: dim {ch.dimension()}" for i, ch in sorted(table.items())
    ]
    _emit(obj, lines, args.json)
    return 0


def _cmd_poly(args) -> int:
    if args.action == "check":
        f = fpoly.load_poly(args.file)
        res = fpoly.is_splitting_function(f)
        obj = {"splitting": res.ok}
        if res.witness is not None:
            obj["witness"] = list(res.witness)
        lines = ["splitting" if res.ok else f"not a splitting; witness {res.witness}"]
        _emit(obj, lines, args.json)
        return 0 if res.ok else 1
    if args.action == "trace":
        f = fpoly.load_poly(args.file)
        g = fpoly.load_poly(args.times)
        out = fpoly.frobenius_trace(f, g, term_cap=args.term_cap)
        if args.out:
            fpoly.save_poly(out, args.out)
        obj = fpoly.poly_to_json_obj(out)
        _emit(obj, [repr(out)], args.json or not args.out)
        return 0
    f = fpoly.load_poly(args.file)
    ideal = fpoly.VariableIdeal.from_names(f, args.ideal.split(","))
    res = fpoly.splits_ideal_compatibly(f, ideal, enum_cap=args.enum_cap)
    obj = {"compatible": res.ok}
    if res.witness_exponent is not None:
        obj["witness_exponent"] = list(res.witness_exponent)
        obj["witness_trace"] = fpoly.poly_to_json_obj(res.witness_trace)
    lines = [
        "compatibly split" if res.ok
        else f"ideal not preserved; witness exponent {res.witness_exponent}"
    ]
    _emit(obj, lines, args.json)
    return 0 if res.ok else 1


def _cmd_sln(args) -> int:
    if args.action == "build":
        cf = slnsplit.build_chart_function(args.n, args.p, term_cap=args.term_cap)
        if args.out:
            fpoly.save_poly(cf.poly, args.out)
            _emit(
                {"written": args.out, "terms": cf.poly.term_count()},
                [f"wrote {cf.poly.term_count()} terms to {args.out}"],
                args.json,
            )
        else:
            _emit(fpoly.poly_to_json_obj(cf.poly), [repr(cf.poly)], args.json)
        return 0
    if args.action == "check":
        res = slnsplit.check_chart_splitting(args.n, args.p, term_cap=args.term_cap)
        obj = {"splitting": res.ok}
        if res.witness is not None:
            obj["witness"] = list(res.witness)
        _emit(obj, ["splitting" if res.ok else f"FAILS; witness {res.witness}"], args.json)
        return 0 if res.ok else 1
    if args.action == "mvk":
        cf = slnsplit.build_chart_function(args.n, args.p, term_cap=args.term_cap)
        comp = slnsplit.mvk_component(cf)
        res = fpoly.is_splitting_function(comp)
        obj = {
            "component_terms": comp.term_count(),
            "splitting": res.ok,
            "component": fpoly.poly_to_json_obj(comp),
        }
        lines = [f"component has {comp.term_count()} terms; splitting: {res.ok}"]
        code = 0 if res.ok else 1
        if args.compat:
            subset = _parse_ints(args.compat)
            cres = slnsplit.compat_check(
                args.n, args.p, subset, term_cap=args.term_cap, enum_cap=args.enum_cap
            )
            obj["compatible"] = cres.ok
            if cres.witness_exponent is not None:
                obj["witness_exponent"] = list(cres.witness_exponent)
            lines.append(f"compatibility with I={list(subset)}: {cres.ok}")
            code = max(code, 0 if cres.ok else 1)
        _emit(obj, lines, args.json)
        return code
    if args.action == "canonical":
        res = slnsplit.canonical_check(args.n, args.p, term_cap=args.term_cap)
        obj = {
            "canonical": res.ok,
            "t_invariant": res.t_invariant,
            "directions": [
                {
                    "simple_index": d.simple_index,
                    "t_degree": d.t_degree,
                    "degree_ok": d.degree_ok,
                    "weights_ok": d.weights_ok,
                }
                for d in res.directions
            ],
        }
        lines = [f"canonical: {res.ok} (T-invariant: {res.t_invariant})"] + [
            f"  direction {d.simple_index}: t-degree {d.t_degree}, "
            f"degree ok {d.degree_ok}, weights ok {d.weights_ok}"
            for d in res.directions
        ]
        _emit(obj, lines, args.json)
        return 0 if res.ok else 1
    subset = _parse_ints(args.subset)
    cf = slnsplit.build_parabolic_chart_function(
        args.n, args.p, subset, term_cap=args.term_cap
    )
    res = fpoly.is_splitting_function(cf.poly)
    obj = {
        "subset": list(subset),
        "variables": list(cf.poly.variables),
        "splitting": res.ok,
    }
    if res.witness is not None:
        obj["witness"] = list(res.witness)
    _emit(obj, [f"parabolic splitting for I={list(subset)}: {res.ok}"], args.json)
    return 0 if res.ok else 1


def _cmd_verify(args) -> int:
    cfg = verify.RunConfig(
        term_cap=args.term_cap,
        dim_cap=args.dim_cap,
        weyl_order_cap=args.weyl_cap,
        enum_cap=args.enum_cap,
        seed=args.seed,
        rank_cap=args.rank_cap,
    )
    report = verify.run_suite(args.suite, cfg, n=args.n, p=args.p)
    if args.json:
        print(json.dumps(report.to_json_obj(), sort_keys=True, indent=2))
    else:
        for c in report.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skip": "skip"}[c.status]
            print(f"[{mark}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        n_fail = sum(1 for c in report.checks if c.status == "fail")
        print(
            f"{len(report.checks)} checks, {n_fail} failures, "
            f"{report.elapsed_s:.2f}s"
        )
    return report.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_preprocess(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "rs":
            return _cmd_rs(args)
        if args.command == "weight":
            return _cmd_weight_reduce(args)
        if args.command == "char":
            return _cmd_char(args)
        if args.command == "filt":
            return _cmd_filt(args)
        if args.command == "g1":
            return _cmd_g1(args)
        if args.command == "poly":
            return _cmd_poly(args)
        if args.command == "sln":
            return _cmd_sln(args)
        return _cmd_verify(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
