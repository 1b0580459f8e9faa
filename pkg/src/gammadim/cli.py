"""Command line surface.

Subcommands: classify | mdim | breadth | chain | cbrank-space | zg | leq |
spec-star | check.  Reports are JSON by default (--format table for a
tab-delimited flattening); --figures DIR additionally renders a matplotlib
figure of the payload.  Exit codes: 0 success, 1 check failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .boolspace import OrdinalSpace, cb_rank_space, derivative_chain
from .checks import run_checks, select_checks
from .dimension import CollapseClass, breadth_cone, mdim_cone, s_chain
from .filters import UnsupportedGammaError, filter_to_json
from .lgroup import GammaSyntaxError, parse_element, parse_gamma
from .ordinal import Ordinal, OrdinalSyntaxError, parse_ordinal
from .ziegler import (
    cb_stratify,
    classify,
    leq_pp,
    point_to_json,
    pp,
    spec_star_cb,
    zg_points,
)

SCHEMA_VERSION = "1"


def _ord_str(value) -> str:
    return "undefined" if value is None else str(value)


def _chain_json(chain) -> dict:
    return {
        "class": chain.collapse_class.value,
        "steps": [{"alpha": str(Ordinal.from_int(i)), "group": g.spec()}
                  for i, g in enumerate(chain.steps)],
        "terminal": chain.terminal.value,
    }


def _dimension_payload(gamma: str, result) -> dict:
    return {
        "gamma": gamma,
        "value": _ord_str(result.value),
        "method": result.method,
        "chain": _chain_json(result.chain),
    }


def _classify_payload(report) -> dict:
    return {
        "gamma": report.gamma,
        "mdim_gamma": _ord_str(report.mdim_gamma),
        "breadth_gamma": _ord_str(report.breadth_gamma),
        "breadth_pp1": _ord_str(report.breadth_pp1),
        "pp1_has_mdim": report.pp1_has_mdim,
        "superdecomposable_exists": report.superdecomposable_exists,
        "superdec_witness_route": report.superdec_witness_route,
        "superdec_schema": report.superdec_schema,
        "zg_cb_bounds": None if report.zg_cb_bounds is None
        else [str(report.zg_cb_bounds[0]), str(report.zg_cb_bounds[1])],
        "zg_cb_exact": _ord_str(report.zg_cb_exact) if report.zg_cb_exact is not None else None,
        "krull_dim_one": report.krull_dim_one,
        "s_infty_stage": str(report.s_infty_stage),
        "s_infty_gamma": report.s_infty_gamma,
        "mdim_method": report.mdim_method,
        "breadth_method": report.breadth_method,
    }


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            rows.append((prefix, ",".join(str(v) for v in value)))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, str(value)))


def render_table(payload: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", payload, rows)
    return "\n".join(f"{k}\t{v}" for k, v in rows)


def _emit(args, command: str, payload: dict, elapsed: float) -> None:
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "elapsed_ms": round(1000 * elapsed, 3),
        **payload,
    }
    if args.format == "table":
        print(render_table(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=False))
    if getattr(args, "figures", None):
        from .figures import render_figure

        path = render_figure(command, payload, args.figures)
        if path:
            print(f"figure: {path}", file=sys.stderr)


def _cmd_dimension(args, which: str) -> int:
    group = parse_gamma(args.gamma)
    start = time.perf_counter()
    result = mdim_cone(group) if which == "mdim" else breadth_cone(group)
    payload = _dimension_payload(group.spec(), result)
    _emit(args, which, payload, time.perf_counter() - start)
    return 0


def _cmd_chain(args) -> int:
    group = parse_gamma(args.gamma)
    cls = CollapseClass.TWO if args.collapse_class == "two" else CollapseClass.CHAIN
    start = time.perf_counter()
    chain = s_chain(group, cls)
    payload = {"gamma": group.spec(), "chain": _chain_json(chain)}
    _emit(args, "chain", payload, time.perf_counter() - start)
    return 0


def _cmd_cbrank_space(args) -> int:
    top = parse_ordinal(args.top)
    space = OrdinalSpace.interval(top)
    start = time.perf_counter()
    rank = cb_rank_space(space)
    chain = [str(s) for s in derivative_chain(space)]
    payload = {"top": str(top), "cb_rank": str(rank), "derivative_chain": chain}
    _emit(args, "cbrank-space", payload, time.perf_counter() - start)
    return 0


def _cmd_zg(args) -> int:
    group = parse_gamma(args.gamma)
    start = time.perf_counter()
    payload: dict = {"gamma": group.spec(), "bound": args.bound}
    if args.stratify:
        strat = cb_stratify(group, args.bound)
        payload["points"] = [point_to_json(p) for p in strat.points]
        payload["stratification"] = {
            "layers": [[p.label for p in layer] for layer in strat.layers],
        }
        payload["cb_rank_direct"] = str(strat.direct_rank)
        payload["cb_rank_closed"] = str(strat.closed_rank)
    else:
        payload["points"] = [point_to_json(p) for p in zg_points(group, args.bound)]
    _emit(args, "zg", payload, time.perf_counter() - start)
    return 0


def _parse_pp(group, text: str):
    s = text.strip()
    if not (s.startswith("sum(") and s.endswith(")")):
        raise GammaSyntaxError("formula literal must look like sum((c;d),...)", 0)
    inner = s[4:-1]
    summands = []
    depth = 0
    current = ""
    parts = []
    for ch in inner:
        if ch == "(":
            depth += 1
            if depth == 1:
                current = ""
                continue
        if ch == ")":
            depth -= 1
            if depth == 0:
                parts.append(current)
                continue
        if depth >= 1:
            current += ch
    for part in parts:
        halves = part.split(";")
        if len(halves) != 2:
            raise GammaSyntaxError(f"summand {part!r} needs exactly one ';'", 0)
        summands.append((parse_element(group, halves[0]), parse_element(group, halves[1])))
    if not summands:
        raise GammaSyntaxError("empty formula", 0)
    return pp(group, summands)


def _cmd_leq(args) -> int:
    group = parse_gamma(args.gamma)
    start = time.perf_counter()
    lhs = _parse_pp(group, args.lhs)
    rhs = _parse_pp(group, args.rhs)
    payload = {
        "gamma": group.spec(),
        "lhs": str(lhs),
        "rhs": str(rhs),
        "holds": leq_pp(lhs, rhs),
    }
    _emit(args, "leq", payload, time.perf_counter() - start)
    return 0


def _cmd_spec_star(args) -> int:
    group = parse_gamma(args.gamma)
    start = time.perf_counter()
    report = spec_star_cb(group)
    payload = {
        "gamma": group.spec(),
        "cb_rank": str(report.value),
        "primes": [{"filter": label, "rank": str(rank)} for label, rank in report.prime_ranks],
    }
    _emit(args, "spec-star", payload, time.perf_counter() - start)
    return 0


def _cmd_classify(args) -> int:
    group = parse_gamma(args.gamma)
    start = time.perf_counter()
    payload = _classify_payload(classify(group))
    _emit(args, "classify", payload, time.perf_counter() - start)
    return 0


def _cmd_check(args) -> int:
    selection = select_checks(args.tag)
    if not selection:
        print(f"warning: no checks match tag {args.tag!r}", file=sys.stderr)
        return 0
    results = run_checks(args.tag)
    failures = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.tag:18s} {r.seconds:8.2f}s  {r.detail}")
        failures += 0 if r.ok else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammadim",
        description="ordinal-valued dimensions and spectrum ranks of lattice-ordered value groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gamma=True):
        if gamma:
            p.add_argument("--gamma", required=True, help="group spec, e.g. Z, Z^3, lex(Z,Z), Q, C(w^2), Cminus(w)")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--figures", metavar="DIR", help="also render a figure of the report into DIR")

    p = sub.add_parser("classify", help="full invariant report for a group")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("mdim", help="m-dimension of the extended positive cone")
    common(p)
    p.set_defaults(fn=lambda a: _cmd_dimension(a, "mdim"))

    p = sub.add_parser("breadth", help="breadth of the extended positive cone")
    common(p)
    p.set_defaults(fn=lambda a: _cmd_dimension(a, "breadth"))

    p = sub.add_parser("chain", help="collapse chain for a chosen class")
    common(p)
    p.add_argument("--class", dest="collapse_class", choices=["two", "chain"], default="two")
    p.set_defaults(fn=_cmd_chain)

    p = sub.add_parser("cbrank-space", help="rank and derivative chain of [0, top]")
    p.add_argument("--top", required=True, help="ordinal literal, e.g. w^2*3+w")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(fn=_cmd_cbrank_space)

    p = sub.add_parser("zg", help="spectrum points, optionally stratified")
    common(p)
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--stratify", action="store_true")
    p.set_defaults(fn=_cmd_zg)

    p = sub.add_parser("leq", help="order test between two formulas")
    common(p)
    p.add_argument("--lhs", required=True, help="sum((c;d),...) with ':'-separated coordinates or inf")
    p.add_argument("--rhs", required=True)
    p.set_defaults(fn=_cmd_leq)

    p = sub.add_parser("spec-star", help="rank of the inverse prime spectrum")
    common(p)
    p.set_defaults(fn=_cmd_spec_star)

    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("--suite", action="store_true", help="run every check (default)")
    p.add_argument("--tag", help="run only checks whose tag contains this string")
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GammaSyntaxError, OrdinalSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedGammaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
