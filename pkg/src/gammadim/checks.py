"""Self-contained verification suite behind ``gammadim check``.

Each check re-derives its expected values through an independent route
(bounded enumeration, a per-coordinate evaluation oracle, literal collapse
iteration) and compares them against the package's closed forms.  The
functions return (ok, detail) and never raise on a mere mismatch, so the
CLI can report every failure in one run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .boolspace import OrdinalSpace, cb_rank_space, derivative_chain
from .dimension import CollapseClass, Terminal, breadth_cone, mdim_cone, s_chain
from .filters import (
    colon,
    contains,
    enumerate_cone,
    enumerate_filters,
    enumerate_prime_filters,
    inverse_colon,
)
from .lgroup import INF, LexZ, ProductZ, RationalChain, Step, Trivial, parse_gamma
from .ordinal import ZERO, Ordinal, is_limit, mul, parse_ordinal
from .ziegler import (
    PpTypeTable,
    ass_div_rank,
    build_type_table,
    cb_bounds,
    cb_stratify,
    classify,
    foundation_rank,
    leq_mixed,
    leq_pp,
    pp,
    prest_dual,
    raw_pp,
    spec_star_cb,
    validate_type_table,
)

__all__ = ["CheckResult", "ALL_CHECKS", "run_checks", "select_checks"]


@dataclass
class CheckResult:
    tag: str
    title: str
    ok: bool
    detail: str
    seconds: float


ZOO_TOPS = ["5", "w", "w*2", "w^2", "w^2*3+w", "w^w"]
FINITE_RANK_TOPS = ["5", "w", "w*2", "w^2", "w^2*3+w"]
ZOO_SPECS = ["Z", "Z^2", "Z^3", "Z^4", "lex(Z,Z)", "lex(Z,Z,Z)", "lex(Z,Z,Z,Z)",
             "C(5)", "C(w)", "C(w*2)", "C(w^2)", "C(w^2*3+w)",
             "Cminus(5)", "Cminus(w)", "Cminus(w*2)", "Cminus(w^2)", "Cminus(w^2*3+w)",
             "triv"]


def _space(lit: str) -> OrdinalSpace:
    return OrdinalSpace.interval(parse_ordinal(lit))


def check_mdim_c() -> tuple[bool, str]:
    problems = []
    for lit in ZOO_TOPS:
        space = _space(lit)
        group = Step(space, minus=False)
        want = cb_rank_space(space) + Ordinal.from_int(1)
        got = mdim_cone(group)
        if got.value != want:
            problems.append(f"C({lit}): {got.value} != rank+1 = {want}")
            continue
        if lit in FINITE_RANK_TOPS:
            if got.method != "both":
                problems.append(f"C({lit}): expected literal iteration, got {got.method}")
                continue
            spaces = derivative_chain(space)
            steps = got.chain.steps
            for i, sub_space in enumerate(spaces[:-1]):
                if steps[i] != Step(sub_space, minus=False):
                    problems.append(f"C({lit}): stage {i} is {steps[i]}, not C on {sub_space}")
            if not steps[-1].is_trivial():
                problems.append(f"C({lit}): chain does not end trivial")
    return (not problems, "; ".join(problems) or f"{len(ZOO_TOPS)} spaces, closed = literal")


def check_mdim_cminus() -> tuple[bool, str]:
    problems = []
    for lit in ZOO_TOPS:
        space = _space(lit)
        want = cb_rank_space(space)
        got = mdim_cone(Step(space, minus=True))
        if got.value != want:
            problems.append(f"Cminus({lit}): {got.value} != rank = {want}")
    limit_val = mdim_cone(Step(_space("w^w"), minus=True)).value
    if not is_limit(limit_val):
        problems.append(f"Cminus(w^w) must realise a limit value, got {limit_val}")
    return (not problems, "; ".join(problems) or f"{len(ZOO_TOPS)} spaces, limit value {limit_val}")


# -- the per-coordinate evaluation oracle -------------------------------------


def _oracle_coord_leq(c, d, rhs) -> bool:
    # single summand against a join, over one totally ordered coordinate
    if c is INF or d == 0:
        return True
    for a, b in rhs:
        if a is INF or b == 0:
            continue
        if a <= c and (b is INF or (d is not INF and d <= b)):
            return True
    return False


def _oracle_leq(lhs, rhs, n) -> bool:
    def proj(x, k):
        return INF if x is INF else x[k]

    for c, d in lhs:
        for k in range(n):
            rhs_k = [(proj(a, k), proj(b, k)) for a, b in rhs]
            if not _oracle_coord_leq(proj(c, k), proj(d, k), rhs_k):
                return False
    return True


def check_leq_oracle() -> tuple[bool, str]:
    group = ProductZ(2)
    values = [(x, y) for x in range(5) for y in range(5)] + [INF]
    summands = [(c, d) for c in values for d in values]
    formulas = {s: raw_pp(group, [s]) for s in summands}
    total = 0
    bad = 0
    for s in summands:
        phi = formulas[s]
        for t in summands:
            got = leq_pp(phi, formulas[t])
            want = _oracle_leq([s], [t], 2)
            total += 1
            if got != want:
                bad += 1
                if bad <= 3:
                    return False, f"disagree on {s} <= {t}: {got} vs {want}"
    rng = random.Random(20260810)
    for _ in range(60_000):
        lhs = [rng.choice(summands) for _ in range(rng.randint(1, 2))]
        rhs = [rng.choice(summands) for _ in range(rng.randint(1, 2))]
        got = leq_pp(raw_pp(group, lhs), raw_pp(group, rhs))
        want = _oracle_leq(lhs, rhs, 2)
        total += 1
        if got != want:
            return False, f"disagree on {lhs} <= {rhs}: {got} vs {want}"
    return True, f"{total} comparisons, 100% agreement"


def _triple_exhaustive(group, values) -> str | None:
    """Mixed order test == product-ideal arithmetic == formula order, on a grid."""
    from .lgroup import cone_add, cone_leq, cone_meet

    adds = {(x, y): cone_add(group, x, y) for x in values for y in values}
    lhs_forms = {(c, d): raw_pp(group, [(c, d)]) for c in values for d in values}
    zero = group.zero()
    rhs_forms = {(a, b): raw_pp(group, [(b, INF), (zero, a)]) for a in values for b in values}
    for c in values:
        for d in values:
            cd = adds[c, d]
            lhs_form = lhs_forms[c, d]
            for a in values:
                ac = adds[a, c]
                for b in values:
                    mixed = leq_mixed(group, c, d, a, b)
                    arith = cone_leq(group, cone_meet(group, adds[a, b], cd), ac)
                    if mixed != arith:
                        return f"mixed != arithmetic at ({c},{d},{a},{b})"
                    if mixed != leq_pp(lhs_form, rhs_forms[a, b]):
                        return f"mixed != formula order at ({c},{d},{a},{b})"
    return None


def check_manip_duality() -> tuple[bool, str]:
    vals1 = [(k,) for k in range(5)] + [INF]
    bad = _triple_exhaustive(ProductZ(1), vals1)
    if bad:
        return False, f"Z: {bad}"
    z2 = ProductZ(2)
    vals2 = [(x, y) for x in range(5) for y in range(5)] + [INF]
    bad = _triple_exhaustive(z2, vals2)
    if bad:
        return False, f"Z^2: {bad}"

    rng = random.Random(47)
    vals = [(x, y) for x in range(5) for y in range(5)] + [INF]
    formulas = []
    for _ in range(1000):
        k = rng.randint(1, 3)
        formulas.append(pp(z2, [(rng.choice(vals), rng.choice(vals)) for _ in range(k)]))
    for phi in formulas:
        if prest_dual(prest_dual(phi)) != phi:
            return False, f"double dual moved {phi}"
    for _ in range(500):
        phi, psi = rng.choice(formulas), rng.choice(formulas)
        if leq_pp(phi, psi) != leq_pp(prest_dual(psi), prest_dual(phi)):
            return False, f"duality not antitone on {phi}, {psi}"
    return True, "triple equivalence exhaustive; duality involutive and antitone on 1000 forms"


def check_filter_roundtrip() -> tuple[bool, str]:
    groups = [ProductZ(1), LexZ(2), ProductZ(3)]
    total = 0
    for group in groups:
        filters = enumerate_filters(group, 5)
        primes = [f for f in filters if f in enumerate_prime_filters(group, 5)]
        shifts = enumerate_cone(group, 5)
        for f in filters:
            for k in shifts:
                if colon(inverse_colon(f, k), k) != f:
                    return False, f"(J_K:K) != J for {f}, k={k} over {group}"
                total += 1
        for f in primes:
            for k in shifts:
                if contains(f, k):
                    continue
                if inverse_colon(colon(f, k), k) != f:
                    return False, f"(J:K)_K != J for {f}, k={k} over {group}"
                total += 1
    return True, f"{total} round-trips exact over Z, lex(Z,Z), Z^3"


def _check_zg(spec: str, expected: int) -> tuple[bool, str]:
    group = parse_gamma(spec)
    strat = cb_stratify(group, 6)
    lo, hi = cb_bounds(group)
    want = Ordinal.from_int(expected)
    if strat.closed_rank != want:
        return False, f"closed rank {strat.closed_rank} != {expected}"
    if strat.direct_rank != want:
        return False, f"direct stratification gives {strat.direct_rank}, not {expected}"
    if not (lo <= want <= hi):
        return False, f"rank {want} outside bounds [{lo}, {hi}]"
    sizes = ",".join(str(len(layer)) for layer in strat.layers)
    return True, f"direct = closed = {expected}; bounds [{lo},{hi}]; layers {sizes}"


def check_zg_z() -> tuple[bool, str]:
    return _check_zg("Z", 2)


def check_zg_lex() -> tuple[bool, str]:
    return _check_zg("lex(Z,Z)", 4)


def check_zg_prod() -> tuple[bool, str]:
    return _check_zg("Z^3", 2)


def check_classify() -> tuple[bool, str]:
    r = classify(RationalChain())
    if r.mdim_gamma is not None or r.breadth_gamma != ZERO:
        return False, f"Q: mdim {r.mdim_gamma}, breadth {r.breadth_gamma}"
    if not r.superdecomposable_exists or r.superdec_witness_route != "dense-chain-localization":
        return False, f"Q: superdecomposable route wrong: {r.superdec_witness_route}"
    checked = 0
    for spec in ZOO_SPECS:
        rep = classify(parse_gamma(spec))
        if rep.mdim_gamma is None:
            return False, f"{spec}: unexpectedly undefined"
        if rep.superdecomposable_exists:
            return False, f"{spec}: claims a superdecomposable"
        if rep.breadth_pp1 != rep.mdim_gamma:
            return False, f"{spec}: breadth_pp1 {rep.breadth_pp1} != mdim {rep.mdim_gamma}"
        checked += 1
    return True, f"Q routed through the dense chain; {checked} defined-dimension groups consistent"


def check_spec_star() -> tuple[bool, str]:
    for spec in ["Z", "lex(Z,Z)", "Z^2", "Cminus(w)"]:
        group = parse_gamma(spec)
        rep = spec_star_cb(group)
        want = mdim_cone(group).value
        if rep.value != want:
            return False, f"{spec}: {rep.value} != mdim {want}"
        tops = [r for _, r in rep.prime_ranks]
        if max(tops, default=ZERO) != want:
            return False, f"{spec}: no prime of maximal rank"
    return True, "inverse spectrum rank = cone m-dimension on all four groups"


def check_s_chains() -> tuple[bool, str]:
    for spec in ZOO_SPECS:
        group = parse_gamma(spec)
        m = mdim_cone(group)
        two = s_chain(group, CollapseClass.TWO)
        if two.terminal is not Terminal.TRIVIAL:
            return False, f"{spec}: TWO chain ends {two.terminal.value}"
        if Ordinal.from_int(two.terminal_stage) != m.value:
            return False, f"{spec}: TWO chain length {two.terminal_stage} != mdim {m.value}"
        br = breadth_cone(group)
        chain = s_chain(group, CollapseClass.CHAIN)
        if chain.terminal is not Terminal.TOTALLY_ORDERED:
            return False, f"{spec}: CHAIN chain ends {chain.terminal.value}"
        if Ordinal.from_int(chain.terminal_stage) != br.value:
            return False, f"{spec}: CHAIN terminal at {chain.terminal_stage} != breadth {br.value}"
    q = s_chain(RationalChain(), CollapseClass.TWO)
    if q.terminal is not Terminal.STALLED or q.terminal_stage != 0:
        return False, f"Q: TWO chain should stall immediately, got {q.terminal.value}"
    return True, f"{len(ZOO_SPECS)} groups: stage counts match both dimensions; Q stalls"


def check_isolation() -> tuple[bool, str]:
    for spec in ["Z", "Z^2"]:
        strat = cb_stratify(parse_gamma(spec), 6)
        for point in strat.points:
            ranks = ass_div_rank(point)
            layer = strat.layer_index(point)
            isolated = layer == 0
            if isolated != (ranks == (ZERO, ZERO)):
                return False, f"{spec}/{point.label}: isolated={isolated} but ranks {ranks}"
            bound = foundation_rank(ranks)
            if Ordinal.from_int(layer) > bound:
                return False, f"{spec}/{point.label}: layer {layer} above foundation rank {bound}"
    return True, "isolation = zero ranks; layers below foundation rank (Z and Z^2, bound 6)"


def check_type_tables() -> tuple[bool, str]:
    z = ProductZ(1)
    generator_sets = [
        [],                                     # type of a unit
        [pp(z, [((2,), (3,))])],                # bounded torsion, bounded divisibility
        [pp(z, [((1,), INF)])],                 # divisible once
        [pp(z, [((0,), (2,))]), pp(z, [((3,), INF)])],
        [pp(z, [((0,), (1,))])],                # simple torsion
    ]
    for gens in generator_sets:
        table = build_type_table(z, gens, 5)
        ok, problems = validate_type_table(table)
        if not ok:
            return False, f"honest table failed: {problems[:2]}"
    base = build_type_table(z, [pp(z, [((2,), (3,))])], 5)
    broken = dict(base.table)
    # dropping a member of F(1) from F(2) breaks F(1 ^ 2) = F(1) & F(2)
    b1, b2 = (1,), (2,)
    victims = sorted(broken[b1] - {INF}, reverse=True)
    if not victims:
        return False, "could not build the corrupted table"
    broken[b2] = broken[b2] - {victims[0]}
    corrupted = PpTypeTable(z, base.grid, broken, base.contains_bottom)
    ok, _ = validate_type_table(corrupted)
    if ok:
        return False, "validator accepted a table violating the meet law"
    return True, f"{len(generator_sets)} honest tables pass; corrupted table rejected"


ALL_CHECKS: list[tuple[str, str, Callable[[], tuple[bool, str]]]] = [
    ("mdimCXZ", "step-function cones: m-dimension = space rank + 1", check_mdim_c),
    ("C-mdim", "vanishing-at-top cones: m-dimension = space rank", check_mdim_cminus),
    ("leq-oracle", "formula order vs per-coordinate evaluation oracle", check_leq_oracle),
    ("manip-duality", "mixed-order triple equivalence and duality involution", check_manip_duality),
    ("filter-roundtrip", "filter shift round-trips over Z, lex(Z,Z), Z^3", check_filter_roundtrip),
    ("zg-z", "spectrum rank over Z: direct = closed = 2", check_zg_z),
    ("zg-lex", "spectrum rank over lex(Z,Z): direct = closed = 4", check_zg_lex),
    ("zg-prod", "spectrum rank over Z^3: direct = closed = 2", check_zg_prod),
    ("classify", "classification of Q and the defined-dimension zoo", check_classify),
    ("spec-star", "inverse prime spectrum rank = m-dimension", check_spec_star),
    ("s-chains", "localisation chain lengths match both dimensions", check_s_chains),
    ("isolation", "isolation and foundation-rank bound on Z, Z^2", check_isolation),
    ("type-tables", "type tables validate; corrupted table rejected", check_type_tables),
]


def select_checks(tag_filter: str | None):
    if not tag_filter:
        return list(ALL_CHECKS)
    return [entry for entry in ALL_CHECKS if tag_filter in entry[0]]


def run_checks(tag_filter: str | None = None) -> list[CheckResult]:
    results = []
    for tag, title, fn in select_checks(tag_filter):
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(tag, title, ok, detail, time.perf_counter() - start))
    return results
