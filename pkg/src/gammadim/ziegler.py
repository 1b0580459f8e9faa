"""The divisibility/annihilator formula lattice over a value group, and the
desk-scale point spectrum built on top of it.

A formula is a finite join of summands ``(c, d)``, read as "divisible by an
ideal of value c and annihilated by an ideal of value d"; ``INF`` is the
zero ideal, so ``(INF, 0)`` is the bottom (x = 0) and ``(0, INF)`` the top
(x = x).  The order is decided purely by cone arithmetic:

    (c, d) <= sum_i (a_i, b_i)   iff   c >= [meet_i (q(c+d, b_i) v a_i)] ^ (c+d)

with q the ideal-quotient helper.  Canonical forms are computed against the
chain structure (one staircase per chain view, a coordinate for product
groups), which makes structural equality semantic equality.

Spectrum points are shift-equivalence classes of admissible prime-filter
pairs; membership of a point in a basic open (c, d / a, b) asks for a pair
(I', J') in the class with d in I', a not in I', b in J', c not in J', and
is solved exactly by interval arithmetic over the class parameterisation.
Cantor-Bendixson layers are then computed two ways - literal isolation
peeling and per-class closed forms - and compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .dimension import breadth_cone, mdim_cone
from .filters import (
    LIMITCUT,
    PRINCIPAL,
    ZERO_IDEAL,
    AdmissiblePair,
    IdealFilter,
    PairClass,
    UnsupportedGammaError,
    canonical_pair,
    filter_to_json,
    limit_cut,
    principal,
    sharp,
    zero_ideal,
)
from .lgroup import (
    INF,
    GammaGroup,
    GroupMismatchError,
    LexZ,
    ProductZ,
    RationalChain,
    Step,
    Trivial,
    cone_add,
    cone_is_zero,
    cone_join,
    cone_leq,
    cone_meet,
    mult_prime_filters_report,
    quotient_op,
    render_element,
)
from .ordinal import ONE, ZERO, Ordinal, is_limit, mul, natural_sum, succ

__all__ = [
    "PpFormula",
    "pp",
    "bottom_pp",
    "top_pp",
    "leq_pp",
    "pp_equivalent",
    "meet_pp",
    "join_pp",
    "leq_mixed",
    "prest_dual",
    "translate_pp",
    "NotIsomorphicError",
    "UndefinedDimensionError",
    "UnboundedFragmentError",
    "PpTypeTable",
    "build_type_table",
    "validate_type_table",
    "BasicOpen",
    "ZgPoint",
    "zg_points",
    "member",
    "isolating_open",
    "rank_prime",
    "ass_div_rank",
    "foundation_rank",
    "Stratification",
    "cb_stratify",
    "cb_rank_zg_closed",
    "cb_rank_zg",
    "cb_bounds",
    "SpecStarReport",
    "spec_star_cb",
    "ClassifyReport",
    "classify",
]


class NotIsomorphicError(ValueError):
    pass


class UndefinedDimensionError(ValueError):
    pass


class UnboundedFragmentError(ValueError):
    pass


# -- formulas -----------------------------------------------------------------


@dataclass(frozen=True)
class PpFormula:
    """Join of (divisibility value, annihilator value) summands, canonical."""

    group: GammaGroup
    summands: tuple[tuple[object, object], ...]

    def __str__(self) -> str:
        inner = ",".join(
            f"({render_element(self.group, c)};{render_element(self.group, d)})"
            for c, d in self.summands
        )
        return f"sum({inner})"


def _validate_cone(group: GammaGroup, x):
    if x is INF:
        return
    group.validate(x)
    if not group.is_positive(x):
        raise ValueError(f"{x!r} is not in the positive cone of {group}")


def _normalize(group: GammaGroup, summands):
    """Drop degenerate summands; a pure bottom stays as the single (INF, 0)."""
    zero = group.zero()
    live = []
    for c, d in summands:
        _validate_cone(group, c)
        _validate_cone(group, d)
        if c is INF or cone_is_zero(group, d):
            continue
        live.append((c, d))
    if not live:
        return [(INF, zero)]
    return live


def raw_pp(group: GammaGroup, summands) -> PpFormula:
    """Non-canonical constructor for bulk comparisons; order-correct as is."""
    return PpFormula(group, tuple(_normalize(group, summands)))


def bottom_pp(group: GammaGroup) -> PpFormula:
    return PpFormula(group, ((INF, group.zero()),))


def top_pp(group: GammaGroup) -> PpFormula:
    return PpFormula(group, ((group.zero(), INF),))


def _summand_leq(group: GammaGroup, c, d, rhs) -> bool:
    cd = cone_add(group, c, d)
    acc = None
    for a, b in rhs:
        term = cone_join(group, quotient_op(group, cd, b), a)
        acc = term if acc is None else cone_meet(group, acc, term)
    acc = cone_meet(group, acc, cd)
    return cone_leq(group, acc, c)


def leq_pp(phi: PpFormula, psi: PpFormula) -> bool:
    if phi.group != psi.group:
        raise GroupMismatchError("formulas over different groups")
    return all(_summand_leq(phi.group, c, d, psi.summands) for c, d in phi.summands)


def pp_equivalent(phi: PpFormula, psi: PpFormula) -> bool:
    return leq_pp(phi, psi) and leq_pp(psi, phi)


def leq_mixed(group: GammaGroup, c, d, a, b) -> bool:
    """Order test (c, d) <= annihilator(a) + divisibility(b): q(b,c) ^ q(d,a) = 0."""
    for x in (c, d, a, b):
        _validate_cone(group, x)
    val = cone_meet(group, quotient_op(group, b, c), quotient_op(group, d, a))
    return cone_is_zero(group, val)


def meet_pp(phi: PpFormula, psi: PpFormula) -> PpFormula:
    """Lattice meet, expanded by distributivity over summand pairs."""
    if phi.group != psi.group:
        raise GroupMismatchError("formulas over different groups")
    g = phi.group
    out = [
        (cone_join(g, c1, c2), cone_meet(g, d1, d2))
        for c1, d1 in phi.summands
        for c2, d2 in psi.summands
    ]
    return pp(g, out)


def join_pp(phi: PpFormula, psi: PpFormula) -> PpFormula:
    if phi.group != psi.group:
        raise GroupMismatchError("formulas over different groups")
    return pp(phi.group, phi.summands + psi.summands)


# -- canonical forms -----------------------------------------------------------

_DEAD = object()  # marker: this chain view sees only bottoms


def _views(group: GammaGroup) -> int:
    """Number of chain views: coordinates for product groups, one otherwise."""
    if isinstance(group, ProductZ) and group.n >= 2:
        return group.n
    return 1


def _project(group: GammaGroup, x, k: int):
    if x is INF:
        return INF
    if isinstance(group, ProductZ) and group.n >= 2:
        return x[k]
    return x


def _chain_leq(group: GammaGroup, k: int, x, y) -> bool:
    if y is INF:
        return True
    if x is INF:
        return False
    if isinstance(group, ProductZ) and group.n >= 2:
        return x <= y
    return group.leq(x, y)


def _chain_zero(group: GammaGroup, k: int):
    if isinstance(group, ProductZ) and group.n >= 2:
        return 0
    return group.zero()


def _staircase(group: GammaGroup, k: int, summands):
    """Antichain of (c, d) corners of the view-k projection; [] if bottom."""
    zero = _chain_zero(group, k)
    pts = []
    for c, d in summands:
        ck, dk = _project(group, c, k), _project(group, d, k)
        if ck is INF or dk == zero:
            continue
        pts.append((ck, dk))
    corners = []
    for p in pts:
        if any(q != p and _chain_leq(group, k, q[0], p[0]) and _chain_leq(group, k, p[1], q[1])
               for q in pts):
            continue  # dominated: some q has smaller c and larger d
        if p not in corners:
            corners.append(p)
    return corners


def _sort_key(group: GammaGroup, x):
    if x is INF:
        return (1,)
    if isinstance(group, (ProductZ, LexZ)):
        return (0, x)
    if isinstance(group, Trivial):
        return (0,)
    return (0, x)  # Fraction orders natively


def pp(group: GammaGroup, summands) -> PpFormula:
    """Canonical constructor: the maximal single summands below the join.

    Candidate parameters are read off the per-view staircases, so equal
    formulas canonicalise identically whatever shape they arrive in.
    """
    live = _normalize(group, summands)
    if live == [(INF, group.zero())]:
        return bottom_pp(group)
    if isinstance(group, Step):
        return _canonical_generic(group, live)
    nviews = _views(group)
    stairs = [_staircase(group, k, live) for k in range(nviews)]
    u_sets, v_sets = [], []
    for k in range(nviews):
        zero = _chain_zero(group, k)
        cs = sorted({c for c, _ in stairs[k]}, key=lambda x: _sort_key(group, x)) or [zero]
        ds = sorted({d for _, d in stairs[k] if d is not INF}, key=lambda x: _sort_key(group, x))
        u_sets.append(cs)
        v_sets.append(ds + [zero] if zero not in ds else ds)
    candidates = set()
    for u in itertools.product(*u_sets):
        cu = u if nviews > 1 else u[0]
        candidates.add((cu, INF))
        for v in itertools.product(*v_sets):
            if nviews > 1:
                # a dead annihilator coordinate makes the divisibility one moot
                cu2 = tuple(0 if v[k] == 0 else u[k] for k in range(nviews))
                candidates.add((cu2, v))
            else:
                candidates.add((cu, v[0]))
    kept = [s for s in candidates if _summand_leq(group, s[0], s[1], live)]
    maximal = [
        s for s in kept
        if not any(t != s and _summand_leq(group, s[0], s[1], [t]) for t in kept)
    ]
    maximal.sort(key=lambda s: (_sort_key(group, s[0]), _sort_key(group, s[1])))
    if not maximal:
        return bottom_pp(group)
    return PpFormula(group, tuple(maximal))


def _canonical_generic(group: GammaGroup, live) -> PpFormula:
    """Merge equal-c / equal-d summands and prune; used for step-function groups."""
    summs = list(dict.fromkeys(live))
    changed = True
    while changed:
        changed = False
        for i in range(len(summs)):
            for j in range(i + 1, len(summs)):
                c1, d1 = summs[i]
                c2, d2 = summs[j]
                if c1 == c2:
                    merged = (c1, cone_join(group, d1, d2))
                elif d1 == d2:
                    merged = (cone_meet(group, c1, c2), d1)
                else:
                    continue
                summs = [s for n, s in enumerate(summs) if n not in (i, j)] + [merged]
                changed = True
                break
            if changed:
                break
    pruned = True
    while pruned and len(summs) > 1:
        pruned = False
        for i, s in enumerate(summs):
            rest = summs[:i] + summs[i + 1:]
            if _summand_leq(group, s[0], s[1], rest):
                summs = rest
                pruned = True
                break
    summs.sort(key=lambda s: (_sort_key(group, s[0]), _sort_key(group, s[1])))
    return PpFormula(group, tuple(summs))


# -- duality and translation ---------------------------------------------------


def prest_dual(phi: PpFormula) -> PpFormula:
    """Antitone involution: swaps divisibility with annihilation.

    On one summand the dual is annihilator(c) + divisibility(d); on a join
    it is the meet of those, expanded by distributivity over the subsets of
    summand indices.
    """
    g = phi.group
    summands = phi.summands
    zero = g.zero()
    out = []
    n = len(summands)
    for mask in range(1 << n):
        u = zero
        m = INF
        for i in range(n):
            if mask >> i & 1:
                u = cone_join(g, u, summands[i][1])
            else:
                m = cone_meet(g, m, summands[i][0])
        out.append((u, m))
    return pp(g, out)


def translate_pp(phi: PpFormula, target: GammaGroup, perm: Optional[tuple] = None) -> PpFormula:
    """Transport along a group isomorphism (a coordinate permutation)."""
    src = phi.group
    if type(src) is not type(target):
        raise NotIsomorphicError(f"{src} and {target} are not the same class")
    if isinstance(src, ProductZ):
        if src.n != target.n:
            raise NotIsomorphicError("different ranks")
        perm = perm or tuple(range(src.n))
        if sorted(perm) != list(range(src.n)):
            raise NotIsomorphicError(f"not a coordinate permutation: {perm!r}")

        def apply(x):
            return INF if x is INF else tuple(x[p] for p in perm)

    elif isinstance(src, (LexZ, RationalChain, Trivial)):
        if src != target or perm not in (None, tuple(range(getattr(src, "n", 1)))):
            raise NotIsomorphicError("only the identity map is order preserving here")

        def apply(x):
            return x

    else:
        raise NotIsomorphicError(f"no translations for {src}")
    return pp(target, [(apply(c), apply(d)) for c, d in phi.summands])


# -- pp-type tables -------------------------------------------------------------


@dataclass(frozen=True)
class PpTypeTable:
    """F(b) = values a with divisibility(a) + annihilator(b) in the type."""

    group: GammaGroup
    grid: tuple
    table: dict
    contains_bottom: bool


def _div_plus_ann(group: GammaGroup, a, b) -> PpFormula:
    return pp(group, [(a, INF), (group.zero(), b)])


def build_type_table(group: GammaGroup, generators, bound: int) -> PpTypeTable:
    """Tabulate the type generated by the given formulas on a bounded grid."""
    from .filters import enumerate_cone

    if bound < 1:
        raise UnboundedFragmentError("need a positive grid bound")
    try:
        grid = tuple(enumerate_cone(group, bound)) + (INF,)
    except UnsupportedGammaError as exc:
        raise UnboundedFragmentError(str(exc)) from exc
    gen = top_pp(group)
    for phi in generators:
        gen = meet_pp(gen, phi)
    table = {}
    for b in grid:
        table[b] = frozenset(a for a in grid if leq_pp(gen, _div_plus_ann(group, a, b)))
    return PpTypeTable(group, grid, table, leq_pp(gen, bottom_pp(group)))


def validate_type_table(t: PpTypeTable) -> tuple[bool, list[str]]:
    """Check the lattice-ideal and coherence laws of a type table on its grid.

    Laws: every F(b) is a down-set closed under joins; F(INF) is everything;
    F is monotone in b; coprime cancellation (a in F(b+b') and a ^ b' = 0
    forces a in F(b)); F(a ^ b) = F(a) & F(b); and F(0) is everything exactly
    when the type contains x = 0.
    """
    g = t.group
    grid = t.grid
    finite = [x for x in grid if x is not INF]
    problems: list[str] = []
    full = frozenset(grid)
    if t.table.get(INF) != full:
        problems.append("F(inf) is not everything")
    zero = g.zero()
    if (t.table.get(zero) == full) != t.contains_bottom:
        problems.append("F(0) disagrees with the bottom flag")
    for b, members in t.table.items():
        for a in members:
            for a2 in grid:
                if cone_leq(g, a2, a) and a2 not in members:
                    problems.append(f"F({b}) not downward closed at {a2}")
        for a1 in members:
            for a2 in members:
                j = cone_join(g, a1, a2)
                if j in t.table and j not in members:
                    problems.append(f"F({b}) not join closed at {a1},{a2}")
    for b1 in grid:
        for b2 in grid:
            if cone_leq(g, b1, b2) and not t.table[b1] <= t.table[b2]:
                problems.append(f"F not monotone: F({b1}) !<= F({b2})")
            m = cone_meet(g, b1, b2)
            if m in t.table and t.table[m] != (t.table[b1] & t.table[b2]):
                problems.append(f"F({b1} ^ {b2}) != F({b1}) & F({b2})")
    for b in finite:
        for b2 in finite:
            s = cone_add(g, b, b2)
            if s not in t.table:
                continue
            for a in t.table[s]:
                if a is INF:
                    continue
                if cone_is_zero(g, cone_meet(g, a, b2)) and a not in t.table[b]:
                    problems.append(f"coprime cancellation fails at a={a}, b={b}, b'={b2}")
    return (not problems, problems)


# -- spectrum points -----------------------------------------------------------


@dataclass(frozen=True)
class BasicOpen:
    """(divisible-by-c and killed-by-d) / (killed-by-a plus divisible-by-b)."""

    c: object
    d: object
    a: object
    b: object


@dataclass(frozen=True)
class ZgPoint:
    group: GammaGroup
    pair_class: PairClass
    rep: AdmissiblePair
    label: str

    @property
    def ass_sharp(self) -> IdealFilter:
        return sharp(self.rep.i_filter)

    @property
    def div_sharp(self) -> IdealFilter:
        return sharp(self.rep.j_filter)


def _supported(group: GammaGroup):
    if isinstance(group, ProductZ) and group.n <= 4:
        return
    if isinstance(group, LexZ) and group.n == 2:
        return
    raise UnsupportedGammaError(
        f"point enumeration covers Z^n (n <= 4) and lex(Z,Z); got {group}")


def _point(group, i_filter, j_filter, label) -> ZgPoint:
    pair = AdmissiblePair(i_filter, j_filter)
    return ZgPoint(group, canonical_pair(pair), pair, label)


def zg_points(group: GammaGroup, bound: int) -> list[ZgPoint]:
    """Canonical representatives of all pair classes with parameters <= bound."""
    _supported(group)
    pts: list[ZgPoint] = []
    zero = zero_ideal(group)
    if isinstance(group, ProductZ):
        for axis in range(group.n):
            e = tuple(1 if i == axis else 0 for i in range(group.n))

            def up(m, e=e):
                return principal(group, tuple(m * x for x in e))

            for s in range(2, 2 * bound + 1):
                pts.append(_point(group, up(1), up(s - 1), f"len[{axis}:{s}]"))
            pts.append(_point(group, zero, up(1), f"adic[{axis}]"))
            pts.append(_point(group, up(1), zero, f"divisible[{axis}]"))
        pts.append(_point(group, zero, zero, "generic"))
        return pts
    # lex(Z, Z)
    one = (0, 1)
    for s1 in range(0, 2 * bound + 1):
        lo = 2 if s1 == 0 else -2 * bound
        for s2 in range(lo, 2 * bound + 1):
            s = (s1, s2)
            pts.append(_point(group, principal(group, one),
                              principal(group, group.sub(s, one)), f"len[{s1}:{s2}]"))
    for n in range(0, 2 * bound + 1):
        pts.append(_point(group, principal(group, one), limit_cut(group, 1, (n,)),
                          f"p-cut[{n}]"))
        pts.append(_point(group, limit_cut(group, 1, (n,)), principal(group, one),
                          f"cut-p[{n}]"))
        pts.append(_point(group, limit_cut(group, 1, (0,)), limit_cut(group, 1, (n,)),
                          f"cut-cut[{n}]"))
    pts.append(_point(group, principal(group, one), zero, "p-divisible"))
    pts.append(_point(group, zero, principal(group, one), "adic-p"))
    pts.append(_point(group, limit_cut(group, 1, (0,)), zero, "cut-divisible"))
    pts.append(_point(group, zero, limit_cut(group, 1, (0,)), "adic-cut"))
    pts.append(_point(group, zero, zero, "generic"))
    return pts


# -- membership solvers ---------------------------------------------------------


def member(point: ZgPoint, o: BasicOpen) -> bool:
    """Whether the point lies in the basic open, solved over its whole class."""
    g = point.group
    for x in (o.c, o.d, o.a, o.b):
        _validate_cone(g, x)
    if isinstance(g, ProductZ):
        return _member_product(point, o)
    return _member_lex(point, o)


def _member_product(point: ZgPoint, o: BasicOpen) -> bool:
    g = point.group
    ki, kj = point.pair_class.kind_i, point.pair_class.kind_j
    inv = point.pair_class.invariant
    # a or c infinite can never escape a filter; d or b infinite lies in all
    if o.a is INF or o.c is INF:
        return False
    if ki == ZERO_IDEAL and kj == ZERO_IDEAL:
        return o.d is INF and o.b is INF
    if ki == ZERO_IDEAL:
        axis = inv[0]
        if o.d is not INF:
            return False
        lo = max(1, o.c[axis] + 1)
        return o.b is INF or o.b[axis] >= lo
    if kj == ZERO_IDEAL:
        axis = inv[0]
        if o.b is not INF:
            return False
        lo = max(1, o.a[axis] + 1)
        return o.d is INF or o.d[axis] >= lo
    axis, total = inv
    lo = max(1, o.a[axis] + 1)
    hi = total - 1
    if o.d is not INF:
        hi = min(hi, o.d[axis])
    if o.b is not INF:
        lo = max(lo, total - o.b[axis])
    hi = min(hi, total - o.c[axis] - 1)
    return lo <= hi


def _lex_le(x, y) -> bool:
    return x <= y


def _member_lex(point: ZgPoint, o: BasicOpen) -> bool:
    g = point.group
    ki, kj = point.pair_class.kind_i, point.pair_class.kind_j
    inv = point.pair_class.invariant
    if o.a is INF or o.c is INF:
        return False
    zero, one = (0, 0), (0, 1)

    def exists_principal(strict_lo, los, his) -> bool:
        """Is there g with every strict_lo < g, g >= each lo, g <= each hi?"""
        lows = [g.add(s, one) for s in strict_lo] + list(los) + [one]
        lo = max(lows)
        if not his:
            return True
        return _lex_le(lo, min(his))

    if ki == ZERO_IDEAL and kj == ZERO_IDEAL:
        return o.d is INF and o.b is INF
    if ki == ZERO_IDEAL and kj == PRINCIPAL:
        if o.d is not INF:
            return False
        his = [] if o.b is INF else [o.b]
        return exists_principal([o.c], [], his)
    if ki == PRINCIPAL and kj == ZERO_IDEAL:
        if o.b is not INF:
            return False
        his = [] if o.d is INF else [o.d]
        return exists_principal([o.a], [], his)
    if ki == ZERO_IDEAL and kj == LIMITCUT:
        if o.d is not INF:
            return False
        # need q >= c1 with q < b1 (or b infinite)
        return o.b is INF or o.b[0] > o.c[0]
    if ki == LIMITCUT and kj == ZERO_IDEAL:
        if o.b is not INF:
            return False
        return o.d is INF or o.d[0] > o.a[0]
    if ki == PRINCIPAL and kj == PRINCIPAL:
        s = tuple(inv)  # the invariant is the generator sum
        los = [] if o.b is INF else [g.sub(s, o.b)]
        his = [g.sub(s, one)]
        if o.d is not INF:
            his.append(o.d)
        his.append(g.sub(g.sub(s, o.c), one))
        return exists_principal([o.a], los, his)

    def slice_feasible(g1: int, lo_elem, hi_elem) -> bool:
        """Any g2 with (g1, g2) > lo_elem strictly, <= hi_elem, and (g1, g2) > 0."""
        lo2 = None
        if g1 < lo_elem[0] or g1 < 0:
            return False
        if g1 == lo_elem[0]:
            lo2 = lo_elem[1] + 1
        if g1 == 0:
            lo2 = 1 if lo2 is None else max(lo2, 1)
        hi2 = None
        if hi_elem is not INF:
            if g1 > hi_elem[0]:
                return False
            if g1 == hi_elem[0]:
                hi2 = hi_elem[1]
        return lo2 is None or hi2 is None or lo2 <= hi2

    n = inv[0]
    if ki == PRINCIPAL and kj == LIMITCUT:
        for g1 in range(0, n + 1):
            p = n - g1
            if o.c[0] > p:
                continue
            if o.b is not INF and o.b[0] <= p:
                continue
            if slice_feasible(g1, o.a, o.d):
                return True
        return False
    if ki == LIMITCUT and kj == PRINCIPAL:
        for p in range(0, n + 1):
            h1 = n - p
            if o.a[0] > p:
                continue
            if o.d is not INF and o.d[0] <= p:
                continue
            if slice_feasible(h1, o.c, o.b):
                return True
        return False
    # limit cut on both sides
    for p in range(0, n + 1):
        q = n - p
        if o.a[0] > p or o.c[0] > q:
            continue
        if o.d is not INF and o.d[0] <= p:
            continue
        if o.b is not INF and o.b[0] <= q:
            continue
        return True
    return False


# -- isolation and stratification ------------------------------------------------


def _side_params(f: IdealFilter):
    """(inside, outside): an element of the filter and its predecessor outside."""
    g = f.group
    if f.kind == ZERO_IDEAL:
        return INF, g.zero()
    if f.kind == PRINCIPAL:
        gen = f.gen
        if isinstance(g, ProductZ):
            axis = next(i for i, v in enumerate(gen) if v)
            below = tuple(v - 1 if i == axis else v for i, v in enumerate(gen))
        else:
            below = g.sub(gen, (0, 1))
        return gen, below
    p = f.prefix[0]
    width = 2 if isinstance(g, LexZ) else g.n
    inside = (p + 1,) + (0,) * (width - 1)
    outside = (p,) + (0,) * (width - 1)
    return inside, outside


def isolating_open(point: ZgPoint) -> BasicOpen:
    """The canonical candidate open that pins the point down within its layer."""
    d, a = _side_params(point.rep.i_filter)
    b, c = _side_params(point.rep.j_filter)
    return BasicOpen(c=c, d=d, a=a, b=b)


def rank_prime(f: IdealFilter, group: Optional[GammaGroup] = None) -> Ordinal:
    """Largest stage whose collapse subgroup misses the filter."""
    group = group or f.group
    if f.kind == ZERO_IDEAL:
        m = mdim_cone(group)
        if not m.defined:
            raise UndefinedDimensionError(f"rank of the zero ideal needs m-dimension ({group})")
        return m.value
    if isinstance(group, ProductZ):
        return ZERO
    if f.kind == LIMITCUT:
        return ONE
    return ZERO  # lex principal: met by the bottom level already


def ass_div_rank(point: ZgPoint) -> tuple[Ordinal, Ordinal]:
    return rank_prime(point.ass_sharp), rank_prime(point.div_sharp)


def foundation_rank(ranks: tuple[Ordinal, Ordinal]) -> Ordinal:
    """Rank of the pair in the coordinatewise order on pairs of ordinals."""
    return natural_sum(ranks[0], ranks[1])


@dataclass(frozen=True)
class Stratification:
    group: GammaGroup
    points: tuple[ZgPoint, ...]
    layers: tuple[tuple[ZgPoint, ...], ...]
    direct_rank: Ordinal
    closed_rank: Ordinal

    def layer_index(self, point: ZgPoint) -> int:
        for i, layer in enumerate(self.layers):
            if point in layer:
                return i
        raise KeyError(point.label)


def cb_stratify(group: GammaGroup, bound: int) -> Stratification:
    """Peel isolated points layer by layer and compare with the closed form."""
    points = zg_points(group, bound)
    layers: list[tuple[ZgPoint, ...]] = []
    current = list(points)
    while current:
        isolated = []
        for p in current:
            o = isolating_open(p)
            if not member(p, o):
                continue
            if any(q is not p and member(q, o) for q in current):
                continue
            isolated.append(p)
        if not isolated:
            raise AssertionError(f"no isolated points among {len(current)} remaining in {group}")
        layers.append(tuple(isolated))
        current = [p for p in current if p not in isolated]
    direct = Ordinal.from_int(len(layers) - 1)
    closed = cb_rank_zg_closed(group)
    return Stratification(group, tuple(points), tuple(layers), direct, closed)


def cb_rank_zg_closed(group: GammaGroup) -> Ordinal:
    """Rank of the whole spectrum from the per-class formulas.

    A totally ordered value group doubles the cone dimension; with all
    multiplication primes maximal the rank is the cone dimension, plus one
    unless it is a limit.
    """
    m = mdim_cone(group)
    if not m.defined:
        raise UndefinedDimensionError(f"spectrum rank undefined for {group}")
    if group.is_trivial():
        return ZERO
    if group.is_totally_ordered():
        return mul(m.value, Ordinal.from_int(2))
    if mult_prime_filters_report(group).krull_dim_one:
        return m.value if is_limit(m.value) else succ(m.value)
    raise UnsupportedGammaError(f"no closed spectrum rank for {group}")


def cb_rank_zg(group: GammaGroup, bound: int = 6) -> Ordinal:
    """Closed-form rank, cross-checked by direct stratification when enumerable."""
    closed = cb_rank_zg_closed(group)
    try:
        strat = cb_stratify(group, bound)
    except UnsupportedGammaError:
        return closed
    if strat.direct_rank != closed:
        raise AssertionError(
            f"direct stratification {strat.direct_rank} != closed form {closed} for {group}")
    return closed


def cb_bounds(group: GammaGroup) -> tuple[Ordinal, Ordinal]:
    m = mdim_cone(group)
    if not m.defined:
        raise UndefinedDimensionError(f"no bounds without m-dimension ({group})")
    return m.value, mul(m.value, Ordinal.from_int(2))


# -- inverse prime spectrum ------------------------------------------------------


@dataclass(frozen=True)
class SpecStarReport:
    group: GammaGroup
    value: Ordinal
    prime_ranks: tuple[tuple[str, Ordinal], ...]


def spec_star_cb(group: GammaGroup) -> SpecStarReport:
    """Rank of the inverse prime spectrum: the maximal prime rank = cone m-dim."""
    m = mdim_cone(group)
    if not m.defined:
        raise UndefinedDimensionError(f"inverse spectrum rank undefined for {group}")
    entries: list[tuple[str, Ordinal]] = []
    if isinstance(group, ProductZ):
        for i in range(group.n):
            entries.append((f"up(e{i + 1})", ZERO))
    elif isinstance(group, LexZ):
        for level in range(group.n):
            entries.append((f"level{level + 1}", Ordinal.from_int(group.n - 1 - level)))
    elif isinstance(group, Step):
        alpha = group.rank()
        strata = alpha if group.minus else succ(alpha)
        cap = 4
        shown = 0
        k = ZERO
        while shown < cap and k < strata:
            entries.append((f"F_x, rank(x) = {k}", k))
            if not k.is_finite:
                break
            k = succ(k)
            shown += 1
    elif isinstance(group, RationalChain):
        entries.append(("positives", ZERO))
    entries.append(("zero ideal", m.value))
    return SpecStarReport(group, m.value, tuple(entries))


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassifyReport:
    gamma: str
    mdim_gamma: Optional[Ordinal]
    breadth_gamma: Optional[Ordinal]
    breadth_pp1: Optional[Ordinal]
    pp1_has_mdim: bool
    superdecomposable_exists: bool
    superdec_witness_route: Optional[str]
    superdec_schema: Optional[str]
    zg_cb_bounds: Optional[tuple[Ordinal, Ordinal]]
    zg_cb_exact: Optional[Ordinal]
    krull_dim_one: bool
    s_infty_stage: Ordinal
    s_infty_gamma: str
    mdim_method: str
    breadth_method: str


def classify(group: GammaGroup) -> ClassifyReport:
    """One-stop report of every invariant the package computes for a group."""
    m = mdim_cone(group)
    br = breadth_cone(group)
    krull = mult_prime_filters_report(group).krull_dim_one
    route = None
    schema = None
    if not m.defined:
        if br.value is None:
            route = "no-chain-elements"
            schema = ("type of a unit: join of (divisible by A, killed by E) "
                      "splits along any incomparable comaximal B, C above A")
        else:
            route = "dense-chain-localization"
    bounds = None
    exact = None
    if m.defined:
        bounds = cb_bounds(group)
        try:
            exact = cb_rank_zg_closed(group)
        except (UnsupportedGammaError, UndefinedDimensionError):
            exact = None
    chain = m.chain
    # with m-dimension defined, the localisation tower stabilises exactly there
    stage = m.value if m.defined else Ordinal.from_int(chain.terminal_stage)
    s_infty_group = Trivial().spec() if m.defined else chain.steps[-1].spec()
    return ClassifyReport(
        gamma=group.spec(),
        mdim_gamma=m.value,
        breadth_gamma=br.value,
        breadth_pp1=m.value,
        pp1_has_mdim=m.defined,
        superdecomposable_exists=not m.defined,
        superdec_witness_route=route,
        superdec_schema=schema,
        zg_cb_bounds=bounds,
        zg_cb_exact=exact,
        krull_dim_one=krull,
        s_infty_stage=stage,
        s_infty_gamma=s_infty_group,
        mdim_method=m.method,
        breadth_method=br.method,
    )


def pp_type_table_json(t: PpTypeTable) -> dict:
    def key(x):
        return render_element(t.group, x)

    return {
        "grid": [key(x) for x in t.grid],
        "contains_bottom": t.contains_bottom,
        "table": {key(b): sorted(key(a) for a in members) for b, members in t.table.items()},
    }


def point_to_json(p: ZgPoint) -> dict:
    ass_r, div_r = ass_div_rank(p)
    return {
        "label": p.label,
        "kind": [p.pair_class.kind_i, p.pair_class.kind_j],
        "pair": [filter_to_json(p.rep.i_filter), filter_to_json(p.rep.j_filter)],
        "ass_hash": filter_to_json(p.ass_sharp),
        "div_hash": filter_to_json(p.div_sharp),
        "ass_rank": str(ass_r),
        "div_rank": str(div_r),
    }
