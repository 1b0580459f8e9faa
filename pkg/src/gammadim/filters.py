"""Filters of the extended positive cone as ideals of the notional domain.

A filter (upward and meet closed, proper, always containing ``INF``)
stands for an ideal of any Bezout domain with the given value group; prime
filters stand for the weakly prime ideals.  The representable catalogue is
a closed per-class list, and it is exhaustive:

* ``Z^n``: every proper filter is ``up(v)`` for its coordinatewise infimum
  v (coordinates are well-ordered, and the infimum is a finite meet of
  members), or the zero-ideal filter {INF}.
* ``lex(Z,Z)``: a proper filter is a final segment of the cone.  If its
  complement has a maximum the filter is principal; otherwise the
  complement is a downward-closed set whose top slice is unbounded, which
  forces the shape {x : x1 > p} - the level-1 limit cut.

Step-group and Q filters are out of the enumerable fragment and are not
represented.

The operations: membership, the quotient shift (F : k) = {a : a+k in F},
its inverse a -> (a - k) v 0 preimage, and the sharp F# = {a : a + k in F
for some k not in F}, which is always multiplication prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .lgroup import (
    INF,
    GammaGroup,
    GroupMismatchError,
    LexZ,
    ProductZ,
    cone_is_zero,
    cone_leq,
    quotient_op,
    render_element,
)

__all__ = [
    "IdealFilter",
    "AdmissiblePair",
    "PairClass",
    "InfiniteShiftError",
    "ImproperResultError",
    "IllegalShiftError",
    "UnsupportedGammaError",
    "principal",
    "limit_cut",
    "zero_ideal",
    "contains",
    "filter_subset",
    "is_prime",
    "is_mult_prime",
    "colon",
    "inverse_colon",
    "sharp",
    "admissible",
    "shift_pair",
    "canonical_pair",
    "pairs_equivalent",
    "enumerate_filters",
    "enumerate_prime_filters",
    "enumerate_cone",
    "filter_to_json",
]


class InfiniteShiftError(ValueError):
    pass


class ImproperResultError(ValueError):
    """The shifted filter would contain 0, i.e. the ideal would be all of R."""


class IllegalShiftError(ValueError):
    pass


class UnsupportedGammaError(ValueError):
    pass


PRINCIPAL = "principal"
LIMITCUT = "limitcut"
ZERO_IDEAL = "zero"


def _check_supported(group: GammaGroup):
    if isinstance(group, ProductZ):
        return
    if isinstance(group, LexZ) and group.n == 2:
        return
    raise UnsupportedGammaError(f"filters are represented for Z^n and lex(Z,Z) only, not {group}")


@dataclass(frozen=True)
class IdealFilter:
    group: GammaGroup
    kind: str
    gen: Optional[tuple] = None       # principal: the least element
    level: Optional[int] = None       # limit cut: number of leading coordinates cut
    prefix: Optional[tuple] = None    # limit cut: the cut prefix

    def __str__(self) -> str:
        if self.kind == ZERO_IDEAL:
            return "zero"
        if self.kind == PRINCIPAL:
            return f"up({render_element(self.group, self.gen)})"
        return f"cut(level {self.level} > {':'.join(str(p) for p in self.prefix)})"


def principal(group: GammaGroup, gen) -> IdealFilter:
    _check_supported(group)
    group.validate(gen)
    if not group.is_positive(gen) or cone_is_zero(group, gen):
        raise ValueError(f"principal filter needs a generator > 0, got {gen!r}")
    return IdealFilter(group, PRINCIPAL, gen=tuple(gen))


def limit_cut(group: GammaGroup, level: int, prefix: Iterable[int]) -> IdealFilter:
    _check_supported(group)
    if not isinstance(group, LexZ):
        raise UnsupportedGammaError("limit cuts live in lex stacks")
    prefix = tuple(prefix)
    if level != 1 or len(prefix) != 1 or prefix[0] < 0:
        raise ValueError("only level-1 cuts with a non-negative prefix are proper new filters")
    return IdealFilter(group, LIMITCUT, level=level, prefix=prefix)


def zero_ideal(group: GammaGroup) -> IdealFilter:
    _check_supported(group)
    return IdealFilter(group, ZERO_IDEAL)


def contains(f: IdealFilter, x) -> bool:
    if x is INF:
        return True
    f.group.validate(x)
    if f.kind == ZERO_IDEAL:
        return False
    if f.kind == PRINCIPAL:
        return f.group.leq(f.gen, x)
    return x[0] > f.prefix[0]


def filter_subset(a: IdealFilter, b: IdealFilter) -> bool:
    """Set inclusion a <= b, decided on the catalogue."""
    if a.group != b.group:
        raise GroupMismatchError("filters over different groups")
    if a.kind == ZERO_IDEAL:
        return True
    if b.kind == ZERO_IDEAL:
        return False
    if a.kind == PRINCIPAL and b.kind == PRINCIPAL:
        return contains(b, a.gen)
    if a.kind == LIMITCUT and b.kind == LIMITCUT:
        return a.prefix[0] >= b.prefix[0]
    if a.kind == PRINCIPAL and b.kind == LIMITCUT:
        return a.gen[0] > b.prefix[0]
    # limit cut inside a principal filter: needs gen below (p+1, t) for all t
    return b.gen[0] <= a.prefix[0]


def is_prime(f: IdealFilter) -> bool:
    """join(a, b) in F implies a in F or b in F."""
    if f.kind == ZERO_IDEAL:
        return True
    if isinstance(f.group, LexZ):
        return True  # totally ordered: join is max
    v = f.gen
    return sum(1 for x in v if x != 0) == 1


def is_mult_prime(f: IdealFilter) -> bool:
    """a + b in F implies a in F or b in F."""
    if f.kind == ZERO_IDEAL:
        return True
    if f.kind == LIMITCUT:
        return f.prefix[0] == 0
    if isinstance(f.group, LexZ):
        return f.gen == (0, 1)
    return sum(f.gen) == 1


def colon(f: IdealFilter, k) -> IdealFilter:
    """(F : k) = {a : a + k in F}; improper results are an error value."""
    if k is INF:
        raise InfiniteShiftError("colon by the zero ideal")
    f.group.validate(k)
    if not f.group.is_positive(k):
        raise ValueError(f"shift must lie in the positive cone: {k!r}")
    if f.kind == ZERO_IDEAL:
        return f
    if contains(f, k):
        raise ImproperResultError(f"{f} : {k} is the whole cone")
    if f.kind == PRINCIPAL:
        g = f.group
        new_gen = g.join(g.sub(f.gen, k), g.zero())
        return principal(f.group, new_gen)
    return limit_cut(f.group, 1, (f.prefix[0] - k[0],))


def inverse_colon(f: IdealFilter, k) -> IdealFilter:
    """{a : (a - k) v 0 in F}; inverse of colon on proper filters."""
    if k is INF:
        raise InfiniteShiftError("inverse shift by the zero ideal")
    f.group.validate(k)
    if not f.group.is_positive(k):
        raise ValueError(f"shift must lie in the positive cone: {k!r}")
    if f.kind == ZERO_IDEAL:
        return f
    if f.kind == LIMITCUT:
        return limit_cut(f.group, 1, (f.prefix[0] + k[0],))
    g = f.group
    if isinstance(g, ProductZ):
        new_gen = tuple(v + kk if v > 0 else 0 for v, kk in zip(f.gen, k))
    else:
        new_gen = g.add(f.gen, k)
    return principal(g, new_gen)


def sharp(f: IdealFilter) -> IdealFilter:
    """F# = {a : a + k in F for some k not in F}: the attached multiplication prime."""
    if f.kind == ZERO_IDEAL:
        return f
    g = f.group
    if isinstance(g, ProductZ):
        if not is_prime(f):
            raise ValueError(f"sharp needs a prime filter, got {f}")
        axis = next(i for i, v in enumerate(f.gen) if v != 0)
        return principal(g, tuple(1 if i == axis else 0 for i in range(g.n)))
    if f.kind == LIMITCUT:
        return limit_cut(g, 1, (0,))
    # lex principal: any drop below the generator reaches every positive element
    return principal(g, (0,) * (g.n - 1) + (1,))


# -- admissible pairs ----------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePair:
    """A pair of prime filters with comparable sharps; names a spectrum point."""

    i_filter: IdealFilter
    j_filter: IdealFilter

    def __post_init__(self):
        if self.i_filter.group != self.j_filter.group:
            raise GroupMismatchError("pair over two groups")
        if not (is_prime(self.i_filter) and is_prime(self.j_filter)):
            raise ValueError("both members must be prime filters")
        if not admissible(self.i_filter, self.j_filter):
            raise ValueError(f"sharps of {self.i_filter} and {self.j_filter} are incomparable")

    def __str__(self) -> str:
        return f"({self.i_filter}, {self.j_filter})"


def admissible(i_filter: IdealFilter, j_filter: IdealFilter) -> bool:
    a, b = sharp(i_filter), sharp(j_filter)
    return filter_subset(a, b) or filter_subset(b, a)


def shift_pair(pair: AdmissiblePair, k, direction: str) -> AdmissiblePair:
    """One equivalence move: ((I:k), J_k) for 'left', (I_k, (J:k)) for 'right'."""
    if direction == "left":
        if contains(pair.i_filter, k):
            raise IllegalShiftError(f"{k!r} lies in the first filter")
        return AdmissiblePair(colon(pair.i_filter, k), inverse_colon(pair.j_filter, k))
    if direction == "right":
        if contains(pair.j_filter, k):
            raise IllegalShiftError(f"{k!r} lies in the second filter")
        return AdmissiblePair(inverse_colon(pair.i_filter, k), colon(pair.j_filter, k))
    raise ValueError("direction must be 'left' or 'right'")


@dataclass(frozen=True)
class PairClass:
    """Canonical invariant of a pair's shift-equivalence class."""

    group: GammaGroup
    kind_i: str
    kind_j: str
    invariant: tuple

    def __str__(self) -> str:
        inv = ",".join(str(x) for x in self.invariant)
        return f"{self.kind_i}/{self.kind_j}" + (f"[{inv}]" if inv else "")


def canonical_pair(pair: AdmissiblePair) -> PairClass:
    """Complete invariant for the shift equivalence on the catalogue.

    Shifts move a principal generator down on one side and up by the same
    amount on the other, and move limit-cut prefixes by the leading
    coordinate of the shift; what survives is, per kind pattern:
    the generator sum (principal/principal, per axis for products), the sum
    of the cut prefixes, the mixed sums below, and nothing at all when one
    side is the zero ideal.
    """
    i, j = pair.i_filter, pair.j_filter
    g = pair.i_filter.group
    ki, kj = i.kind, j.kind
    if ki == ZERO_IDEAL or kj == ZERO_IDEAL:
        inv: tuple = ()
        if isinstance(g, ProductZ):
            axes = []
            for f in (i, j):
                if f.kind == PRINCIPAL:
                    axes.append(next(n for n, v in enumerate(f.gen) if v))
            inv = tuple(axes)
        return PairClass(g, ki, kj, inv)
    if isinstance(g, ProductZ):
        axis_i = next(n for n, v in enumerate(i.gen) if v)
        axis_j = next(n for n, v in enumerate(j.gen) if v)
        return PairClass(g, ki, kj, (axis_i, i.gen[axis_i] + j.gen[axis_j]))
    if ki == PRINCIPAL and kj == PRINCIPAL:
        return PairClass(g, ki, kj, g.add(i.gen, j.gen))
    if ki == PRINCIPAL and kj == LIMITCUT:
        return PairClass(g, ki, kj, (i.gen[0] + j.prefix[0],))
    if ki == LIMITCUT and kj == PRINCIPAL:
        return PairClass(g, ki, kj, (i.prefix[0] + j.gen[0],))
    return PairClass(g, ki, kj, (i.prefix[0] + j.prefix[0],))


def pairs_equivalent(p: AdmissiblePair, q: AdmissiblePair) -> bool:
    return canonical_pair(p) == canonical_pair(q)


# -- enumeration ---------------------------------------------------------------


def enumerate_cone(group: GammaGroup, bound: int) -> list:
    """Finite positive cone elements with coordinates bounded by ``bound``."""
    if isinstance(group, ProductZ):
        out = []

        def rec(prefix):
            if len(prefix) == group.n:
                out.append(tuple(prefix))
                return
            for v in range(bound + 1):
                rec(prefix + [v])

        rec([])
        return out
    if isinstance(group, LexZ) and group.n == 2:
        out = [(0, y) for y in range(bound + 1)]
        out += [(x, y) for x in range(1, bound + 1) for y in range(-bound, bound + 1)]
        return out
    raise UnsupportedGammaError(f"no cone enumeration for {group}")


def enumerate_filters(group: GammaGroup, bound: int) -> list[IdealFilter]:
    out = [zero_ideal(group)]
    for v in enumerate_cone(group, bound):
        if not cone_is_zero(group, v):
            out.append(principal(group, v))
    if isinstance(group, LexZ):
        out.extend(limit_cut(group, 1, (p,)) for p in range(bound + 1))
    return out


def enumerate_prime_filters(group: GammaGroup, bound: int) -> list[IdealFilter]:
    return [f for f in enumerate_filters(group, bound) if is_prime(f)]


def filter_to_json(f: IdealFilter) -> dict:
    if f.kind == ZERO_IDEAL:
        return {"class": "zero"}
    if f.kind == PRINCIPAL:
        return {"class": "principal", "gen": list(f.gen)}
    return {"class": "limitcut", "level": f.level, "prefix": list(f.prefix)}
