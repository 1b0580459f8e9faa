"""Concrete lattice-ordered abelian group classes and their extended cones.

The closed catalogue: Z^n with the product order, lexicographic Z-stacks,
the dense chain Q, groups of integer step functions on an ordinal interval
space (optionally the convex subgroup vanishing on the maximal-rank points),
and the trivial group.  Elements are plain values (int tuples, Fraction,
StepFunction); each group object supplies the lattice operations, and the
module-level cone helpers add the absorbing top ``INF`` which stands for
the zero ideal.

Frozen convention for the ideal quotient on the extended cone:
    q(a, b)   = (a - b) v 0      for finite a, b
    q(INF, b) = INF              for finite b
    q(a, INF) = 0                for any a (including INF)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .boolspace import (
    ClopenSet,
    OrdinalSpace,
    cb_rank_space,
    compare,
    point_rank,
)
from .ordinal import ONE, ZERO, Ordinal, mul, omega_power, parse_ordinal

__all__ = [
    "GammaGroup",
    "ProductZ",
    "LexZ",
    "RationalChain",
    "Step",
    "Trivial",
    "StepFunction",
    "INF",
    "GroupMismatchError",
    "NotPositiveError",
    "NegativeInputError",
    "GammaSyntaxError",
    "cone_add",
    "cone_join",
    "cone_meet",
    "cone_leq",
    "cone_is_zero",
    "quotient_op",
    "is_atom",
    "is_chain_element",
    "supp",
    "prime_part",
    "mult_prime_filters_report",
    "MultPrimeReport",
    "parse_gamma",
    "render_element",
    "parse_element",
]


class GroupMismatchError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


class NegativeInputError(ValueError):
    pass


class GammaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class _Infinity:
    """Absorbing top of the extended positive cone; encodes the zero ideal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


# -- step functions ----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class StepFunction:
    """Piecewise constant Z-valued function on [0, top].

    ``cuts`` is increasing with cuts[-1] = top; the function is values[0] on
    [0, cuts[0]] and values[i] on (cuts[i-1], cuts[i]].  Adjacent values are
    distinct, so the form is unique.  Every piece is clopen, hence the
    function is continuous for the interval topology.
    """

    cuts: tuple[Ordinal, ...]
    values: tuple[int, ...]

    @staticmethod
    def make(cuts: Iterable[Ordinal], values: Iterable[int]) -> "StepFunction":
        cuts = tuple(cuts)
        values = tuple(values)
        if len(cuts) != len(values) or not cuts:
            raise ValueError("need one value per piece")
        for i in range(len(cuts) - 1):
            if compare(cuts[i], cuts[i + 1]) >= 0:
                raise ValueError("cuts must be strictly increasing")
        out_c, out_v = [], []
        for c, v in zip(cuts, values):
            if out_v and out_v[-1] == v:
                out_c[-1] = c
            else:
                out_c.append(c)
                out_v.append(v)
        return StepFunction(tuple(out_c), tuple(out_v))

    @staticmethod
    def const(space: OrdinalSpace, value: int) -> "StepFunction":
        return StepFunction((space.top,), (value,))

    @staticmethod
    def indicator(space: OrdinalSpace, clopen: ClopenSet) -> "StepFunction":
        cuts, values = [], []
        cursor = None
        for lo, hi in clopen.intervals:
            if lo is not None and (cursor is None or compare(cursor, lo) < 0):
                cuts.append(lo)
                values.append(0)
            cuts.append(hi)
            values.append(1)
            cursor = hi
        if cursor is None or compare(cursor, space.top) < 0:
            cuts.append(space.top)
            values.append(0)
        return StepFunction.make(cuts, values)

    @property
    def top(self) -> Ordinal:
        return self.cuts[-1]

    def value_at(self, x: Ordinal) -> int:
        for c, v in zip(self.cuts, self.values):
            if compare(x, c) <= 0:
                return v
        raise ValueError(f"{x} beyond domain [0,{self.top}]")

    def zip_with(self, other: "StepFunction", fn) -> "StepFunction":
        if compare(self.top, other.top) != 0:
            raise GroupMismatchError("step functions on different spaces")
        keys = {_OrdKey(c) for c in self.cuts} | {_OrdKey(c) for c in other.cuts}
        cuts = [k.o for k in sorted(keys)]
        values = [fn(self.value_at(c), other.value_at(c)) for c in cuts]
        return StepFunction.make(cuts, values)

    def map(self, fn) -> "StepFunction":
        return StepFunction.make(self.cuts, tuple(fn(v) for v in self.values))

    def __str__(self) -> str:
        return ",".join(f"{v}@{c}" for c, v in zip(self.cuts, self.values))


class _OrdKey:
    __slots__ = ("o",)

    def __init__(self, o: Ordinal):
        self.o = o

    def __lt__(self, other):
        return compare(self.o, other.o) < 0

    def __eq__(self, other):
        return self.o == other.o

    def __hash__(self):
        return hash(self.o)


# -- group classes -----------------------------------------------------------


class GammaGroup:
    """Shared API: element lattice ops plus structural predicates."""

    def zero(self):
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def join(self, a, b):
        raise NotImplementedError

    def meet(self, a, b):
        raise NotImplementedError

    def validate(self, a) -> None:
        raise NotImplementedError

    def is_totally_ordered(self) -> bool:
        raise NotImplementedError

    def is_trivial(self) -> bool:
        return False

    def spec(self) -> str:
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_positive(self, a) -> bool:
        return self.leq(self.zero(), a)

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class ProductZ(GammaGroup):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")

    def zero(self):
        return (0,) * self.n

    def leq(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def join(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def meet(self, a, b):
        return tuple(min(x, y) for x, y in zip(a, b))

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == self.n and all(isinstance(x, int) for x in a)):
            raise GroupMismatchError(f"not a Z^{self.n} element: {a!r}")

    def is_totally_ordered(self):
        return self.n == 1

    def spec(self):
        return "Z" if self.n == 1 else f"Z^{self.n}"


@dataclass(frozen=True)
class LexZ(GammaGroup):
    """Z^n ordered lexicographically (first coordinate most significant)."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("lex stacks need n >= 2; use ProductZ(1) for Z")

    def zero(self):
        return (0,) * self.n

    def leq(self, a, b):
        return a <= b

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def join(self, a, b):
        return max(a, b)

    def meet(self, a, b):
        return min(a, b)

    def validate(self, a):
        if not (isinstance(a, tuple) and len(a) == self.n and all(isinstance(x, int) for x in a)):
            raise GroupMismatchError(f"not a lex Z^{self.n} element: {a!r}")

    def is_totally_ordered(self):
        return True

    def spec(self):
        return "lex(" + ",".join(["Z"] * self.n) + ")"


@dataclass(frozen=True)
class RationalChain(GammaGroup):
    """Q as a dense chain; exists to exercise the undefined-dimension paths."""

    def zero(self):
        return Fraction(0)

    def leq(self, a, b):
        return a <= b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def join(self, a, b):
        return max(a, b)

    def meet(self, a, b):
        return min(a, b)

    def validate(self, a):
        if not isinstance(a, Fraction):
            raise GroupMismatchError(f"not a rational: {a!r}")

    def is_totally_ordered(self):
        return True

    def spec(self):
        return "Q"


@dataclass(frozen=True)
class Trivial(GammaGroup):
    def zero(self):
        return ()

    def leq(self, a, b):
        return True

    def add(self, a, b):
        return ()

    def neg(self, a):
        return ()

    def join(self, a, b):
        return ()

    def meet(self, a, b):
        return ()

    def validate(self, a):
        if a != ():
            raise GroupMismatchError(f"not the trivial element: {a!r}")

    def is_totally_ordered(self):
        return True

    def is_trivial(self):
        return True

    def spec(self):
        return "triv"


@dataclass(frozen=True)
class Step(GammaGroup):
    """C(X, Z), or for ``minus`` its convex subgroup vanishing on max-rank points."""

    space: OrdinalSpace
    minus: bool = False

    def __post_init__(self):
        if self.space.is_empty:
            raise ValueError("step groups need a non-empty space")

    def zero(self):
        return StepFunction.const(self.space, 0)

    def leq(self, a, b):
        merged = a.zip_with(b, lambda x, y: x <= y)
        return all(merged.values)

    def add(self, a, b):
        return a.zip_with(b, lambda x, y: x + y)

    def neg(self, a):
        return a.map(lambda v: -v)

    def join(self, a, b):
        return a.zip_with(b, max)

    def meet(self, a, b):
        return a.zip_with(b, min)

    def rank(self) -> Ordinal:
        return cb_rank_space(self.space)

    def max_rank_points(self) -> list[Ordinal]:
        """The points of maximal rank: the final non-empty derivative."""
        top = self.space.top
        if top.is_finite:
            return [Ordinal.from_int(i) for i in range(top.as_int() + 1)]
        alpha = top.leading_exponent
        return [mul(omega_power(alpha), Ordinal.from_int(k))
                for k in range(1, top.leading_coefficient + 1)]

    def validate(self, a):
        if not isinstance(a, StepFunction) or compare(a.top, self.space.top) != 0:
            raise GroupMismatchError(f"not a step function on {self.space}: {a!r}")
        if self.minus:
            for p in self.max_rank_points():
                if a.value_at(p) != 0:
                    raise GroupMismatchError(f"must vanish at the rank-{self.rank()} point {p}")

    def is_totally_ordered(self):
        if self.minus:
            return self.rank().is_zero  # then the group is trivial
        return self.space.top.is_zero

    def is_trivial(self):
        return self.minus and self.rank().is_zero

    def spec(self):
        name = "Cminus" if self.minus else "C"
        return f"{name}({self.space.top})"


# -- extended cone helpers ---------------------------------------------------


def cone_is_zero(group: GammaGroup, a) -> bool:
    return a is not INF and a == group.zero()


def cone_leq(group: GammaGroup, a, b) -> bool:
    if b is INF:
        return True
    if a is INF:
        return False
    return group.leq(a, b)


def cone_add(group: GammaGroup, a, b):
    if a is INF or b is INF:
        return INF
    return group.add(a, b)


def cone_join(group: GammaGroup, a, b):
    if a is INF or b is INF:
        return INF
    return group.join(a, b)


def cone_meet(group: GammaGroup, a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return group.meet(a, b)


def quotient_op(group: GammaGroup, a, b):
    """Ideal quotient (A:B) transported to the cone; see module docstring."""
    if b is INF:
        return group.zero()
    if a is INF:
        return INF
    return group.join(group.sub(a, b), group.zero())


# -- element-level predicates ------------------------------------------------


def _require_finite_positive(group: GammaGroup, a):
    if a is INF or not group.is_positive(a) or cone_is_zero(group, a):
        raise NotPositiveError(f"need a finite element > 0, got {a!r}")


def is_atom(group: GammaGroup, a) -> bool:
    """Whether [0, a] has exactly two elements."""
    _require_finite_positive(group, a)
    if isinstance(group, ProductZ):
        return sum(a) == 1
    if isinstance(group, LexZ):
        return a == (0,) * (group.n - 1) + (1,)
    if isinstance(group, RationalChain):
        return False
    if isinstance(group, Step):
        sup = supp(group, a)
        return _is_single_isolated_point(group, sup) and max(a.values) == 1
    raise GroupMismatchError(f"no atoms in {group}")


def is_chain_element(group: GammaGroup, a) -> bool:
    """Whether [0, a] is totally ordered."""
    _require_finite_positive(group, a)
    if isinstance(group, ProductZ):
        return sum(1 for x in a if x != 0) == 1
    if isinstance(group, (LexZ, RationalChain)):
        return True
    if isinstance(group, Step):
        return _is_single_isolated_point(group, supp(group, a))
    raise GroupMismatchError(f"no chain elements in {group}")


def _is_single_isolated_point(group: "Step", sup: ClopenSet) -> bool:
    if len(sup.intervals) != 1:
        return False
    lo, hi = sup.intervals[0]
    if lo is None:
        return hi.is_zero  # [0, hi] is the single point {0} only when hi = 0
    return compare(_ord_succ(lo), hi) == 0 and point_rank(group.space, hi).is_zero


def _ord_succ(x: Ordinal) -> Ordinal:
    from .ordinal import succ

    return succ(x)


def supp(group: "Step", f: StepFunction) -> ClopenSet:
    group.validate(f)
    intervals = []
    cursor = None
    for c, v in zip(f.cuts, f.values):
        if v != 0:
            intervals.append((cursor, c))
        cursor = c
    return ClopenSet.make(group.space, intervals)


def prime_part(group: "Step", f: StepFunction) -> StepFunction:
    """f' : clamp the values of a non-negative function to {0, 1}."""
    group.validate(f)
    if any(v < 0 for v in f.values):
        raise NegativeInputError("f' is defined for f >= 0")
    return f.map(lambda v: min(v, 1))


# -- multiplication prime filter catalogue ------------------------------------


@dataclass(frozen=True)
class MultPrimeReport:
    entries: tuple[str, ...]
    all_maximal: bool
    krull_dim_one: bool
    note: str


def mult_prime_filters_report(group: GammaGroup) -> MultPrimeReport:
    """Catalogue of multiplication prime filters of the positive cone.

    These stand for the non-zero prime ideals of any Bezout domain with this
    value group; the domain has Krull dimension 1 exactly when the group is
    non-trivial and the catalogue is pairwise incomparable (all maximal).
    """
    if isinstance(group, ProductZ):
        entries = tuple(f"up(e{i + 1})" for i in range(group.n))
        return MultPrimeReport(entries, True, True,
                               "principal filters at the unit vectors")
    if isinstance(group, LexZ):
        entries = tuple(f"level{i + 1}: x[1..{i + 1}] > 0" for i in range(group.n))
        return MultPrimeReport(entries, False, False,
                               f"a chain of {group.n} nested filters, one per lex level")
    if isinstance(group, RationalChain):
        return MultPrimeReport(("positives: q > 0",), True, True,
                               "the strictly positive rationals; every other proper "
                               "upward-closed set (a cut) is prime but not "
                               "multiplication prime")
    if isinstance(group, Step):
        alpha = group.rank()
        if group.minus:
            if group.is_trivial():
                return MultPrimeReport((), True, False, "trivial group: no proper filters")
            entries = (f"F_x for x in [0,{group.space.top}] with rank(x) < {alpha}",)
        else:
            entries = (f"F_x = {{f : f(x) > 0}} for every x in [0,{group.space.top}]",)
        return MultPrimeReport(entries, True, True, "point filters; pairwise incomparable")
    if isinstance(group, Trivial):
        return MultPrimeReport((), True, False, "trivial group: no proper filters")
    raise GroupMismatchError(f"no catalogue for {group}")


# -- gamma-spec grammar --------------------------------------------------------

# G := 'Z' | 'Z^'INT | 'lex(' G (',' G)* ')' (Z entries only) | 'Q'
#    | 'C(' ORD ')' | 'Cminus(' ORD ')' | 'triv'


def parse_gamma(text: str) -> GammaGroup:
    s = text.strip()
    if s == "Z":
        return ProductZ(1)
    if s == "Q":
        return RationalChain()
    if s == "triv":
        return Trivial()
    if s.startswith("Z^"):
        body = s[2:]
        if not body.isdigit() or int(body) < 1:
            raise GammaSyntaxError("expected positive integer after 'Z^'", text.index("^") + 1)
        return ProductZ(int(body))
    if s.startswith("lex(") and s.endswith(")"):
        inner = s[4:-1]
        parts = [p.strip() for p in inner.split(",")]
        if not parts or any(p != "Z" for p in parts):
            raise GammaSyntaxError("lex(...) takes Z entries only", 4)
        if len(parts) == 1:
            return ProductZ(1)
        return LexZ(len(parts))
    for prefix, minus in (("Cminus(", True), ("C(", False)):
        if s.startswith(prefix) and s.endswith(")"):
            inner = s[len(prefix):-1]
            try:
                top = parse_ordinal(inner)
            except ValueError as exc:
                offset = len(prefix) + getattr(exc, "offset", 0)
                raise GammaSyntaxError(f"bad ordinal in {prefix}...): {exc}", offset) from exc
            return Step(OrdinalSpace.interval(top), minus=minus)
    raise GammaSyntaxError(f"unrecognised group spec {text!r}", 0)


# -- element literals ----------------------------------------------------------


def render_element(group: GammaGroup, a) -> str:
    if a is INF:
        return "inf"
    if isinstance(group, (ProductZ, LexZ)):
        return ":".join(str(x) for x in a)
    if isinstance(group, RationalChain):
        return str(a)
    if isinstance(group, Trivial):
        return "0"
    if isinstance(group, Step):
        return str(a)
    raise GroupMismatchError(f"cannot render for {group}")


def parse_element(group: GammaGroup, text: str):
    """Inverse of render_element for the classes the CLI exposes."""
    s = text.strip()
    if s == "inf":
        return INF
    try:
        if isinstance(group, (ProductZ, LexZ)):
            parts = s.split(":")
            if len(parts) != getattr(group, "n"):
                raise ValueError(f"expected {group.n} coordinates")
            return tuple(int(p) for p in parts)
        if isinstance(group, RationalChain):
            return Fraction(s)
        if isinstance(group, Trivial):
            return ()
    except ValueError as exc:
        raise GammaSyntaxError(f"bad element literal {text!r}: {exc}", 0) from exc
    raise GammaSyntaxError(f"no element literals for {group}", 0)
