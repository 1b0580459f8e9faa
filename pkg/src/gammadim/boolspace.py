"""Ordinal interval spaces [0, top] and their clopen algebra.

A non-empty space is the closed interval of ordinals [0, top] with the
interval topology: compact, Hausdorff, totally disconnected.  Its scattered
height is read off the Cantor normal form of ``top`` (leading exponent),
and the derivative is again an interval space after the relabelling
x -> x/w, so the representation is closed under derivation.  The empty
space is a first-class value so derivative chains terminate explicitly.

Clopen sets are finite unions of intervals (lo, hi] (with a bottom marker
for [0, hi]); the canonical form - sorted, disjoint, non-adjacent - is
unique, which makes the Boolean operations decidable term rewriting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ordinal import ZERO, Ordinal, compare, div_omega, is_limit

__all__ = [
    "OrdinalSpace",
    "ClopenSet",
    "EmptySpaceError",
    "OutOfSpaceError",
    "SpaceMismatchError",
    "cb_rank_space",
    "derivative",
    "derivative_chain",
    "point_rank",
]


class EmptySpaceError(ValueError):
    pass


class OutOfSpaceError(ValueError):
    pass


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class OrdinalSpace:
    """The space [0, top], or the empty space when ``top`` is None."""

    top: Optional[Ordinal]

    @staticmethod
    def interval(top: Ordinal) -> "OrdinalSpace":
        return OrdinalSpace(top)

    @staticmethod
    def empty() -> "OrdinalSpace":
        return OrdinalSpace(None)

    @property
    def is_empty(self) -> bool:
        return self.top is None

    def __str__(self) -> str:
        return "empty" if self.top is None else f"[0,{self.top}]"


def cb_rank_space(space: OrdinalSpace) -> Ordinal:
    """Scattered rank of [0, top]: the leading CNF exponent of top."""
    if space.is_empty:
        raise EmptySpaceError("empty space has no rank")
    if space.top.is_zero or space.top.is_finite:
        return ZERO
    return space.top.leading_exponent


def derivative(space: OrdinalSpace) -> OrdinalSpace:
    """The space of non-isolated points, relabelled back to interval form.

    Non-isolated points of [0, top] are the limit ordinals w*y, 1 <= y <= d
    where d = div_omega(top); as an order that is [1, d], i.e. [0, d] for
    infinite d and [0, d-1] for finite d >= 1.
    """
    if space.is_empty:
        return space
    delta = div_omega(space.top)
    if delta.is_zero:
        return OrdinalSpace.empty()
    if delta.is_finite:
        return OrdinalSpace(Ordinal.from_int(delta.as_int() - 1))
    return OrdinalSpace(delta)


def derivative_chain(space: OrdinalSpace, cap: int = 64) -> list[OrdinalSpace]:
    """Iterated derivatives until empty (or the cap), starting at the space itself."""
    chain = [space]
    while not chain[-1].is_empty and len(chain) <= cap:
        nxt = derivative(chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def point_rank(space: OrdinalSpace, x: Ordinal) -> Ordinal:
    """Rank of a point: largest r with x in the r-th derivative.

    x survives r derivatives iff w^r divides x, so the rank of a limit
    ordinal is the smallest exponent in its CNF; 0 and successors are
    isolated.
    """
    if space.is_empty:
        raise EmptySpaceError("empty space has no points")
    if compare(x, space.top) > 0:
        raise OutOfSpaceError(f"{x} > {space.top}")
    if x.is_zero or not is_limit(x):
        return ZERO
    return x.terms[-1][0]


# -- clopen sets -------------------------------------------------------------

# An interval is (lo, hi] for ordinals lo < hi, or [0, hi] when lo is None.
Interval = tuple[Optional[Ordinal], Ordinal]


def _lo_lt(lo: Optional[Ordinal], x: Ordinal) -> bool:
    return lo is None or compare(lo, x) < 0


def _lo_max(a: Optional[Ordinal], b: Optional[Ordinal]) -> Optional[Ordinal]:
    if a is None:
        return b
    if b is None:
        return a
    return a if compare(a, b) >= 0 else b


def _lo_key(lo: Optional[Ordinal]):
    # bottom sorts first
    return (0,) if lo is None else (1, _Key(lo))


class _Key:
    __slots__ = ("o",)

    def __init__(self, o):
        self.o = o

    def __lt__(self, other):
        return compare(self.o, other.o) < 0

    def __eq__(self, other):
        return compare(self.o, other.o) == 0


@dataclass(frozen=True, slots=True)
class ClopenSet:
    space: OrdinalSpace
    intervals: tuple[Interval, ...]

    @staticmethod
    def make(space: OrdinalSpace, intervals) -> "ClopenSet":
        """Canonicalise: drop empties, sort, merge overlapping/adjacent pieces."""
        if space.is_empty and intervals:
            raise OutOfSpaceError("empty space has no clopen pieces")
        live = []
        for lo, hi in intervals:
            if not _lo_lt(lo, hi):
                continue
            if compare(hi, space.top) > 0:
                raise OutOfSpaceError(f"interval end {hi} beyond {space.top}")
            live.append((lo, hi))
        live.sort(key=lambda iv: _lo_key(iv[0]))
        merged: list[Interval] = []
        for lo, hi in live:
            if merged:
                plo, phi = merged[-1]
                # overlap or adjacency: lo <= previous hi
                if lo is None or compare(lo, phi) <= 0:
                    if compare(hi, phi) > 0:
                        merged[-1] = (plo, hi)
                    continue
            merged.append((lo, hi))
        return ClopenSet(space, tuple(merged))

    @staticmethod
    def empty_set(space: OrdinalSpace) -> "ClopenSet":
        return ClopenSet(space, ())

    @staticmethod
    def full(space: OrdinalSpace) -> "ClopenSet":
        if space.is_empty:
            return ClopenSet(space, ())
        return ClopenSet(space, ((None, space.top),))

    @property
    def is_empty_set(self) -> bool:
        return not self.intervals

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        parts = []
        for lo, hi in self.intervals:
            parts.append(f"[0,{hi}]" if lo is None else f"({lo},{hi}]")
        return "|".join(parts)


def _check_space(a: ClopenSet, b: ClopenSet):
    if a.space != b.space:
        raise SpaceMismatchError(f"{a.space} vs {b.space}")


def contains(k: ClopenSet, x: Ordinal) -> bool:
    if k.space.is_empty:
        raise OutOfSpaceError("empty space has no points")
    if compare(x, k.space.top) > 0:
        raise OutOfSpaceError(f"{x} > {k.space.top}")
    for lo, hi in k.intervals:
        if _lo_lt(lo, x) and compare(x, hi) <= 0:
            return True
    return False


def union(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    _check_space(a, b)
    return ClopenSet.make(a.space, a.intervals + b.intervals)


def intersection(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    _check_space(a, b)
    out = []
    for lo1, hi1 in a.intervals:
        for lo2, hi2 in b.intervals:
            lo = _lo_max(lo1, lo2)
            hi = hi1 if compare(hi1, hi2) <= 0 else hi2
            if _lo_lt(lo, hi):
                out.append((lo, hi))
    return ClopenSet.make(a.space, out)


def complement(k: ClopenSet) -> ClopenSet:
    if k.space.is_empty:
        return k
    top = k.space.top
    out = []
    cursor: Optional[Ordinal] = None  # complement covers (cursor, ...] so far
    for lo, hi in k.intervals:
        if lo is not None and _lo_lt(cursor, lo):
            out.append((cursor, lo))
        cursor = hi
    if cursor is None or compare(cursor, top) < 0:
        out.append((cursor, top))
    return ClopenSet.make(k.space, out)
