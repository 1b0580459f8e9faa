"""Iterated collapse of extended positive cones by convex subgroups.

Two collapse classes are supported: TWO (intervals of size <= 2 collapse;
the least stage count with trivial quotient is the m-dimension of the
cone) and CHAIN (totally ordered intervals collapse; the least stage with
totally ordered quotient is the breadth).  One collapse step factors out
the convex subgroup generated by the atoms / chain elements, and for every
catalogue class that quotient is again a catalogue class:

    TWO:   Z^n -> triv,  lex stack loses its bottom level,  Q stalls,
           C(X) -> C(X'),  Cminus(X) -> Cminus(X')
    CHAIN: as TWO, except any totally ordered group is terminal.

Stages are iterated concretely only up to a finite budget (limit stages
cannot be traversed mechanically); past it, only the per-class closed
forms answer and the result says so.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Optional

from .boolspace import OrdinalSpace, cb_rank_space, derivative
from .lgroup import GammaGroup, LexZ, ProductZ, RationalChain, Step, Trivial
from .ordinal import ONE, ZERO, Ordinal, add, succ

__all__ = [
    "CollapseClass",
    "Terminal",
    "CollapseChain",
    "DimensionResult",
    "collapse_step",
    "s_chain",
    "mdim_cone",
    "breadth_cone",
    "iteration_budget",
    "BUDGET_ENV_VAR",
]

BUDGET_ENV_VAR = "GAMMADIM_ITER_BUDGET"
DEFAULT_BUDGET = 64


class CollapseClass(enum.Enum):
    TWO = "two"
    CHAIN = "chain"


class Terminal(enum.Enum):
    TRIVIAL = "trivial"
    TOTALLY_ORDERED = "totally_ordered"
    STALLED = "stalled"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class CollapseChain:
    """Stage list of a collapse run; steps[i] is the stage-i quotient group."""

    collapse_class: CollapseClass
    steps: tuple[GammaGroup, ...]
    terminal: Terminal

    @property
    def terminal_stage(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True)
class DimensionResult:
    value: Optional[Ordinal]  # None means the dimension is undefined
    method: str  # "closed_form" | "literal" | "both"
    chain: CollapseChain

    @property
    def defined(self) -> bool:
        return self.value is not None


def iteration_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


def _is_terminal(group: GammaGroup, cls: CollapseClass) -> bool:
    if cls is CollapseClass.TWO:
        return group.is_trivial()
    return group.is_totally_ordered()


def _has_collapse_generators(group: GammaGroup, cls: CollapseClass) -> bool:
    """Whether the stage's convex collapse subgroup is non-trivial."""
    if isinstance(group, RationalChain):
        return cls is CollapseClass.CHAIN  # dense: no atoms, but it is a chain
    if isinstance(group, Trivial):
        return False
    return True  # Z^n and lex stacks have atoms; step groups have isolated points


def collapse_step(group: GammaGroup, cls: CollapseClass) -> GammaGroup:
    """The quotient by the convex subgroup the class collapses; terminal and
    stalled stages map to themselves."""
    if _is_terminal(group, cls):
        return group
    if isinstance(group, ProductZ):
        return Trivial()
    if isinstance(group, LexZ):
        return ProductZ(1) if group.n == 2 else LexZ(group.n - 1)
    if isinstance(group, RationalChain):
        return group  # no atoms: TWO-collapse stalls
    if isinstance(group, Step):
        nxt = derivative(group.space)
        if nxt.is_empty:
            return Trivial()
        return Step(nxt, minus=group.minus)
    raise TypeError(f"no collapse rule for {group}")


def s_chain(group: GammaGroup, cls: CollapseClass, budget: Optional[int] = None) -> CollapseChain:
    """Full stage list with terminal marker.

    At the ring level stage i is the localisation at the saturated
    multiplicative set generated transfinitely by the irreducible elements
    (TWO) or by the elements with totally ordered factor (CHAIN).
    """
    limit = iteration_budget(budget)
    steps = [group]
    while True:
        cur = steps[-1]
        if _is_terminal(cur, cls):
            kind = Terminal.TRIVIAL if cls is CollapseClass.TWO else Terminal.TOTALLY_ORDERED
            return CollapseChain(cls, tuple(steps), kind)
        if len(steps) > limit:
            return CollapseChain(cls, tuple(steps), Terminal.TRUNCATED)
        nxt = collapse_step(cur, cls)
        if nxt == cur:
            kind = Terminal.TRUNCATED if _has_collapse_generators(cur, cls) else Terminal.STALLED
            return CollapseChain(cls, tuple(steps), kind)
        steps.append(nxt)


def _final_derivative_size(space: OrdinalSpace) -> int:
    """Point count of the last non-empty derivative of [0, top]."""
    top = space.top
    if top.is_finite:
        return top.as_int() + 1
    return top.leading_coefficient


def _closed_mdim(group: GammaGroup) -> Optional[Ordinal]:
    if group.is_trivial():
        return ZERO
    if isinstance(group, ProductZ):
        return ONE
    if isinstance(group, LexZ):
        return Ordinal.from_int(group.n)
    if isinstance(group, RationalChain):
        return None
    if isinstance(group, Step):
        rank = cb_rank_space(group.space)
        return rank if group.minus else succ(rank)
    raise TypeError(f"no m-dimension rule for {group}")


def _closed_breadth(group: GammaGroup) -> Optional[Ordinal]:
    if group.is_totally_ordered():
        return ZERO
    if isinstance(group, ProductZ):
        return ONE
    if isinstance(group, Step):
        rank = cb_rank_space(group.space)
        if group.minus:
            return rank
        # last stage is Z^m: one more step exactly when m >= 2
        extra = ONE if _final_derivative_size(group.space) >= 2 else ZERO
        return add(rank, extra)
    raise TypeError(f"no breadth rule for {group}")


def _result(group: GammaGroup, cls: CollapseClass, closed: Optional[Ordinal],
            budget: Optional[int]) -> DimensionResult:
    chain = s_chain(group, cls, budget)
    if chain.terminal in (Terminal.TRIVIAL, Terminal.TOTALLY_ORDERED):
        literal = Ordinal.from_int(chain.terminal_stage)
        if closed is None or closed != literal:
            raise AssertionError(
                f"closed form {closed} disagrees with iteration {literal} for {group}")
        return DimensionResult(closed, "both", chain)
    if chain.terminal is Terminal.STALLED:
        if closed is not None:
            raise AssertionError(f"stalled chain but closed form {closed} for {group}")
        return DimensionResult(None, "both", chain)
    return DimensionResult(closed, "closed_form", chain)


def mdim_cone(group: GammaGroup, budget: Optional[int] = None) -> DimensionResult:
    """m-dimension of the extended positive cone; None when undefined (dense case)."""
    return _result(group, CollapseClass.TWO, _closed_mdim(group), budget)


def breadth_cone(group: GammaGroup, budget: Optional[int] = None) -> DimensionResult:
    """Breadth of the extended positive cone: stages until a total order."""
    return _result(group, CollapseClass.CHAIN, _closed_breadth(group), budget)
