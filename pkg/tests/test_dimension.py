import pytest

from gammadim.boolspace import OrdinalSpace, cb_rank_space, point_rank
from gammadim.dimension import (
    BUDGET_ENV_VAR,
    CollapseClass,
    Terminal,
    breadth_cone,
    collapse_step,
    iteration_budget,
    mdim_cone,
    s_chain,
)
from gammadim.lgroup import LexZ, ProductZ, RationalChain, Step, StepFunction, Trivial, is_atom, supp
from gammadim.ordinal import ZERO, Ordinal, parse_ordinal

o = parse_ordinal
TWO, CHAIN = CollapseClass.TWO, CollapseClass.CHAIN


def test_collapse_step_examples():
    assert collapse_step(ProductZ(3), TWO) == Trivial()
    assert collapse_step(LexZ(3), TWO) == LexZ(2)
    assert collapse_step(LexZ(2), TWO) == ProductZ(1)
    assert collapse_step(RationalChain(), TWO) == RationalChain()
    assert collapse_step(Step(OrdinalSpace.interval(o("w^2"))), TWO) == Step(
        OrdinalSpace.interval(o("w")))
    assert collapse_step(Step(OrdinalSpace.interval(o("5"))), TWO) == Trivial()


def test_mdim_closed_forms():
    assert mdim_cone(ProductZ(1)).value == o("1")
    assert mdim_cone(ProductZ(4)).value == o("1")
    assert mdim_cone(LexZ(4)).value == o("4")
    assert mdim_cone(Trivial()).value == ZERO
    assert mdim_cone(RationalChain()).value is None
    assert mdim_cone(Step(OrdinalSpace.interval(o("w^2")))).value == o("3")
    assert mdim_cone(Step(OrdinalSpace.interval(o("w")), minus=True)).value == o("1")
    assert mdim_cone(Step(OrdinalSpace.interval(o("w^w")), minus=True)).value == o("w")


def test_breadth_closed_forms():
    assert breadth_cone(RationalChain()).value == ZERO
    assert breadth_cone(LexZ(3)).value == ZERO
    assert breadth_cone(ProductZ(2)).value == o("1")
    assert breadth_cone(Step(OrdinalSpace.interval(o("w")))).value == o("1")
    assert breadth_cone(Step(OrdinalSpace.interval(o("w*2")))).value == o("2")
    assert breadth_cone(Step(OrdinalSpace.interval(o("w^2*3+w")))).value == o("3")
    assert breadth_cone(Step(OrdinalSpace.interval(o("0")))).value == ZERO


def test_closed_equals_literal_on_zoo():
    zoo = [ProductZ(n) for n in range(1, 5)] + [LexZ(n) for n in range(2, 5)]
    for lit in ["5", "w", "w*2", "w^2", "w^2*3+w"]:
        zoo.append(Step(OrdinalSpace.interval(o(lit))))
        zoo.append(Step(OrdinalSpace.interval(o(lit)), minus=True))
    for G in zoo:
        for fn in (mdim_cone, breadth_cone):
            r = fn(G)
            assert r.method == "both", (G, fn.__name__)
            assert r.value == Ordinal.from_int(r.chain.terminal_stage)


def test_breadth_never_exceeds_mdim():
    zoo = [ProductZ(2), LexZ(3), Trivial(),
           Step(OrdinalSpace.interval(o("w*2"))),
           Step(OrdinalSpace.interval(o("w^2")), minus=True)]
    for G in zoo:
        assert breadth_cone(G).value <= mdim_cone(G).value


def test_zero_dimension_characterisations():
    # m-dimension 0 is exactly triviality; breadth 0 exactly total order
    zoo = [Trivial(), ProductZ(1), ProductZ(2), LexZ(2), RationalChain(),
           Step(OrdinalSpace.interval(o("5")), minus=True),
           Step(OrdinalSpace.interval(o("w")))]
    for G in zoo:
        m = mdim_cone(G).value
        b = breadth_cone(G).value
        assert (m == ZERO) == G.is_trivial()
        assert (b == ZERO) == G.is_totally_ordered()


def test_s_chain_examples():
    chain = s_chain(LexZ(2), TWO)
    assert [g.spec() for g in chain.steps] == ["lex(Z,Z)", "Z", "triv"]
    assert chain.terminal is Terminal.TRIVIAL and chain.terminal_stage == 2
    chain = s_chain(RationalChain(), TWO)
    assert [g.spec() for g in chain.steps] == ["Q"]
    assert chain.terminal is Terminal.STALLED
    chain = s_chain(ProductZ(2), CHAIN)
    assert [g.spec() for g in chain.steps] == ["Z^2", "triv"]
    assert chain.terminal is Terminal.TOTALLY_ORDERED and chain.terminal_stage == 1


def test_limit_rank_spaces_are_closed_form_only():
    G = Step(OrdinalSpace.interval(o("w^w")))
    r = mdim_cone(G)
    assert r.value == o("w+1")
    assert r.method == "closed_form"
    assert r.chain.terminal is Terminal.TRUNCATED


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "3")
    assert iteration_budget() == 3
    r = mdim_cone(Step(OrdinalSpace.interval(o("w^2*3+w"))))
    # needs 3 collapse steps; budget 3 still reaches the trivial stage
    assert r.method == "both"
    monkeypatch.setenv(BUDGET_ENV_VAR, "2")
    r = mdim_cone(Step(OrdinalSpace.interval(o("w^2*3+w"))))
    assert r.method == "closed_form" and r.chain.terminal is Terminal.TRUNCATED
    monkeypatch.setenv(BUDGET_ENV_VAR, "junk")
    assert iteration_budget() == 64


def test_collapse_kernel_is_isolated_support():
    # the first collapse of a step-function cone identifies exactly the
    # functions supported on isolated points
    space = OrdinalSpace.interval(o("w*2"))
    G = Step(space)
    collapsed = collapse_step(G, TWO)
    assert collapsed == Step(OrdinalSpace.interval(o("1")))

    def in_kernel(f) -> bool:
        sup = supp(G, f)
        for lo, hi in sup.intervals:
            if not point_rank(space, hi).is_zero:
                return False
            if lo is None:
                if not hi.is_finite:
                    return False
            else:
                from gammadim.ordinal import succ

                if succ(lo) != hi and not (hi.is_finite and lo.is_finite):
                    return False
        return True

    # restriction to the surviving subspace models the quotient map: a
    # function dies iff its support misses every non-isolated point
    def survives(f) -> bool:
        return any(f.value_at(x) != 0 for x in (o("w"), o("w*2")))

    fs = [
        StepFunction.make([o("3"), o("w*2")], [1, 0]),
        StepFunction.make([o("w"), o("w*2")], [1, 0]),
        StepFunction.make([o("5"), o("w"), o("w*2")], [2, 0, 3]),
        StepFunction.make([o("w*2")], [4]),
        StepFunction.make([o("w+5"), o("w*2")], [0, 2]),
        StepFunction.make([o("1"), o("2"), o("w*2")], [5, -1, 0]),
    ]
    for f in fs:
        assert in_kernel(f) == (not survives(f))


def test_atom_generators_match_collapse():
    # atoms of C(X) are exactly the one-point indicators, the generators the
    # first collapse factors out
    space = OrdinalSpace.interval(o("w"))
    G = Step(space)
    chi4 = StepFunction.make([o("3"), o("4"), o("w")], [0, 1, 0])
    assert is_atom(G, chi4)
    chi_lim = StepFunction.make([o("5"), o("w")], [0, 1])
    assert not is_atom(G, chi_lim)
