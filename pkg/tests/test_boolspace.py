import itertools

import pytest

from gammadim.boolspace import (
    ClopenSet,
    EmptySpaceError,
    OrdinalSpace,
    OutOfSpaceError,
    SpaceMismatchError,
    cb_rank_space,
    complement,
    contains,
    derivative,
    derivative_chain,
    intersection,
    point_rank,
    union,
)
from gammadim.ordinal import ZERO, Ordinal, div_omega, mul, parse_ordinal

o = parse_ordinal
sp = lambda lit: OrdinalSpace.interval(o(lit))


def test_rank_examples():
    assert cb_rank_space(sp("12")) == ZERO
    assert cb_rank_space(sp("w^2")) == o("2")
    assert cb_rank_space(sp("w^2*3+w")) == o("2")
    with pytest.raises(EmptySpaceError):
        cb_rank_space(OrdinalSpace.empty())


def test_rank_by_literal_iteration():
    # count derivatives until empty; the rank is one less
    for lit in ["0", "5", "w", "w*2", "w^2", "w^2*3+w", "w^3+w"]:
        space = sp(lit)
        chain = derivative_chain(space)
        assert chain[-1].is_empty
        assert cb_rank_space(space) == Ordinal.from_int(len(chain) - 2)


def test_derivative_examples():
    assert derivative(sp("5")).is_empty
    assert derivative(sp("w*2")) == sp("1")
    assert derivative(sp("w^2")) == sp("w")
    assert derivative(OrdinalSpace.empty()).is_empty


def test_point_rank_examples():
    assert point_rank(sp("w^2"), ZERO) == ZERO
    assert point_rank(sp("w^3"), o("w^2*4")) == o("2")
    assert point_rank(sp("w"), o("w")) == o("1")
    with pytest.raises(OutOfSpaceError):
        point_rank(sp("5"), o("6"))


def test_point_rank_against_divisibility():
    # x survives r derivatives iff w^r divides it: check over a sampled grid
    space = sp("w^3")
    samples = ["0", "3", "w", "w+1", "w*4", "w^2", "w^2+w", "w^2*5+w*2", "w^3", "w^2+3"]
    for lit in samples:
        x = o(lit)
        r = point_rank(space, x)
        if x.is_zero:
            assert r == ZERO
            continue
        # w^r divides x and w^(r+1) does not
        from gammadim.ordinal import omega_power, succ, sub

        def divides(power: Ordinal) -> bool:
            # power * q = x for some q: in normal form, every exponent >= power's
            return all(not e < power.leading_exponent for e, _ in x.terms)

        assert divides(omega_power(r))
        assert not divides(omega_power(succ(r)))


def test_finite_space_is_discrete():
    space = sp("7")
    for n in range(8):
        assert point_rank(space, Ordinal.from_int(n)) == ZERO
    assert derivative(space).is_empty


def _all_clopens(space, n):
    # every subset of a finite space is clopen; build it from singleton intervals
    points = list(range(n + 1))
    for bits in itertools.product([0, 1], repeat=n + 1):
        chosen = [p for p, b in zip(points, bits) if b]
        intervals = []
        for p in chosen:
            lo = None if p == 0 else Ordinal.from_int(p - 1)
            intervals.append((lo, Ordinal.from_int(p)))
        yield frozenset(chosen), ClopenSet.make(space, intervals)


def test_clopen_boolean_algebra_exhaustive():
    n = 4
    space = sp(str(n))
    table = dict(_all_clopens(space, n))
    sets = list(table.items())
    for (s1, k1), (s2, k2) in itertools.product(sets, repeat=2):
        assert table[frozenset(s1 | s2)] == union(k1, k2)
        assert table[frozenset(s1 & s2)] == intersection(k1, k2)
    full = frozenset(range(n + 1))
    for s, k in sets:
        assert table[full - s] == complement(k)
        for p in range(n + 1):
            assert contains(k, Ordinal.from_int(p)) == (p in s)
    # canonical forms are unique, so double complement is literal identity
    for _, k in sets:
        assert complement(complement(k)) == k


def test_clopen_examples_transfinite():
    space = sp("w")
    k1 = ClopenSet.make(space, [(o("3"), o("w"))])
    k2 = ClopenSet.make(space, [(None, o("5"))])
    assert intersection(k1, k2) == ClopenSet.make(space, [(o("3"), o("5"))])
    assert contains(ClopenSet.make(sp("w*2"), [(o("w"), o("w*2"))]), o("w*2"))
    assert complement(ClopenSet.empty_set(space)) == ClopenSet.full(space)
    assert union(k1, k2) == ClopenSet.full(space)


def test_clopen_adjacent_intervals_merge():
    space = sp("w")
    k = ClopenSet.make(space, [(o("2"), o("4")), (o("4"), o("9"))])
    assert k == ClopenSet.make(space, [(o("2"), o("9"))])


def test_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        union(ClopenSet.full(sp("5")), ClopenSet.full(sp("6")))


def test_derivative_chain_matches_divisor():
    for lit in ["w^2*3+w", "w^2", "w*5+3"]:
        space = sp(lit)
        step = derivative(space)
        delta = div_omega(space.top)
        if delta.is_zero:
            assert step.is_empty
        elif delta.is_finite:
            assert step.top == Ordinal.from_int(delta.as_int() - 1)
        else:
            assert step.top == delta
