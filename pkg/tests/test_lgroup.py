import itertools
from fractions import Fraction

import pytest

from gammadim.boolspace import ClopenSet, OrdinalSpace, cb_rank_space, point_rank
from gammadim.lgroup import (
    INF,
    GammaSyntaxError,
    GroupMismatchError,
    LexZ,
    NegativeInputError,
    NotPositiveError,
    ProductZ,
    RationalChain,
    Step,
    StepFunction,
    Trivial,
    cone_add,
    cone_join,
    cone_leq,
    cone_meet,
    is_atom,
    is_chain_element,
    mult_prime_filters_report,
    parse_element,
    parse_gamma,
    prime_part,
    quotient_op,
    render_element,
    supp,
)
from gammadim.ordinal import parse_ordinal

o = parse_ordinal


Z2 = ProductZ(2)
L2 = LexZ(2)
Q = RationalChain()


def grid2(lo=-2, hi=2):
    return [(x, y) for x in range(lo, hi + 1) for y in range(lo, hi + 1)]


def test_lattice_group_axioms_on_grids():
    for G, elems in [
        (Z2, grid2()),
        (L2, grid2()),
        (Q, [Fraction(n, d) for n in range(-4, 5) for d in (1, 2, 3)]),
    ]:
        for a in elems:
            for b in elems:
                assert G.leq(G.meet(a, b), a) and G.leq(G.meet(a, b), b)
                assert G.leq(a, G.join(a, b)) and G.leq(b, G.join(a, b))
                assert G.join(a, b) == G.join(b, a)
                # translation invariance of the order
                if G.leq(a, b):
                    for c in elems[:9]:
                        assert G.leq(G.add(a, c), G.add(b, c))
        # distributivity on a subgrid
        for a, b, c in itertools.product(elems[:7], repeat=3):
            assert G.meet(a, G.join(b, c)) == G.join(G.meet(a, b), G.meet(a, c))


def test_elementwise_examples():
    assert Z2.meet((2, 5), (4, 1)) == (2, 1)
    assert L2.join((0, 7), (1, -3)) == (1, -3)
    assert cone_add(Z2, INF, (1, 1)) is INF
    assert cone_join(L2, INF, (0, 0)) is INF
    assert cone_meet(Z2, INF, (1, 1)) == (1, 1)
    assert cone_leq(Z2, (1, 1), INF)


def test_quotient_op_convention_table():
    assert quotient_op(ProductZ(1), (3,), (1,)) == (2,)
    assert quotient_op(ProductZ(1), (1,), (4,)) == (0,)
    assert quotient_op(L2, (1, 0), (0, 5)) == (1, -5)
    assert quotient_op(Z2, INF, (1, 1)) is INF
    assert quotient_op(Z2, (1, 1), INF) == (0, 0)
    assert quotient_op(Z2, INF, INF) == (0, 0)


def interval_elements(G, a, box):
    return [x for x in box if G.leq(G.zero(), x) and G.leq(x, a)]


def test_atoms_by_interval_enumeration_product():
    box = grid2(0, 3)
    for a in box:
        if a == (0, 0):
            continue
        want_atom = len(interval_elements(Z2, a, box)) == 2
        assert is_atom(Z2, a) == want_atom
        pts = interval_elements(Z2, a, box)
        want_chain = all(Z2.leq(x, y) or Z2.leq(y, x) for x in pts for y in pts)
        assert is_chain_element(Z2, a) == want_chain


def test_atoms_lex():
    # [0, (0,1)] = {(0,0), (0,1)}: anything else below it would have first
    # coordinate 0 and second in between, so a box enumeration is exhaustive
    assert interval_elements(L2, (0, 1), grid2(-3, 3)) == [(0, 0), (0, 1)]
    assert is_atom(L2, (0, 1))
    assert not is_atom(L2, (1, 0))
    assert not is_atom(L2, (0, 2))
    assert is_chain_element(L2, (1, -5))


def test_atoms_rationals():
    assert not is_atom(Q, Fraction(1, 2))
    assert is_chain_element(Q, Fraction(7, 3))
    with pytest.raises(NotPositiveError):
        is_atom(Q, Fraction(0))
    with pytest.raises(NotPositiveError):
        is_chain_element(Z2, (0, -1))


def make_step(space, pieces):
    cuts, values = zip(*pieces)
    return StepFunction.make([o(c) for c in cuts], values)


def test_step_canonical_form_merges():
    space = OrdinalSpace.interval(o("w"))
    f = make_step(space, [("3", 1), ("5", 1), ("w", 0)])
    assert f == make_step(space, [("5", 1), ("w", 0)])
    assert f.cuts[-1] == o("w")


def test_step_arithmetic_matches_pointwise():
    space = OrdinalSpace.interval(o("w*2"))
    G = Step(space)
    f = make_step(space, [("4", 2), ("w", -1), ("w*2", 3)])
    g = make_step(space, [("2", 5), ("w+3", 0), ("w*2", 1)])
    samples = [o(s) for s in ["0", "2", "3", "4", "5", "w", "w+1", "w+3", "w+4", "w*2"]]
    for x in samples:
        assert G.add(f, g).value_at(x) == f.value_at(x) + g.value_at(x)
        assert G.join(f, g).value_at(x) == max(f.value_at(x), g.value_at(x))
        assert G.meet(f, g).value_at(x) == min(f.value_at(x), g.value_at(x))
        assert G.neg(f).value_at(x) == -f.value_at(x)
    assert G.leq(G.meet(f, g), f)


def test_step_atom_example():
    G = Step(OrdinalSpace.interval(o("w")))
    chi = make_step(G.space, [("3", 0), ("4", 1), ("w", 0)])
    assert is_atom(G, chi)
    assert is_chain_element(G, chi.map(lambda v: 3 * v))
    assert not is_atom(G, chi.map(lambda v: 3 * v))
    wide = make_step(G.space, [("3", 0), ("5", 1), ("w", 0)])
    assert not is_atom(G, wide)
    at_limit = make_step(G.space, [("5", 0), ("w", 1)])
    # support (5, w] is no single point
    assert not is_chain_element(G, at_limit)


def test_supp_and_prime_part_properties():
    space = OrdinalSpace.interval(o("w"))
    G = Step(space)
    fs = [
        make_step(space, [("3", 2), ("w", 0)]),
        make_step(space, [("3", 0), ("7", 4), ("w", 1)]),
        make_step(space, [("w", 5)]),
        make_step(space, [("1", 1), ("4", 0), ("6", 2), ("w", 0)]),
        G.zero(),
    ]
    from gammadim.boolspace import intersection, union

    for f in fs:
        fp = prime_part(G, f)
        assert set(fp.values) <= {0, 1}
        assert supp(G, fp) == supp(G, f)
        # f' <= f <= n f' for some n
        n = max(f.values) if max(f.values) > 0 else 1
        assert G.leq(fp, f) and G.leq(f, fp.map(lambda v: n * v))
        for g in fs:
            if supp(G, f) == supp(G, g):
                assert prime_part(G, f) == prime_part(G, g)
            assert supp(G, G.meet(f, g)) == intersection(supp(G, f), supp(G, g))
            assert supp(G, G.join(f, g)) == union(supp(G, f), supp(G, g))
            assert G.leq(prime_part(G, f), prime_part(G, g)) == (
                len(intersection(supp(G, f), complement_of(G, g)).intervals) == 0
            )
    assert supp(G, G.zero()).is_empty_set
    with pytest.raises(NegativeInputError):
        prime_part(G, G.neg(fs[0]))


def complement_of(G, g):
    from gammadim.boolspace import complement

    return complement(supp(G, g))


def test_minus_group_constraint():
    space = OrdinalSpace.interval(o("w*2"))
    G = Step(space, minus=True)
    ok = make_step(space, [("5", 3), ("w", 0), ("w+4", -2), ("w*2", 0)])
    G.validate(ok)
    bad = make_step(space, [("w", 1), ("w*2", 0)])  # nonzero at the point w
    with pytest.raises(GroupMismatchError):
        G.validate(bad)
    # the constraint set is exactly the final derivative
    assert [str(p) for p in G.max_rank_points()] == ["w", "w*2"]
    # closed under the lattice operations
    f2 = make_step(space, [("2", -1), ("w", 0), ("w+9", 5), ("w*2", 0)])
    for h in (G.add(ok, f2), G.join(ok, f2), G.meet(ok, f2), G.neg(ok)):
        G.validate(h)


def test_mult_prime_reports():
    r = mult_prime_filters_report(Z2)
    assert r.krull_dim_one and r.all_maximal and len(r.entries) == 2
    r = mult_prime_filters_report(L2)
    assert not r.krull_dim_one and not r.all_maximal and len(r.entries) == 2
    r = mult_prime_filters_report(Step(OrdinalSpace.interval(o("w"))))
    assert r.krull_dim_one and r.all_maximal
    r = mult_prime_filters_report(Q)
    assert r.krull_dim_one and r.all_maximal and len(r.entries) == 1
    assert not mult_prime_filters_report(Trivial()).krull_dim_one


def test_mult_prime_grid_oracle_product():
    # a + b in F implies a in F or b in F, checked over a bounded grid
    def filter_up(v):
        return lambda x: all(c >= w for c, w in zip(x, v))

    box = grid2(0, 4)
    for v in [(1, 0), (0, 1), (2, 0), (1, 1)]:
        member = filter_up(v)
        mult_prime = all(
            member(a) or member(b)
            for a in box
            for b in box
            if member(tuple(x + y for x, y in zip(a, b)))
        )
        assert mult_prime == (sum(v) == 1)


def test_parse_gamma_round_trip():
    for spec in ["Z", "Z^4", "lex(Z,Z)", "lex(Z,Z,Z)", "Q", "C(w^2)", "Cminus(w)", "triv"]:
        G = parse_gamma(spec)
        assert parse_gamma(G.spec()) == G
    assert parse_gamma("lex(Z,Z)") == L2
    assert parse_gamma("Cminus(w^2)") == Step(OrdinalSpace.interval(o("w^2")), minus=True)
    with pytest.raises(GammaSyntaxError):
        parse_gamma("lex(Q)")
    with pytest.raises(GammaSyntaxError):
        parse_gamma("Z^0")
    with pytest.raises(GammaSyntaxError):
        parse_gamma("C(5x)")


def test_element_literals():
    assert parse_element(Z2, "3:4") == (3, 4)
    assert parse_element(Z2, "inf") is INF
    assert render_element(Z2, (3, 4)) == "3:4"
    assert parse_element(Q, "3/4") == Fraction(3, 4)
    assert parse_element(ProductZ(1), "7") == (7,)
    with pytest.raises(GammaSyntaxError):
        parse_element(Z2, "1:2:3")
