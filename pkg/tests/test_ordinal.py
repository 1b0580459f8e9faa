import pytest
from hypothesis import given, settings, strategies as st

from gammadim.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalSyntaxError,
    add,
    compare,
    div_omega,
    is_limit,
    mul,
    natural_sum,
    omega_power,
    parse_ordinal,
    sub,
    succ,
)

o = parse_ordinal


# Independent oracle: ordinals below w^w as {finite exponent: coefficient}
# polynomials, with the textbook recursions written from scratch.

def poly_of(x: Ordinal) -> dict[int, int]:
    return {e.as_int(): c for e, c in x.terms}


def poly_cmp(p: dict, q: dict) -> int:
    for e in sorted(set(p) | set(q), reverse=True):
        a, b = p.get(e, 0), q.get(e, 0)
        if a != b:
            return -1 if a < b else 1
    return 0


def poly_add(p: dict, q: dict) -> dict:
    if not q:
        return dict(p)
    lead = max(q)
    out = {e: c for e, c in p.items() if e > lead}
    out[lead] = q[lead] + p.get(lead, 0)
    for e, c in q.items():
        if e != lead:
            out[e] = c
    return out


def poly_mul(p: dict, q: dict) -> dict:
    if not p or not q:
        return {}
    lead = max(p)
    out: dict[int, int] = {}
    for e in sorted(q, reverse=True):
        if e > 0:
            out = poly_add(out, {lead + e: q[e]})
        else:
            part = {x: c for x, c in p.items() if x < lead}
            part[lead] = p[lead] * q[0]
            out = poly_add(out, part)
    return out


SMALL = [o(s) for s in [
    "0", "1", "2", "7", "w", "w+1", "w+3", "w*2", "w*2+1", "w*3",
    "w^2", "w^2+w", "w^2+1", "w^2*3+w*5+7", "w^2*2+w", "w^3", "w^3+w^2*4",
]]


def test_compare_examples():
    assert compare(OMEGA, Ordinal.from_int(3)) > 0
    assert compare(o("w*2+1"), o("w*2+1")) == 0
    assert compare(o("w^2+w"), o("w^2+1")) > 0


def test_compare_matches_poly_oracle():
    for a in SMALL:
        for b in SMALL:
            assert compare(a, b) == poly_cmp(poly_of(a), poly_of(b))


def test_add_mul_match_poly_oracle():
    for a in SMALL:
        for b in SMALL:
            assert poly_of(add(a, b)) == poly_add(poly_of(a), poly_of(b))
            assert poly_of(mul(a, b)) == poly_mul(poly_of(a), poly_of(b))


def test_arithmetic_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert mul(o("w+1"), Ordinal.from_int(2)) == o("w*2+1")
    assert is_limit(o("w*3"))
    assert not is_limit(o("w*3+1")) and not is_limit(ZERO)
    assert succ(o("w")) == o("w+1")


def test_associativity_and_distributivity():
    for a in SMALL[:10]:
        for b in SMALL[:10]:
            for c in SMALL[:10]:
                assert add(add(a, b), c) == add(a, add(b, c))
                assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


def test_right_add_monotone():
    for a in SMALL:
        for b in SMALL:
            if compare(a, b) < 0:
                for c in SMALL[:8]:
                    assert compare(add(c, a), add(c, b)) < 0


def test_sub_left_inverse():
    for a in SMALL:
        for b in SMALL:
            if compare(b, a) <= 0:
                assert add(b, sub(a, b)) == a
            else:
                with pytest.raises(ValueError):
                    sub(a, b)


def test_div_omega_examples():
    assert div_omega(Ordinal.from_int(7)) == ZERO
    assert div_omega(o("w^2*3+w*5+7")) == o("w*3+5")
    assert div_omega(o("w^w")) == o("w^w")


def test_div_omega_bracketing():
    for a in SMALL + [o("w^w"), o("w^w+w*2"), o("w^(w+1)*2")]:
        d = div_omega(a)
        assert compare(mul(OMEGA, d), a) <= 0
        assert compare(a, mul(OMEGA, succ(d))) < 0


def test_natural_sum():
    assert natural_sum(o("w+1"), o("w+1")) == o("w*2+2")
    assert natural_sum(o("w^2"), o("w")) == o("w^2+w")
    for a in SMALL:
        for b in SMALL:
            assert natural_sum(a, b) == natural_sum(b, a)
            assert compare(natural_sum(a, b), add(a, b)) >= 0


ordinals = st.deferred(
    lambda: st.lists(
        st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=9)),
        max_size=3,
    ).map(_from_pairs)
)


def _from_pairs(pairs):
    seen = {}
    for e, c in pairs:
        seen[e] = c
    terms = tuple((Ordinal.from_int(e), c) for e, c in sorted(seen.items(), reverse=True))
    return Ordinal(terms)


@given(ordinals)
@settings(max_examples=200)
def test_parse_render_round_trip(a):
    assert parse_ordinal(str(a)) == a


def test_nested_exponent_round_trip():
    for text in ["w^w", "w^(w+1)", "w^(w*2)", "w^w^2", "w^(w^2+1)*4+w*2+9"]:
        a = parse_ordinal(text)
        assert parse_ordinal(str(a)) == a


def test_parse_errors_carry_offset():
    with pytest.raises(OrdinalSyntaxError) as err:
        parse_ordinal("w^2+")
    assert err.value.offset == 4
    with pytest.raises(OrdinalSyntaxError):
        parse_ordinal("3+x")


def test_omega_power_constructor():
    assert omega_power(o("w")) == o("w^w")
    assert omega_power(ZERO, 5) == Ordinal.from_int(5)
