import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from walkslab.coloring import (
    CantorPoint,
    ClopenWeighting,
    ColoringError,
    Osc,
    c,
    enumeration,
    eval_weighting,
    f,
    mu,
    mu_eval,
    mu_recursive,
    nth_prime,
    o,
    o_star,
    osc,
    osc_set,
    osc_set_scan,
    osc_star,
    pair,
    star,
    unpair,
    w_of,
    weighting_index,
    z_of,
)
from walkslab.ordinal import ONE, ZERO, Ordinal, decode, parse
from walkslab.sampling import make_rng, sample_pairs
from walkslab.walks import lower_set, rho1

import oracles

P = parse

# least pair with osc >= 1, ordered by beta then alpha, over notations with
# exponents in {0,1,2,3,w}, at most three terms and coefficients at most 3
GOLDEN_OSC_PAIR = ("w^(w)+w", "w^(w)*2+1")


def test_pairing_roundtrip():
    for n in range(500):
        assert pair(*unpair(n)) == n


def test_weighting_enumeration():
    assert enumeration(0) == ClopenWeighting.constant(0)
    for n in range(300):
        assert weighting_index(enumeration(n)) == n
    assert len({enumeration(n) for n in range(300)}) == 300


def test_eval_weighting():
    z1 = CantorPoint("1")
    assert eval_weighting(ClopenWeighting.constant(5), z1) == 5
    assert eval_weighting(ClopenWeighting.constant(5), CantorPoint("0101")) == 5
    two = ClopenWeighting.from_leaves({"0": 3, "1": 8})
    assert eval_weighting(two, z1) == 8
    assert eval_weighting(two, CantorPoint("")) == 3


def test_z_of_zero_and_injective():
    assert z_of(ZERO) == CantorPoint("1")
    pts = {z_of(decode(n)) for n in range(40) if _in_image(n)}
    assert len(pts) == sum(_in_image(n) for n in range(40))


def _in_image(n):
    try:
        decode(n)
        return True
    except ValueError:
        return False


def test_mu_examples():
    a, b = P("w+1"), P("w^(2)")
    assert mu(a, b) == {P("w"): w_of(b)}
    assert mu_eval(a, b, a) == {P("w"): eval_weighting(w_of(b), z_of(a))}
    # single step walk: alpha in C_beta
    assert mu(P("w+2"), P("w*2")) == {P("w+1"): w_of(P("w*2"))}


def test_mu_matches_recursion():
    for a, b in sample_pairs(P("w^(4)"), 500, make_rng(21), 4, 7):
        assert mu(a, b) == mu_recursive(a, b)
        assert set(mu(a, b)) == set(lower_set(a, b))


def test_osc_set_examples():
    F = [ZERO, P("2")]
    s = {ZERO: 0, P("2"): 3}
    t = {ZERO: 1, P("2"): 1}
    assert osc_set(s, t, F) == [P("2")]
    assert osc_set(s, s, F) == []
    assert osc_set(s, t, [P("2")]) == []
    assert osc_set({}, {}, []) == []


def test_osc_examples():
    assert osc(P("w+1"), P("w^(2)")) == 0
    assert osc(P("3"), P("w*2")) == 0


def test_golden_osc_pair():
    a, b = map(P, GOLDEN_OSC_PAIR)
    assert Osc(a, b) == [P("w^(w)+1")]
    assert osc(a, b) == 1 == oracles.naive_osc(a, b)
    assert osc_star(a, b) == 0


def test_no_oscillation_below_omega_squared():
    # exhaustive over coefficients below 8; the golden pair lives higher up
    U = sorted(
        Ordinal(tuple(zip(es, cs)))
        for r in (1, 2)
        for es in itertools.combinations([ONE, ZERO], r)
        for cs in itertools.product(range(1, 8), repeat=r)
    )
    for a, b in itertools.combinations(U, 2):
        assert osc(a, b) == 0


def test_osc_matches_naive_oracle():
    for a, b in sample_pairs(P("w^(3)"), 400, make_rng(5), 3, 6):
        assert osc(a, b) == oracles.naive_osc(a, b)


def test_osc_scan_agrees():
    for a, b in sample_pairs(P("w^(w)"), 300, make_rng(8), 4, 6):
        L = lower_set(a, b)
        s = {x: rho1(x, a) for x in L}
        t = {x: rho1(x, b) for x in L}
        assert osc_set(s, t, L) == osc_set_scan(s, t, L)


def test_star_values():
    assert [star(m) for m in (0, 1, 2, 6, 30)] == [0, 0, 1, 2, 3]
    assert nth_prime(0) == 2 and nth_prime(5) == 13
    for m in range(1, 3000):
        assert star(m) == oracles.naive_star(m)
    with pytest.raises(ColoringError):
        star(-1)


def test_o_definition_edge_cases():
    # hand-built: singleton maps reduce to 1 mod v
    def o_of(values):
        counts = Counter(values)
        return sum(n % q for q, n in counts.items() if q)

    assert o_of([0, 0, 0]) == 0
    assert o_of([5]) == 1
    assert o_of([1]) == 0


def test_colourings_consistent():
    for a, b in sample_pairs(P("w^(3)"), 300, make_rng(9), 3, 9):
        v = o(a, b)
        assert o_star(a, b) == star(v)
        assert c(a, b) == v % 2
        expect = sum(n % q for q, n in Counter(mu_eval(a, b, a).values()).items() if q)
        assert v == expect
        fx = f(a, b)
        assert fx < b


def test_o_golden():
    assert o(P("3"), P("w*2")) == 0


def test_f_rule():
    a, b = map(P, GOLDEN_OSC_PAIR)
    # osc* = 0 = code(0), and 0 < beta
    assert f(a, b) == ZERO
    assert f(P("3"), P("w*2")) == ZERO


def test_pair_errors():
    with pytest.raises(ColoringError):
        o(ZERO, P("w"))
    with pytest.raises(ColoringError):
        mu(P("w"), P("w"))


@given(st.integers(0, 10 ** 6))
def test_star_is_index_of_least_nondividing_prime(m):
    s = star(m)
    if m:
        assert m % nth_prime(s) != 0
        assert all(m % nth_prime(i) == 0 for i in range(s))
