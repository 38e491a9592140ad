import itertools

import pytest
from hypothesis import given, settings, strategies as st

from walkslab.ordinal import ONE, ZERO, Ordinal, parse
from walkslab.sampling import make_rng, sample_below, sample_pairs
from walkslab.walks import (
    WalkError,
    delta_probe,
    e_values,
    lower_set,
    lower_trace,
    lower_trace_recursive,
    rho1,
    rho1_recursive,
    upper_trace,
    upper_trace_recursive,
    walk,
)

import oracles

P = parse


def test_walk_examples():
    a, b = P("w+1"), P("w^(2)")
    assert upper_trace(a, b) == [P("w^(2)"), P("w*2")]
    assert lower_set(a, b) == (P("w"),)
    assert lower_trace(a, b) == [P("w"), P("w")]
    assert rho1(a, b) == 2
    assert walk(a, b).weights == (2, 2)

    a, b = P("3"), P("w*2")
    assert upper_trace(a, b) == [P("w*2"), P("w")]
    assert lower_set(a, b) == (ZERO, P("2"))
    assert walk(a, b).weights == (1, 3)


def test_trivial_walks():
    x = P("w^(2)+3")
    assert upper_trace(x, x) == []
    assert lower_trace(x, x) == []
    assert rho1(x, x) == 0
    assert upper_trace(ZERO, x) == [x]
    assert rho1(ZERO, x) == 0


def test_successor_instance():
    assert rho1(P("2"), P("w")) == 2
    assert rho1(P("2"), P("w+1")) == 2


def test_errors():
    with pytest.raises(WalkError, match="alpha must be below beta"):
        walk(P("w"), P("3"))
    with pytest.raises(WalkError):
        lower_trace(ZERO, P("w"))


def test_e_values_and_delta():
    assert e_values(P("w"), [ONE, P("2"), P("3")]) == {ONE: 1, P("2"): 2, P("3"): 3}
    assert e_values(P("w^(2)"), []) == {}
    assert delta_probe(P("w*2"), P("w*2"), [ONE, P("2")]) is None
    assert delta_probe(P("w"), P("w*2"), []) is None
    probes = [ONE, P("2"), P("3")]
    expected = next((n for n in probes if oracles.naive_rho1(n, P("w")) != oracles.naive_rho1(n, P("w*2"))), None)
    assert delta_probe(P("w"), P("w*2"), probes) == expected


def _universe(max_coeff):
    out = []
    for r in (1, 2):
        for es in itertools.combinations([ONE, ZERO], r):
            for cs in itertools.product(range(1, max_coeff), repeat=r):
                out.append(Ordinal(tuple(zip(es, cs))))
    return sorted(out)


def test_walks_below_omega_squared_match_oracle():
    U = _universe(6)
    for a, b in itertools.combinations(U, 2):
        upper, maxima, weights = oracles.naive_walk(a, b)
        tr = walk(a, b)
        assert list(tr.upper) == upper
        assert list(tr.step_maxima) == maxima
        assert list(tr.weights) == weights
        assert set(tr.lower_set) == oracles.naive_lower(a, b)
        assert tr.rho1 == oracles.naive_rho1(a, b)


def test_sampled_walks_match_oracle():
    for a, b in sample_pairs(P("w^(3)"), 500, make_rng(5), max_terms=3, max_coeff=5):
        assert upper_trace(a, b) == oracles.naive_walk(a, b)[0]
        assert set(lower_set(a, b)) == oracles.naive_lower(a, b)
        assert rho1(a, b) == oracles.naive_rho1(a, b)


def test_closed_forms_match_recursions():
    for a, b in sample_pairs(P("w^(w)"), 500, make_rng(6), max_terms=4, max_coeff=7):
        assert upper_trace(a, b) == upper_trace_recursive(a, b)
        assert lower_set(a, b) == lower_trace_recursive(a, b)
        assert rho1(a, b) == rho1_recursive(a, b)


seeds = st.integers(0, 2 ** 32)


@given(seeds)
@settings(max_examples=150, deadline=None)
def test_lower_trace_properties(seed):
    rng = make_rng(seed)
    b = sample_below(P("w^(4)"), rng, 4, 9, P("2"))
    a = sample_below(b, rng, 4, 9, ONE)
    tr = walk(a, b)
    assert all(y < x for x, y in zip(tr.upper, tr.upper[1:]))
    assert all(x < a for x in tr.lower)
    assert list(tr.lower) == sorted(tr.lower)
    assert rho1(a, b.successor()) == max(1, rho1(a, b))
