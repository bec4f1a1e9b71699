import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumgames.core import SizeCapExceeded, SumGamesError
from sumgames.objective import satisfies
from sumgames.universal import (
    TOP,
    build_fragment,
    check_monotonicity,
    enumerate_tuples,
    format_tuple,
    fragment_size,
    is_edge,
    is_edge_weak,
    least_source,
    least_source_weak,
    lex_gt,
    order_gt,
    order_key,
    parse_tuple,
)

tuples = st.lists(st.integers(0, 4), max_size=4).map(tuple)


def lex_oracle(u, v):
    if len(v) < len(u) and u[: len(v)] == v:
        return True
    for i in range(min(len(u), len(v))):
        if u[:i] == v[:i] and u[i] > v[i]:
            return True
    return False


@pytest.mark.parametrize(
    "u, v, expected",
    [((0, 2), (0,), True), ((), (), False), ((1,), (0, 5), True), ((0,), (0, 2), False), ((0, 1), (0, 1), False)],
)
def test_lex_examples(u, v, expected):
    assert lex_gt(u, v) is expected


@given(tuples, tuples)
def test_lex_matches_definition(u, v):
    assert lex_gt(u, v) == lex_oracle(u, v)
    # the proper-prefix reading coincides with Python's tuple order
    assert lex_gt(u, v) == (u > v)


@pytest.mark.parametrize(
    "u, v, expected",
    [((0, 0), (1,), True), ((2,), (1,), True), ((0,), (0,), False), ((1,), (0, 0), False)],
)
def test_order_examples(u, v, expected):
    assert order_gt(u, v) is expected


def test_order_is_strict_total_on_small_tuples():
    ts = enumerate_tuples(3, 4)
    for u in ts:
        assert not order_gt(u, u)
    for u, v in itertools.combinations(ts, 2):
        assert order_gt(u, v) != order_gt(v, u)
    for u, v, w in itertools.product(ts[:30], repeat=3):
        if order_gt(u, v) and order_gt(v, w):
            assert order_gt(u, w)


def test_enumeration_is_ascending():
    ts = enumerate_tuples(3, 3)
    assert all(order_gt(b, a) for a, b in zip(ts, ts[1:]))
    assert sorted(ts, key=order_key) == ts


@pytest.mark.parametrize(
    "u, w, v, expected",
    [((0, 2), -1, (0,), True), ((), 0, (), False), ((), 2, (0, 2), False), ((), 1, (), True), ((0, 1), 0, (0, 0), True)],
)
def test_edge_examples(u, w, v, expected):
    assert is_edge(u, w, v) is expected


@given(tuples, st.integers(-4, 4), tuples)
def test_edge_definition(u, w, v):
    expected = len(u) + w >= len(v) and (len(u) + w != len(v) or lex_oracle(u, v))
    assert is_edge(u, w, v) == expected
    if expected:
        assert is_edge_weak(u, w, v)


@pytest.mark.parametrize("weak", [False, True])
@pytest.mark.parametrize("max_len, max_coord", [(0, 0), (0, 2), (1, 1), (2, 2), (3, 2), (2, 3), (3, 0)])
def test_least_source_is_least(max_len, max_coord, weak):
    edge = is_edge_weak if weak else is_edge
    least = least_source_weak if weak else least_source
    domain = enumerate_tuples(max_len, max_coord)
    for target in domain:
        for w in range(-3, 4):
            sources = [u for u in domain if edge(u, w, target)]
            got = least(w, target, max_len, max_coord)
            assert got == (sources[0] if sources else TOP), (target, w)
            if sources:
                # upward closed, so the least element is a threshold
                i = domain.index(sources[0])
                assert all(edge(u, w, target) for u in domain[i:])


def test_least_source_of_top():
    assert least_source(3, TOP, 5, 5) is TOP


@pytest.mark.parametrize("text, u", [("()", ()), ("(0)", (0,)), ("(0,2)", (0, 2)), (" ( 1 , 2 ) ", (1, 2))])
def test_tuple_syntax(text, u):
    assert parse_tuple(text) == u
    assert parse_tuple(format_tuple(u)) == u


@pytest.mark.parametrize("text", ["", "(", "(-1)", "(a)", "0,1", "(1,,2)"])
def test_tuple_syntax_errors(text):
    with pytest.raises(SumGamesError):
        parse_tuple(text)


def test_fragment_small_example():
    frag = build_fragment(1, 1, [-1, 0, 1])
    assert frag.vertices == ((), (0,))
    assert frag.edges == {((), 1, ()), ((0,), -1, ()), ((0,), 0, ()), ((0,), 1, ()), ((0,), 1, (0,))}


@pytest.mark.parametrize("weights, edges", [([1], {((), 1, ())}), ([0], set())])
def test_fragment_trivial(weights, edges):
    frag = build_fragment(0, 0, weights)
    assert frag.vertices == ((),)
    assert frag.edges == edges


@pytest.mark.parametrize("max_len, max_coord", [(0, 3), (2, 2), (3, 3)])
def test_fragment_vertex_count(max_len, max_coord):
    frag = build_fragment(max_len, max_coord, [0])
    assert len(frag.vertices) == fragment_size(max_len, max_coord)
    assert all(is_edge(u, w, v) for u, w, v in frag.edges)


def test_fragment_cap(monkeypatch):
    with pytest.raises(SizeCapExceeded):
        build_fragment(4, 4, [0], cap=100)
    monkeypatch.setenv("SUMGAMES_SIZE_CAP", "10")
    with pytest.raises(SizeCapExceeded):
        build_fragment(2, 3, [0])


def test_monotone_small():
    assert check_monotonicity(build_fragment(1, 1, [-1, 0, 1])) is None


def test_monotone_instance():
    assert is_edge((0, 2), -1, ())


def test_monotone_negative_control():
    frag = build_fragment(2, 2, [-1, 0, 1])
    victim = ((1, 1), 0, (0,))
    assert victim in frag.edges
    bad = check_monotonicity(frag.without_edge(victim))
    assert bad is not None
    assert (bad.u, bad.weight, bad.u2) == victim


@pytest.mark.parametrize("max_len, max_coord", [(1, 2), (2, 2), (2, 3)])
def test_fragment_cycles_positive(max_len, max_coord):
    assert satisfies(build_fragment(max_len, max_coord, range(-2, 3)).graph)


def test_nonstrict_prefix_would_admit_zero_cycle():
    # reading "prefix" as non-strict makes () -0-> () an edge
    assert not is_edge((), 0, ())
    assert is_edge_weak((), 0, ())
