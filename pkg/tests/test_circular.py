import pytest
from hypothesis import given
from hypothesis import strategies as st

from circrecolour.circular import (
    CircularColouring,
    CircularParams,
    CyclicInterval,
    circular_clique,
    common_neighbours,
    compatible,
    format_colouring,
    interval_members,
    is_colouring,
    parse_colouring,
    verify_colouring,
)
from circrecolour.errors import ColourOutOfRange, DomainMismatch, ParseError
from circrecolour.graph import Graph

P52 = CircularParams(5, 2)


def test_params_validation():
    with pytest.raises(ValueError):
        CircularParams(3, 2)
    with pytest.raises(ValueError):
        CircularParams(4, 0)
    pr = CircularParams(18, 4)
    assert (pr.k, pr.r, pr.below_four) == (4, 2, False)
    assert CircularParams(7, 2).below_four


def test_compatibility_examples():
    assert compatible(P52, 0, 2)
    assert not compatible(P52, 0, 1)
    assert compatible(CircularParams(4, 1), 0, 2)


def test_circular_cliques():
    assert circular_clique(CircularParams(4, 1)) == Graph.complete(4)
    assert circular_clique(P52) == Graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    assert circular_clique(CircularParams(4, 2)).edges == ((0, 2), (1, 3))


def test_verify_examples():
    assert verify_colouring(Graph.path(3), CircularColouring(P52, (0, 2, 4))) is None
    assert verify_colouring(Graph.path(2), CircularColouring(P52, (0, 1))) == (0, 1)
    assert verify_colouring(Graph.cycle(5), CircularColouring(P52, (0, 2, 4, 1, 3))) is None


def test_verify_domain_errors():
    with pytest.raises(DomainMismatch):
        verify_colouring(Graph.path(3), CircularColouring(P52, (0, 2)))
    with pytest.raises(ColourOutOfRange):
        verify_colouring(Graph.path(2), CircularColouring(P52, (0, 5)))
    assert not is_colouring(Graph.path(2), CircularColouring(P52, (0, 5)))


def test_interval_members():
    assert interval_members(CyclicInterval(17, 7, 18)) == [17, 0, 1, 2, 3, 4, 5, 6, 7]
    assert interval_members(CyclicInterval(0, 0, 5)) == [0]
    assert interval_members(CyclicInterval(3, 2, 4)) == [3, 0, 1, 2]
    assert 1 in CyclicInterval(17, 7, 18) and 9 not in CyclicInterval(17, 7, 18)


def test_common_neighbour_examples():
    assert common_neighbours(P52, 0, 4).colours == {2}
    cn = common_neighbours(P52, 1, 1)
    assert cn.colours == {3, 4} and (cn.interval.a, cn.interval.b) == (3, 4)
    cn = common_neighbours(CircularParams(18, 4), 11, 13)
    assert (cn.interval.a, cn.interval.b) == (17, 7)


def test_colouring_text_round_trip():
    c = CircularColouring(CircularParams(7, 2), (0, 2, 4))
    assert parse_colouring(format_colouring(c)) == c
    assert parse_colouring("c note\ncolouring 5 2 3\n0 2\n4\n").colours == (0, 2, 4)


@pytest.mark.parametrize(
    "text",
    ["colouring 5 2 3\n0 2\n", "0 2 4\n", "colouring 5 2 1\nx\n", "colouring 3 2 1\n0\n", "colouring 5 2\n0\n"],
)
def test_colouring_parse_errors(text):
    with pytest.raises(ParseError):
        parse_colouring(text)


# ---------------------------------------------------------------- properties

def all_params(limit=20):
    return [CircularParams(p, q) for p in range(2, limit + 1) for q in range(1, p // 2 + 1)]


def test_compatibility_is_symmetric_and_rotation_invariant():
    for pr in all_params():
        clique = circular_clique(pr)
        edges = set(clique.edges)
        rotated = {tuple(sorted(((u + 1) % pr.p, (v + 1) % pr.p))) for u, v in edges}
        assert rotated == edges
        for i in range(pr.p):
            for j in range(pr.p):
                assert compatible(pr, i, j) == compatible(pr, j, i)


def test_common_neighbourhoods_are_intervals_below_four():
    for pr in all_params():
        if not pr.below_four:
            continue
        for i in range(pr.p):
            for j in range(pr.p):
                cn = common_neighbours(pr, i, j)
                assert not cn.colours or cn.is_interval, (pr, i, j)


@given(
    st.sampled_from(all_params(12)),
    st.integers(1, 6).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10),
        st.lists(st.integers(0, 100), min_size=n, max_size=n),
    )),
)
def test_verify_matches_homomorphism_check(pr, data):
    n, raw_edges, raw_colours = data
    g = Graph(n, {tuple(sorted(e)) for e in raw_edges if e[0] != e[1]})
    c = CircularColouring(pr, tuple(x % pr.p for x in raw_colours))
    clique = circular_clique(pr)
    hom = all(clique.has_edge(c[u], c[v]) for u, v in g.edges if c[u] != c[v]) and all(
        c[u] != c[v] for u, v in g.edges
    )
    assert (verify_colouring(g, c) is None) == hom
