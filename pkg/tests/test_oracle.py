import itertools

import pytest

from _support import SMALL_PARAMS, labelled_connected_graphs
from circrecolour.circular import CircularColouring, CircularParams, verify_colouring
from circrecolour.errors import BudgetExceeded, InvalidColouring
from circrecolour.graph import Graph, enumerate_cycles
from circrecolour.labelling import cycle_weight, induced_labelling
from circrecolour.oracle import (
    components_summary,
    configuration_graph,
    enumerate_colourings,
    oracle_decide,
    oracle_distance,
    oracle_path,
)
from circrecolour.recolour import check_sequence, recolour

K2 = Graph.path(2)
P52 = CircularParams(5, 2)
P21 = CircularParams(2, 1)
P72 = CircularParams(7, 2)


def col(pr, *cs):
    return CircularColouring(pr, tuple(cs))


def test_enumeration_examples():
    assert len(enumerate_colourings(K2, P52)) == 10
    assert [c.colours for c in enumerate_colourings(K2, P21)] == [(0, 1), (1, 0)]
    assert enumerate_colourings(Graph.complete(3), P21) == []


def test_enumeration_is_lexicographic_and_complete():
    for g in labelled_connected_graphs(3):
        for p, q in SMALL_PARAMS:
            pr = CircularParams(p, q)
            got = [c.colours for c in enumerate_colourings(g, pr)]
            brute = [
                cs for cs in itertools.product(range(p), repeat=g.n)
                if verify_colouring(g, CircularColouring(pr, cs)) is None
            ]
            assert got == brute


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_colourings(Graph.path(4), P52, cap=20)


def test_decide_examples():
    cols = enumerate_colourings(K2, P52)
    assert all(oracle_decide(K2, P52, a, b) for a in cols for b in cols)
    assert not oracle_decide(K2, P21, col(P21, 0, 1), col(P21, 1, 0))
    c3 = Graph.complete(3)
    assert not oracle_decide(c3, P72, col(P72, 0, 2, 4), col(P72, 0, 5, 3))


def test_decide_rejects_invalid_colourings():
    with pytest.raises(InvalidColouring):
        oracle_decide(K2, P52, col(P52, 0, 1), col(P52, 0, 2))


def test_decide_budget():
    a, b = col(P52, 0, 2, 4, 1), col(P52, 3, 0, 2, 4)
    with pytest.raises(BudgetExceeded):
        oracle_decide(Graph.path(4), P52, a, b, cap=3)


def test_summary_examples():
    assert str(components_summary(K2, P21)) == "components=2 sizes=1,1 frozen=2"
    assert str(components_summary(K2, P52)) == "components=1 sizes=10 frozen=0"
    assert components_summary(Graph.complete(3), P72).count >= 2


def test_distances_and_paths():
    assert oracle_distance(K2, P52, col(P52, 0, 2), col(P52, 0, 2)) == 0
    assert oracle_distance(K2, P52, col(P52, 0, 2), col(P52, 0, 3)) == 1
    a, b = col(P52, 0, 2), col(P52, 2, 0)
    path = oracle_path(K2, P52, a, b)
    assert len(path) == oracle_distance(K2, P52, a, b)
    assert check_sequence(K2, a, b, path) is None
    assert oracle_path(K2, P21, col(P21, 0, 1), col(P21, 1, 0)) is None


def _instances(max_n):
    for n in range(1, max_n + 1):
        for g in labelled_connected_graphs(n):
            for p, q in SMALL_PARAMS:
                yield g, CircularParams(p, q)


def test_reflexive_and_symmetric():
    for g, pr in _instances(3):
        cols = enumerate_colourings(g, pr)
        for a, b in itertools.product(cols[:12], cols[:12]):
            assert oracle_decide(g, pr, a, a)
            assert oracle_decide(g, pr, a, b) == oracle_decide(g, pr, b, a)


def test_decide_matches_component_labels():
    for g, pr in _instances(3):
        cg = configuration_graph(g, pr)
        cols = enumerate_colourings(g, pr)
        assert len(set(cg.states)) == len(cg.states) == len(cols)
        for a, b in itertools.product(cols[:10], cols[-10:]):
            assert oracle_decide(g, pr, a, b) == cg.same_component(a, b)


def test_thread_count_does_not_change_answers():
    for g, pr in _instances(4):
        cols = enumerate_colourings(g, pr)
        if len(cols) < 2:
            continue
        for a, b in ((cols[0], cols[-1]), (cols[len(cols) // 2], cols[1])):
            assert oracle_distance(g, pr, a, b, threads=4) == oracle_distance(g, pr, a, b)


def test_components_share_cycle_weights():
    for g, pr in _instances(4):
        cg = configuration_graph(g, pr)
        cycles = list(enumerate_cycles(g))
        rep: dict[int, tuple] = {}
        for s in cg.states:
            lab = induced_labelling(g, CircularColouring(pr, s))
            weights = tuple(cycle_weight(lab, c) for c in cycles)
            assert rep.setdefault(cg.component[s], weights) == weights


def test_recolour_sequences_stay_inside_state_set():
    for g, pr in _instances(4):
        cg = configuration_graph(g, pr)
        states = set(cg.states)
        cols = enumerate_colourings(g, pr)
        for a, b in itertools.product(cols[:4], cols[-4:]):
            v = recolour(g, a, b)
            if not v.reconfigurable:
                continue
            cur = list(a.colours)
            for vertex, colour in v.sequence:
                cur[vertex] = colour
                assert tuple(cur) in states
