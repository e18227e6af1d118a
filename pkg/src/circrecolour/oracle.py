"""Brute-force configuration-graph search used as ground truth."""
from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .circular import CircularColouring, CircularParams, compatible, verify_colouring
from .errors import BudgetExceeded, InvalidColouring
from .graph import Graph

DEFAULT_BUDGET = 2_000_000


def _allowed_table(params: CircularParams) -> list[frozenset]:
    return [frozenset(j for j in range(params.p) if compatible(params, i, j)) for i in range(params.p)]


def enumerate_colourings(g: Graph, params: CircularParams, cap: int = DEFAULT_BUDGET) -> list[CircularColouring]:
    """All (p, q)-colourings of ``g`` in lexicographic order."""
    return [CircularColouring(params, cs) for cs in _colour_vectors(g, params, cap)]


def _colour_vectors(g: Graph, params: CircularParams, cap: int) -> list[tuple[int, ...]]:
    allowed = _allowed_table(params)
    earlier = [[w for w in g.neighbours(v) if w < v] for v in range(g.n)]
    out: list[tuple[int, ...]] = []
    cur = [0] * g.n

    def extend(v):
        if v == g.n:
            if len(out) >= cap:
                raise BudgetExceeded(f"more than {cap} colourings")
            out.append(tuple(cur))
            return
        for c in range(params.p):
            if all(c in allowed[cur[w]] for w in earlier[v]):
                cur[v] = c
                extend(v + 1)

    if g.n == 0:
        return [()]
    extend(0)
    return out


def _moves(g: Graph, params: CircularParams, allowed, state: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for v in range(g.n):
        nbrs = g.neighbours(v)
        for c in range(params.p):
            if c != state[v] and all(c in allowed[state[w]] for w in nbrs):
                out.append(state[:v] + (c,) + state[v + 1:])
    return out


def oracle_distance(
    g: Graph,
    params: CircularParams,
    f: CircularColouring,
    target: CircularColouring,
    cap: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> Optional[int]:
    """BFS distance from ``f`` to ``target`` in the configuration graph, or
    None when unreachable.  The frontier is expanded level by level; with
    ``threads > 1`` each level is split across workers and merged in a
    fixed order, so the answer does not depend on the thread count."""
    for c in (f, target):
        if verify_colouring(g, c) is not None:
            raise InvalidColouring(f"{c.colours} is not a {params}-colouring")
    start, goal = tuple(f.colours), tuple(target.colours)
    if start == goal:
        return 0
    allowed = _allowed_table(params)
    seen = {start}
    frontier = [start]
    dist = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while frontier:
            dist += 1
            if pool is None:
                expanded = [_moves(g, params, allowed, s) for s in frontier]
            else:
                expanded = list(pool.map(lambda s: _moves(g, params, allowed, s), frontier))
            nxt = []
            for succ in expanded:
                for s in succ:
                    if s in seen:
                        continue
                    if s == goal:
                        return dist
                    seen.add(s)
                    if len(seen) > cap:
                        raise BudgetExceeded(f"more than {cap} states explored")
                    nxt.append(s)
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return None


def oracle_decide(g, params, f, target, cap: int = DEFAULT_BUDGET, threads: int = 1) -> bool:
    return oracle_distance(g, params, f, target, cap, threads) is not None


def oracle_path(
    g: Graph, params: CircularParams, f: CircularColouring, target: CircularColouring, cap: int = DEFAULT_BUDGET
) -> Optional[list[tuple[int, int]]]:
    """A shortest sequence of ``(vertex, colour)`` steps, or None."""
    start, goal = tuple(f.colours), tuple(target.colours)
    allowed = _allowed_table(params)
    prev: dict[tuple, Optional[tuple]] = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == goal:
            path = []
            while prev[s] is not None:
                before = prev[s]
                v = next(i for i in range(g.n) if s[i] != before[i])
                path.append((v, s[v]))
                s = before
            return path[::-1]
        for t in _moves(g, params, allowed, s):
            if t not in prev:
                prev[t] = s
                if len(prev) > cap:
                    raise BudgetExceeded(f"more than {cap} states explored")
                queue.append(t)
    return None


@dataclass(frozen=True)
class ConfigurationGraph:
    """All colourings with a component label for each."""

    states: tuple[tuple[int, ...], ...]
    component: dict  # state -> component id, ids in order of first state

    def same_component(self, a, b) -> bool:
        return self.component[tuple(a)] == self.component[tuple(b)]

    def sizes(self) -> list[int]:
        counts: dict[int, int] = {}
        for cid in self.component.values():
            counts[cid] = counts.get(cid, 0) + 1
        return [counts[i] for i in range(len(counts))]


def configuration_graph(g: Graph, params: CircularParams, cap: int = DEFAULT_BUDGET) -> ConfigurationGraph:
    states = _colour_vectors(g, params, cap)
    allowed = _allowed_table(params)
    comp: dict[tuple, int] = {}
    ncomp = 0
    for s in states:
        if s in comp:
            continue
        comp[s] = ncomp
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in _moves(g, params, allowed, x):
                if y not in comp:
                    comp[y] = ncomp
                    queue.append(y)
        ncomp += 1
    return ConfigurationGraph(tuple(states), comp)


@dataclass(frozen=True)
class ComponentsSummary:
    count: int
    sizes: tuple[int, ...]
    frozen: int

    def __str__(self):
        return f"components={self.count} sizes={','.join(map(str, self.sizes))} frozen={self.frozen}"


def components_summary(g: Graph, params: CircularParams, cap: int = DEFAULT_BUDGET) -> ComponentsSummary:
    cg = configuration_graph(g, params, cap)
    allowed = _allowed_table(params)
    frozen = sum(1 for s in cg.states if not _moves(g, params, allowed, s))
    return ComponentsSummary(len(cg.sizes()), tuple(cg.sizes()), frozen)
