"""Undirected graphs with a canonical orientation and the structural
subroutines used throughout the package.

Every edge ``{u, v}`` is stored as the tuple ``(min, max)`` and is oriented
from the lower id to the higher id.  "Canonical edge order" is the sorted
order of these tuples.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded, DisconnectedGraph, ParseError, TreeEdge

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_adj", "_index", "_components", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            ce = canonical_edge(u, v)
            if ce in seen:
                raise ValueError(f"parallel edge {ce}")
            seen.add(ce)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._index = {e: i for i, e in enumerate(self.edges)}
        self._components = None
        self._hash = hash((self.n, self.edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._index

    def edge_index(self, u: int, v: int) -> int:
        return self._index[canonical_edge(u, v)]

    def without_edge(self, e: Sequence[int]) -> "Graph":
        ce = canonical_edge(*e)
        return Graph(self.n, (f for f in self.edges if f != ce))

    def with_edge(self, e: Sequence[int]) -> "Graph":
        return Graph(self.n, self.edges + (canonical_edge(*e),))

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        if self._components is None:
            self._components = self._find_components()
        return [list(c) for c in self._components]

    def _find_components(self) -> list[list[int]]:
        label = [-1] * self.n
        comps = []
        for s in range(self.n):
            if label[s] >= 0:
                continue
            label[s] = len(comps)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if label[y] < 0:
                        label[y] = label[s]
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            ((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
        )

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


class Digraph:
    """Directed graph without self-loops; opposite arcs may coexist."""

    __slots__ = ("n", "arcs", "_succ", "_pred")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        arc_set = set()
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if u == v:
                raise ValueError(f"self-loop arc at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {u}->{v} out of range")
            arc_set.add((u, v))
        self.n = n
        self.arcs = frozenset(arc_set)
        succ: list[list[int]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(arc_set):
            succ[u].append(v)
            pred[v].append(u)
        self._succ = succ
        self._pred = pred

    def successors(self, v: int) -> list[int]:
        return self._succ[v]

    def predecessors(self, v: int) -> list[int]:
        return self._pred[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


@dataclass(frozen=True)
class Cycle:
    """A closed walk ``v0, v1, ..., v_{l-1}, v0`` traversed in listed order.

    The closing vertex is not repeated in ``vertices``.  Undirected cycles
    have length at least 3; directed cycles in a :class:`Digraph` may have
    length 2.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        if len(self.vertices) < 2:
            raise ValueError("a cycle needs at least two vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"repeated vertex in cycle {self.vertices}")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def steps(self) -> list[tuple[int, int]]:
        """Consecutive traversal pairs, including the closing one."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def canonical(self) -> "Cycle":
        """Representative of the rotation/reversal class: starts at the least
        vertex, and of the two directions takes the lexicographically least."""
        vs = self.vertices
        i = vs.index(min(vs))
        fwd = vs[i:] + vs[:i]
        rev = (fwd[0],) + tuple(reversed(fwd[1:]))
        return Cycle(min(fwd, rev))

    def rotated_to_min(self) -> "Cycle":
        """Rotation starting at the least vertex, direction kept."""
        vs = self.vertices
        i = vs.index(min(vs))
        return Cycle(vs[i:] + vs[:i])

    def reversed(self) -> "Cycle":
        return Cycle(tuple(reversed(self.vertices)))

    def is_cycle_of(self, g: Graph) -> bool:
        return len(self) >= 3 and all(g.has_edge(a, b) for a, b in self.steps())

    def is_directed_cycle_of(self, d: Digraph) -> bool:
        return all(d.has_arc(a, b) for a, b in self.steps())


@dataclass(frozen=True)
class SpanningTree:
    """Rooted spanning tree; ``parent[v]`` is ``(parent vertex, edge)``."""

    root: int
    parent: dict[int, tuple[int, Edge]]
    order: tuple[int, ...]
    depth: dict[int, int] = field(repr=False)

    def is_tree_edge(self, e: Sequence[int]) -> bool:
        u, v = e
        return self.parent.get(u, (None,))[0] == v or self.parent.get(v, (None,))[0] == u

    def path_from_root(self, v: int) -> list[int]:
        path = [v]
        while v != self.root:
            v = self.parent[v][0]
            path.append(v)
        path.reverse()
        return path

    def tree_path(self, a: int, b: int) -> list[int]:
        """Vertex sequence of the unique tree path from ``a`` to ``b``."""
        up_a, up_b = [a], [b]
        x, y = a, b
        while self.depth[x] > self.depth[y]:
            x = self.parent[x][0]
            up_a.append(x)
        while self.depth[y] > self.depth[x]:
            y = self.parent[y][0]
            up_b.append(y)
        while x != y:
            x = self.parent[x][0]
            y = self.parent[y][0]
            up_a.append(x)
            up_b.append(y)
        return up_a + up_b[-2::-1]


@lru_cache(maxsize=4096)
def spanning_tree(g: Graph, root: int = 0) -> SpanningTree:
    """BFS tree from ``root`` exploring neighbours in ascending id.

    Results are cached per graph; treat them as read-only."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} not a vertex")
    parent: dict[int, tuple[int, Edge]] = {}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.neighbours(x):
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = (x, canonical_edge(x, y))
                order.append(y)
                queue.append(y)
    if len(order) != g.n:
        raise DisconnectedGraph(f"graph has {g.n} vertices but only {len(order)} reachable from {root}")
    return SpanningTree(root, parent, tuple(order), depth)


def fundamental_cycle(t: SpanningTree, e: Sequence[int]) -> Cycle:
    """The cycle of ``T + e``.

    It starts at the endpoint of ``e`` nearer the root (ties: lower id),
    follows the tree to the other endpoint, and closes along ``e``.
    """
    a, b = e
    if t.is_tree_edge((a, b)):
        raise TreeEdge(f"{canonical_edge(a, b)} is a tree edge")
    if (t.depth[b], b) < (t.depth[a], a):
        a, b = b, a
    return Cycle(tuple(t.tree_path(a, b)))


def strongly_connected_components(d: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components are sorted and listed by
    least vertex."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for s in range(d.n):
        if s in index:
            continue
        work = [(s, 0)]
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        on_stack.add(s)
        while work:
            v, i = work[-1]
            succ = d.successors(v)
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def is_nontrivial(component: Sequence[int]) -> bool:
    # no self-loops, so a single vertex never lies on a directed cycle
    return len(component) >= 2


def directed_cycle_through(d: Digraph, v: int, within: Optional[set[int]] = None) -> Optional[Cycle]:
    """A shortest directed cycle through ``v`` using only ``within`` vertices."""
    allowed = within if within is not None else None
    prev = {v: None}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in d.successors(x):
            if allowed is not None and y not in allowed:
                continue
            if y == v:
                path = [x]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                path.reverse()
                return Cycle(tuple(path))
            if y not in prev:
                prev[y] = x
                queue.append(y)
    return None


@dataclass(frozen=True)
class CycleFound:
    """Returned by :func:`topological_sort` when the digraph is cyclic."""

    cycle: Cycle


def topological_sort(d: Digraph, vertices: Optional[Iterable[int]] = None) -> list[int] | CycleFound:
    """Kahn's algorithm on the subdigraph induced by ``vertices`` (default
    all), breaking ties by smallest id.  Returns the order or a witness
    directed cycle (rotated to start at its least vertex)."""
    vs = set(range(d.n)) if vertices is None else set(vertices)
    indeg = {v: 0 for v in vs}
    for v in vs:
        for w in d.successors(v):
            if w in vs:
                indeg[w] += 1
    heap = [v for v in vs if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in d.successors(v):
            if w in vs:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
    if len(order) == len(vs):
        return order
    # every leftover vertex has a leftover predecessor; walk backwards
    left = {v for v in vs if indeg[v] > 0}
    x = min(left)
    seen: dict[int, int] = {}
    walk = []
    while x not in seen:
        seen[x] = len(walk)
        walk.append(x)
        x = next(u for u in d.predecessors(x) if u in left)
    loop = walk[seen[x]:]
    loop.reverse()
    return CycleFound(Cycle(tuple(loop)).rotated_to_min())


def enumerate_cycles(g: Graph, max_len: Optional[int] = None, limit: Optional[int] = None) -> Iterator[Cycle]:
    """Yield every simple cycle once, as its canonical representative.

    Cycles are found by backtracking from each start vertex ``s`` through
    vertices larger than ``s``; a closed path is reported only when its
    second vertex is smaller than its last, which picks one direction.
    ``limit`` caps the number reported; exceeding it raises BudgetExceeded.
    """
    count = 0
    bound = g.n if max_len is None else min(max_len, g.n)
    for s in range(g.n):
        path = [s]
        on_path = {s}
        stack = [iter(g.neighbours(s))]
        while stack:
            advanced = False
            for w in stack[-1]:
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        count += 1
                        if limit is not None and count > limit:
                            raise BudgetExceeded(f"more than {limit} cycles")
                        yield Cycle(tuple(path))
                    continue
                if w < s or w in on_path or len(path) >= bound:
                    continue
                path.append(w)
                on_path.add(w)
                stack.append(iter(g.neighbours(w)))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(path.pop())


# ---------------------------------------------------------------- file format

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.split()[0] == "c":
            continue
        yield lineno, line


def parse_graph(text: str) -> Graph:
    """Parse the DIMACS-like edge format with 0-based vertex ids."""
    n = m = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, line in _content_lines(text):
        tok = line.split()
        try:
            if tok[0] == "p":
                if n is not None or len(tok) != 4 or tok[1] != "edge":
                    raise ParseError(f"line {lineno}: bad problem line {line!r}")
                n, m = int(tok[2]), int(tok[3])
                if n < 0 or m < 0:
                    raise ParseError(f"line {lineno}: negative size")
            elif tok[0] == "e":
                if n is None:
                    raise ParseError(f"line {lineno}: edge before problem line")
                if len(tok) != 3:
                    raise ParseError(f"line {lineno}: bad edge line {line!r}")
                u, v = int(tok[1]), int(tok[2])
                if u == v:
                    raise ParseError(f"line {lineno}: self-loop {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise ParseError(f"line {lineno}: vertex out of range")
                ce = canonical_edge(u, v)
                if ce in seen:
                    raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
                seen.add(ce)
                edges.append(ce)
            else:
                raise ParseError(f"line {lineno}: unknown line {line!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing problem line")
    if len(edges) != m:
        raise ParseError(f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())
