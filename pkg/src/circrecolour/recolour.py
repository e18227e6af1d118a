"""Deciding reconfigurability of (p, q)-colourings for 2 <= p/q < 4.

The procedure either produces a sequence of single-vertex recolourings
from ``f`` to the target, or one of three independently checkable
obstructions:

* a fixed vertex (on a directed cycle of the tight digraph of ``f``)
  whose colour differs in the target;
* a cycle whose weight differs under the two induced labellings;
* a path between two fixed vertices whose weight differs.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Union

from .circular import CircularColouring, compatible, verify_colouring
from .errors import (
    DirectedCycleInX,
    DisconnectedGraph,
    InvalidColouring,
    NotAPath,
    ParamOutOfRange,
)
from .graph import (
    Cycle,
    CycleFound,
    Digraph,
    Graph,
    directed_cycle_through,
    fundamental_cycle,
    is_nontrivial,
    spanning_tree,
    strongly_connected_components,
    topological_sort,
)
from .labelling import EdgeLabelling, cycle_weight, induced_labelling, path_weight


class RecolourStep(NamedTuple):
    vertex: int
    colour: int


def tight_digraph(g: Graph, lab: EdgeLabelling) -> Digraph:
    """Arcs along edges labelled exactly ``q``, pointing toward the vertex
    whose colour is ``q`` higher.  When ``p == 2q`` every edge gives a
    2-cycle."""
    q, p = lab.params.q, lab.params.p
    arcs = []
    for (u, v), x in lab.items():
        if x == q:
            arcs.append((u, v))
        if x == p - q:
            arcs.append((v, u))
    return Digraph(g.n, arcs)


def _require_polynomial_regime(params):
    if not params.below_four:
        raise ParamOutOfRange(f"p/q = {params.p}/{params.q} is not below 4")


def scc_fixed_vertices(g: Graph, c: CircularColouring) -> dict[int, Cycle]:
    """Vertices in nontrivial strongly connected components of the tight
    digraph, each mapped to a directed cycle through it."""
    _require_polynomial_regime(c.params)
    d = tight_digraph(g, induced_labelling(g, c))
    fixed = {}
    for comp in strongly_connected_components(d):
        if is_nontrivial(comp):
            members = set(comp)
            for v in comp:
                fixed[v] = directed_cycle_through(d, v, members)
    return fixed


def realize_cut_recolour(g: Graph, c: CircularColouring, X, alpha: int, direction: int = 1) -> list[RecolourStep]:
    """Shift every colour in ``X`` by ``direction * alpha`` one vertex at a
    time.

    Each unit round recolours ``X`` in reverse topological order of the
    tight digraph restricted to ``X`` (forward order when moving down).
    """
    _require_polynomial_regime(c.params)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    d = tight_digraph(g, induced_labelling(g, c))
    order = topological_sort(d, X)
    if isinstance(order, CycleFound):
        raise DirectedCycleInX(order.cycle)
    if direction == 1:
        order = order[::-1]
    p = c.params.p
    cur = list(c.colours)
    steps = []
    for _ in range(alpha):
        for v in order:
            cur[v] = (cur[v] + direction) % p
            steps.append(RecolourStep(v, cur[v]))
    return steps


# ------------------------------------------------------------- certificates

@dataclass(frozen=True)
class FixedVertexMismatch:
    vertex: int
    cycle: Cycle
    f_colour: int
    g_colour: int

    kind = "fixed-vertex"

    def witness(self) -> dict:
        return {
            "vertex": self.vertex,
            "cycle": list(self.cycle.vertices),
            "f_colour": self.f_colour,
            "g_colour": self.g_colour,
        }

    def validate(self, g: Graph, f: CircularColouring, target: CircularColouring) -> bool:
        d = tight_digraph(g, induced_labelling(g, f))
        return (
            self.vertex in self.cycle.vertices
            and self.cycle.is_directed_cycle_of(d)
            and f[self.vertex] == self.f_colour
            and target[self.vertex] == self.g_colour
            and self.f_colour != self.g_colour
        )


@dataclass(frozen=True)
class CycleWeightMismatch:
    cycle: Cycle
    f_weight: int
    g_weight: int

    kind = "cycle-weight"

    def witness(self) -> dict:
        return {"cycle": list(self.cycle.vertices), "f_weight": self.f_weight, "g_weight": self.g_weight}

    def validate(self, g: Graph, f: CircularColouring, target: CircularColouring) -> bool:
        if not self.cycle.is_cycle_of(g):
            return False
        wf = cycle_weight(induced_labelling(g, f), self.cycle)
        wg = cycle_weight(induced_labelling(g, target), self.cycle)
        return wf == self.f_weight and wg == self.g_weight and wf != wg


@dataclass(frozen=True)
class FixedPathMismatch:
    path: tuple[int, ...]
    f_weight: int
    g_weight: int
    start_cycle: Cycle
    end_cycle: Cycle

    kind = "fixed-path"

    def witness(self) -> dict:
        return {
            "path": list(self.path),
            "f_weight": self.f_weight,
            "g_weight": self.g_weight,
            "start_cycle": list(self.start_cycle.vertices),
            "end_cycle": list(self.end_cycle.vertices),
        }

    def validate(self, g: Graph, f: CircularColouring, target: CircularColouring) -> bool:
        d = tight_digraph(g, induced_labelling(g, f))
        if not (self.start_cycle.is_directed_cycle_of(d) and self.end_cycle.is_directed_cycle_of(d)):
            return False
        if self.path[0] not in self.start_cycle.vertices or self.path[-1] not in self.end_cycle.vertices:
            return False
        try:
            wf = path_weight(induced_labelling(g, f), self.path)
            wg = path_weight(induced_labelling(g, target), self.path)
        except NotAPath:
            return False
        return wf == self.f_weight and wg == self.g_weight and wf != wg


Obstruction = Union[FixedVertexMismatch, CycleWeightMismatch, FixedPathMismatch]


def obstruction_from_dict(doc: dict) -> Obstruction:
    w = doc["witness"]
    kind = doc["kind"]
    if kind == FixedVertexMismatch.kind:
        return FixedVertexMismatch(w["vertex"], Cycle(tuple(w["cycle"])), w["f_colour"], w["g_colour"])
    if kind == CycleWeightMismatch.kind:
        return CycleWeightMismatch(Cycle(tuple(w["cycle"])), w["f_weight"], w["g_weight"])
    if kind == FixedPathMismatch.kind:
        return FixedPathMismatch(
            tuple(w["path"]), w["f_weight"], w["g_weight"],
            Cycle(tuple(w["start_cycle"])), Cycle(tuple(w["end_cycle"])),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`recolour`: a sequence (YES) or a certificate (NO)."""

    sequence: Optional[tuple[RecolourStep, ...]] = None
    certificate: Optional[Obstruction] = None

    @property
    def reconfigurable(self) -> bool:
        return self.certificate is None

    def to_dict(self) -> dict:
        if self.reconfigurable:
            return {"result": "yes", "sequence": [[s.vertex, s.colour] for s in self.sequence]}
        return {"result": "no", "certificate": {"kind": self.certificate.kind, "witness": self.certificate.witness()}}


# ------------------------------------------------------------- main algorithm

class _Frame:
    """Per-graph data reused across calls: BFS tree rooted at 0 and, in BFS
    order, each non-root vertex with its parent, parent edge index and
    traversal sign."""

    __slots__ = ("n", "edges", "tree", "tree_steps", "connected", "_cycles")

    def __init__(self, g: Graph):
        self.n = g.n
        self.edges = g.edges
        self.connected = g.is_connected()
        self.tree = spanning_tree(g, 0) if self.connected and g.n else None
        self._cycles = {}
        self.tree_steps = []
        if self.tree:
            for v in self.tree.order[1:]:
                u, e = self.tree.parent[v]
                self.tree_steps.append((v, u, g.edge_index(*e), 1 if u < v else -1))


    def fundamental(self, g: Graph, edge):
        """Canonical fundamental cycle of ``edge`` and its steps as
        ``(edge index, traversed forward)`` pairs."""
        if edge not in self._cycles:
            cyc = fundamental_cycle(self.tree, edge).canonical()
            walk = tuple((g.edge_index(a, b), a < b) for a, b in cyc.steps())
            self._cycles[edge] = (cyc, walk)
        return self._cycles[edge]


@lru_cache(maxsize=1024)
def _frame(g: Graph) -> _Frame:
    return _Frame(g)


def _tight_succ(n, edges, labels, q, p):
    succ = [[] for _ in range(n)]
    for (u, v), x in zip(edges, labels):
        if x == q:
            succ[u].append(v)
        if x == p - q:
            succ[v].append(u)
    return succ


def _kahn(succ, members):
    """Topological order of the vertices flagged in ``members`` (smallest
    id first among ready vertices), or None on a directed cycle."""
    indeg = [0] * len(succ)
    count = 0
    for v, inside in enumerate(members):
        if inside:
            count += 1
            for w in succ[v]:
                if members[w]:
                    indeg[w] += 1
    heap = [v for v, inside in enumerate(members) if inside and not indeg[v]]
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            if members[w]:
                indeg[w] -= 1
                if not indeg[w]:
                    heapq.heappush(heap, w)
    return order if len(order) == count else None


def _as_digraph(succ) -> Digraph:
    return Digraph(len(succ), [(u, v) for u, s in enumerate(succ) for v in s])


class _Start(NamedTuple):
    valid: bool
    labels: tuple
    fixed: tuple  # (vertex, component) pairs in ascending component order


@lru_cache(maxsize=1 << 16)
def _start(fr: _Frame, p: int, q: int, colours: tuple) -> _Start:
    if len(colours) != fr.n or any(not 0 <= c < p for c in colours):
        return _Start(False, (), ())
    if not all(q <= abs(colours[u] - colours[v]) <= p - q for u, v in fr.edges):
        return _Start(False, (), ())
    labels = tuple((colours[v] - colours[u]) % p for u, v in fr.edges)
    fixed = []
    succ = _tight_succ(fr.n, fr.edges, labels, q, p)
    if any(succ):
        for comp in strongly_connected_components(_as_digraph(succ)):
            if len(comp) >= 2:
                fixed.extend((v, tuple(comp)) for v in comp)
    return _Start(True, labels, tuple(fixed))


def recolour(g: Graph, f: CircularColouring, target: CircularColouring) -> Verdict:
    """Decide whether ``f`` reconfigures to ``target`` on connected ``g``.

    Step 1 compares colours on the directed cycles of the tight digraph of
    ``f``.  Step 2 repeatedly splits the vertices by the sign of the
    tree-path weight difference between the current labelling and the
    target's, and shifts one side by the smallest label gap on the cut,
    one vertex at a time.  Step 3 rotates all colours when the labellings
    already agree.
    """
    params = f.params
    _require_polynomial_regime(params)
    if target.params != params:
        raise ValueError("colourings use different parameters")
    fr = _frame(g)
    if not fr.connected:
        raise DisconnectedGraph("recolour needs a connected graph")
    n, edges, p, q = fr.n, fr.edges, params.p, params.q
    fc, gc = f.colours, target.colours
    sf, sg = _start(fr, p, q, fc), _start(fr, p, q, gc)
    for c, s in ((f, sf), (target, sg)):
        if not s.valid:
            raise InvalidColouring(f"{c.colours} is not a {params}-colouring of {g}")
    lab_g = sg.labels

    # Step 1: vertices on directed cycles of the tight digraph never move.
    for v, comp in sf.fixed:
        if fc[v] != gc[v]:
            d_f = _as_digraph(_tight_succ(n, edges, sf.labels, q, p))
            return Verdict(certificate=FixedVertexMismatch(
                v, directed_cycle_through(d_f, v, set(comp)), fc[v], gc[v]))

    # Step 2: walk the labelling toward the target's, one cut at a time.
    cur = list(fc)
    lab = list(sf.labels)
    gap = [x - y for x, y in zip(lab, lab_g)]
    steps: list[RecolourStep] = []
    tree_steps = fr.tree_steps
    m = len(edges)
    while True:
        diff = [0] * n
        for v, par, e, sign in tree_steps:
            diff[v] = diff[par] + sign * gap[e]
        if max(diff) > 0:
            inside = [d <= 0 for d in diff]
        elif min(diff) < 0:
            inside = [d < 0 for d in diff]
        else:
            bad = next((i for i in range(m) if gap[i]), None)
            if bad is None:
                break
            return _cycle_verdict(g, fr, edges[bad], f, target)
        alpha = p
        cut = []
        for i, (u, v) in enumerate(edges):
            if inside[u] == inside[v]:
                continue
            x = gap[i]
            # shifting the inside up lowers labels leaving it and raises labels entering it
            if inside[u]:
                if x <= 0:
                    return _cycle_verdict(g, fr, (u, v), f, target)
                cut.append((i, -1))
            else:
                if x >= 0:
                    return _cycle_verdict(g, fr, (u, v), f, target)
                x = -x
                cut.append((i, 1))
            if x < alpha:
                alpha = x
        succ = _tight_succ(n, edges, lab, q, p)
        order = _kahn(succ, inside)
        if order is not None:
            moved, direction = order[::-1], 1
        else:
            outside = [not x for x in inside]
            moved, direction = _kahn(succ, outside), -1
            if moved is None:
                d_cur = _as_digraph(succ)
                return _path_verdict(
                    g, fr,
                    topological_sort(d_cur, [v for v in range(n) if inside[v]]).cycle,
                    topological_sort(d_cur, [v for v in range(n) if outside[v]]).cycle,
                    f, target,
                )
        _shift(steps, cur, moved, direction, alpha, p)
        for i, sign in cut:
            lab[i] += sign * alpha
            gap[i] += sign * alpha

    # Step 3: labellings agree, so cur is a global rotation of the target.
    delta = (gc[0] - cur[0]) % p if n else 0
    if delta:
        order = _kahn(_tight_succ(n, edges, lab, q, p), [True] * n)
        assert order is not None, "rotation needed but fixed vertices exist"
        if 2 * delta <= p:
            _shift(steps, cur, order[::-1], 1, delta, p)
        else:
            _shift(steps, cur, order, -1, p - delta, p)
    assert tuple(cur) == gc
    return Verdict(sequence=tuple(steps))


def _shift(steps, cur, moved, direction, rounds, p):
    """Append ``rounds`` unit rounds moving each vertex of ``moved`` in turn."""
    make = tuple.__new__
    for j in range(1, rounds + 1):
        steps.extend([make(RecolourStep, (v, (cur[v] + j * direction) % p)) for v in moved])
    for v in moved:
        cur[v] = (cur[v] + rounds * direction) % p


def _labelling(g: Graph, c: CircularColouring) -> EdgeLabelling:
    # colourings here were validated on entry
    return EdgeLabelling(g, c.params, _start(_frame(g), c.params.p, c.params.q, c.colours).labels)


def _walk_weight(fr, c: CircularColouring, walk) -> int:
    p = c.params.p
    labels = _start(fr, p, c.params.q, c.colours).labels
    return sum(labels[i] if fwd else p - labels[i] for i, fwd in walk)


def _cycle_verdict(g, fr, edge, f, target) -> Verdict:
    # cut shifts and single moves never change cycle weights, so weights are
    # taken from the original colourings
    cyc, walk = fr.fundamental(g, edge)
    wf, wg = (_walk_weight(fr, c, walk) for c in (f, target))
    assert wf != wg
    return Verdict(certificate=CycleWeightMismatch(cyc, wf, wg))


def _path_verdict(g, fr, start_cycle, end_cycle, f, target) -> Verdict:
    # both cycles consist of fixed vertices, which keep their colours (and
    # hence their tight arcs) along any sequence, so they are cycles of the
    # tight digraph of f as well
    path = tuple(fr.tree.tree_path(start_cycle.vertices[0], end_cycle.vertices[0]))
    wf = path_weight(_labelling(g, f), path)
    wg = path_weight(_labelling(g, target), path)
    assert wf != wg
    return Verdict(certificate=FixedPathMismatch(path, wf, wg, start_cycle, end_cycle))


# ------------------------------------------------------------- validation

class BadStep(NamedTuple):
    index: int
    reason: str


def check_sequence(g: Graph, f: CircularColouring, target: CircularColouring, steps) -> Optional[BadStep]:
    """None if ``steps`` is a reconfiguration sequence from ``f`` to
    ``target``; otherwise the first offending step.

    A failure to reach the target is reported at the last index.
    """
    params = f.params
    if verify_colouring(g, f) is not None:
        return BadStep(-1, "start is not a valid colouring")
    cur = list(f.colours)
    adj = [g.neighbours(v) for v in range(g.n)]
    lo, hi = params.q, params.p - params.q
    for i, step in enumerate(steps):
        try:
            v, col = step
            v, col = int(v), int(col)
        except (TypeError, ValueError):
            return BadStep(i, f"malformed step {step!r}")
        if not 0 <= v < g.n:
            return BadStep(i, f"vertex {v} out of range")
        if not 0 <= col < params.p:
            return BadStep(i, f"colour {col} out of range")
        if cur[v] == col:
            return BadStep(i, f"vertex {v} already has colour {col}")
        for w in adj[v]:
            if not lo <= abs(col - cur[w]) <= hi:
                return BadStep(i, f"vertex {v} coloured {col} conflicts with {w} coloured {cur[w]}")
        cur[v] = col
    if tuple(cur) != tuple(target.colours):
        return BadStep(len(steps) - 1, "final colouring differs from target")
    return None
