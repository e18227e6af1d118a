"""Edge labellings induced by circular colourings, cycle/path weights and
edge-cut relabelling."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .circular import CircularColouring, CircularParams, verify_colouring
from .errors import InvalidColouring, NotAPath, NotApplicable, P2Violation
from .graph import Cycle, Edge, Graph, SpanningTree, fundamental_cycle, spanning_tree


@dataclass(frozen=True)
class EdgeLabelling:
    """Labels on the canonically oriented edges of ``graph``.

    ``values[i]`` is the label of ``graph.edges[i]``.
    """

    graph: Graph
    params: CircularParams
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if len(self.values) != self.graph.m:
            raise ValueError("one label per edge required")

    def __getitem__(self, e: Sequence[int]) -> int:
        return self.values[self.graph.edge_index(*e)]

    def items(self):
        return zip(self.graph.edges, self.values)

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.items())

    def step_weight(self, a: int, b: int) -> int:
        """Contribution of traversing edge ``ab`` from ``a`` to ``b``."""
        x = self.values[self.graph.edge_index(a, b)]
        return x if a < b else self.params.p - x

    def satisfies_p1(self) -> bool:
        q, p = self.params.q, self.params.p
        return all(q <= x <= p - q for x in self.values)

    def p2_violation(self) -> Optional[Cycle]:
        """A fundamental cycle of weight not divisible by p, if any."""
        p = self.params.p
        comps = [list(range(self.graph.n))] if self.graph.is_connected() else self.graph.components()
        for comp in comps:
            if len(comp) < 3:
                continue
            if len(comp) == self.graph.n:
                sub, lab = self.graph, self
            else:
                sub = self.graph.induced_subgraph(comp)
                lab = EdgeLabelling(sub, self.params, tuple(self[(comp[u], comp[v])] for u, v in sub.edges))
            t = spanning_tree(sub, 0)
            for e in sub.edges:
                if t.is_tree_edge(e):
                    continue
                cyc = fundamental_cycle(t, e)
                if cycle_weight(lab, cyc) % p:
                    return Cycle(tuple(comp[v] for v in cyc.vertices))
        return None

    def is_valid(self) -> bool:
        return self.satisfies_p1() and self.p2_violation() is None


@dataclass(frozen=True)
class CutRelabelStep:
    """Relabel on the cut of ``X`` by ``alpha``: equivalently shift every
    colour in ``X`` up by ``alpha``."""

    X: frozenset
    alpha: int


def induced_labelling(g: Graph, c: CircularColouring) -> EdgeLabelling:
    if verify_colouring(g, c) is not None:
        raise InvalidColouring(f"not a {c.params}-colouring")
    p = c.params.p
    lab = EdgeLabelling(g, c.params, tuple((c[v] - c[u]) % p for u, v in g.edges))
    assert lab.satisfies_p1()
    return lab


def path_weight(lab: EdgeLabelling, path: Sequence[int]) -> int:
    g = lab.graph
    total = 0
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise NotAPath(f"{a}-{b} is not an edge")
        total += lab.step_weight(a, b)
    return total


def cycle_weight(lab: EdgeLabelling, cyc: Cycle) -> int:
    """Integer (unreduced) weight of ``cyc`` in its listed direction."""
    return sum(lab.step_weight(a, b) for a, b in cyc.steps())


def cut_edges(g: Graph, X: Iterable[int]) -> tuple[list[Edge], list[Edge]]:
    """``(out, in)``: edges oriented from X to its complement and back."""
    xs = set(X)
    out, inn = [], []
    for u, v in g.edges:
        if (u in xs) != (v in xs):
            (out if u in xs else inn).append((u, v))
    return out, inn


def relabel_cut(lab: EdgeLabelling, step: CutRelabelStep) -> EdgeLabelling:
    g, params = lab.graph, lab.params
    X = set(step.X)
    if not X or len(X) >= g.n or not X <= set(range(g.n)):
        raise ValueError("X must be a nonempty proper vertex subset")
    alpha = step.alpha
    if not 1 <= alpha <= params.p - 1:
        raise ValueError(f"alpha must lie in 1..{params.p - 1}")
    q, p = params.q, params.p
    values = list(lab.values)
    for i, (u, v) in enumerate(g.edges):
        if (u in X) == (v in X):
            continue
        if u in X:
            if values[i] < q + alpha:
                raise NotApplicable((u, v))
            values[i] -= alpha
        else:
            if values[i] > p - q - alpha:
                raise NotApplicable((u, v))
            values[i] += alpha
    return EdgeLabelling(g, params, tuple(values))


def tree_weights(lab: EdgeLabelling, t: SpanningTree) -> dict[int, int]:
    """Weight of the tree path from the root to each vertex."""
    wt = {t.root: 0}
    for v in t.order[1:]:
        par = t.parent[v][0]
        wt[v] = wt[par] + lab.step_weight(par, v)
    return wt


def colouring_from_labelling(g: Graph, lab: EdgeLabelling, base: int = 0, root: int = 0) -> CircularColouring:
    """Invert :func:`induced_labelling`: colour ``root`` with ``base`` and
    every other vertex by its tree weight."""
    t = spanning_tree(g, root)
    p = lab.params.p
    for e in g.edges:
        if not t.is_tree_edge(e):
            cyc = fundamental_cycle(t, e)
            w = cycle_weight(lab, cyc)
            if w % p:
                raise P2Violation(cyc, w)
    wt = tree_weights(lab, t)
    c = CircularColouring(lab.params, tuple((base + wt[v]) % p for v in range(g.n)))
    assert induced_labelling(g, c) == lab
    return c


@dataclass(frozen=True)
class DistinguishingCycle:
    """A cycle whose weight differs between two labellings."""

    cycle: Cycle
    src_weight: int
    dst_weight: int


@dataclass(frozen=True)
class CutPlan:
    """One round of the cocycle construction: shift ``S`` by ``+alpha``."""

    S: frozenset
    alpha: int


def plan_cut(src: EdgeLabelling, dst: EdgeLabelling, t: SpanningTree) -> CutPlan | DistinguishingCycle | None:
    """Choose the next cut that moves ``src`` toward ``dst``.

    Vertices are split by the sign of ``wt(v, src) - wt(v, dst)`` along
    ``t``.  If some vertex has positive difference, ``S`` is every vertex
    with non-positive difference; otherwise ``S`` is the negative ones.
    Returns None when the labellings coincide.
    """
    g = src.graph
    ws, wd = tree_weights(src, t), tree_weights(dst, t)
    diff = [ws[v] - wd[v] for v in range(g.n)]
    if any(d > 0 for d in diff):
        S = frozenset(v for v in range(g.n) if diff[v] <= 0)
    elif any(d < 0 for d in diff):
        S = frozenset(v for v in range(g.n) if diff[v] < 0)
    else:
        # tree labels agree; any remaining disagreement sits on a non-tree edge
        for i, e in enumerate(g.edges):
            if src.values[i] != dst.values[i]:
                cyc = fundamental_cycle(t, e)
                return DistinguishingCycle(cyc, cycle_weight(src, cyc), cycle_weight(dst, cyc))
        return None
    alpha = None
    for i, (u, v) in enumerate(g.edges):
        if (u in S) == (v in S):
            continue
        gap = src.values[i] - dst.values[i]
        # shifting S up lowers labels leaving S and raises labels entering it
        if (u in S and gap <= 0) or (v in S and gap >= 0):
            cyc = fundamental_cycle(t, (u, v))
            return DistinguishingCycle(cyc, cycle_weight(src, cyc), cycle_weight(dst, cyc))
        alpha = abs(gap) if alpha is None else min(alpha, abs(gap))
    return CutPlan(S, alpha)


def relabel_sequence(g: Graph, src: EdgeLabelling, dst: EdgeLabelling) -> list[CutRelabelStep] | DistinguishingCycle:
    """Cut relabellings turning ``src`` into ``dst``, or a fundamental cycle
    of the BFS tree rooted at 0 whose weights differ."""
    t = spanning_tree(g, 0)
    steps: list[CutRelabelStep] = []
    cur = src
    while True:
        plan = plan_cut(cur, dst, t)
        if plan is None:
            return steps
        if isinstance(plan, DistinguishingCycle):
            # cut relabelling never changes cycle weights
            return DistinguishingCycle(plan.cycle, cycle_weight(src, plan.cycle), plan.dst_weight)
        step = CutRelabelStep(plan.S, plan.alpha)
        cur = relabel_cut(cur, step)
        steps.append(step)


def format_labelling(lab: EdgeLabelling) -> str:
    lines = [f"labelling {lab.params.p} {lab.params.q} {lab.graph.m}"]
    lines += [f"{u} {v} {x}" for (u, v), x in lab.items()]
    return "\n".join(lines) + "\n"
