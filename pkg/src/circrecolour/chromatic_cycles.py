"""Cycles of length divisible by k and the colouring procedure they control.

A k-colouring of ``G - uv`` with ``f(u) == f(v)`` is repaired by choosing
a cyclic order ``pi`` of the colours and recolouring sinks of the digraph
whose arcs follow that order.  The search succeeds whenever some order
leaves the part reachable from ``u`` acyclic, which is guaranteed when
``G - uv`` has fewer than ``(k-1)!/2`` cycles of length ``0 mod k``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotProperOnGMinusE, ParamOutOfRange
from .graph import Cycle, CycleFound, Digraph, Edge, Graph, canonical_edge, enumerate_cycles, topological_sort

MAX_K = 8


def cycle_threshold(k: int) -> Fraction:
    """``(k-1)!/2`` exactly; it is ``1/2`` when k = 2."""
    return Fraction(math.factorial(k - 1), 2)


def cycles_mod_k(g: Graph, k: int, limit: Optional[int] = None) -> list[Cycle]:
    if k < 2:
        raise ValueError("k must be at least 2")
    return [c for c in enumerate_cycles(g, limit=limit) if len(c.vertices) % k == 0]


def count_cycles_mod_k(g: Graph, k: int, limit: Optional[int] = None) -> int:
    """Number of simple cycles (as subgraphs) whose length is divisible by k."""
    return len(cycles_mod_k(g, k, limit))


@dataclass(frozen=True)
class PermutationDigraph:
    """Arcs ``x -> y`` along edges where ``f(y)`` follows ``f(x)`` in the
    cyclic order ``perm``; ``reach`` is everything reachable from ``source``."""

    digraph: Digraph
    perm: tuple[int, ...]
    source: int
    reach: frozenset

    @classmethod
    def build(cls, g: Graph, colours: Sequence[int], perm: Sequence[int], source: int) -> "PermutationDigraph":
        k = len(perm)
        nxt = {perm[i]: perm[(i + 1) % k] for i in range(k)}
        arcs = []
        for u, v in g.edges:
            if nxt[colours[u]] == colours[v]:
                arcs.append((u, v))
            if nxt[colours[v]] == colours[u]:
                arcs.append((v, u))
        d = Digraph(g.n, arcs)
        seen = {source}
        stack = [source]
        while stack:
            x = stack.pop()
            for y in d.successors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return cls(d, tuple(perm), source, frozenset(seen))

    def reachable_cycle(self) -> Optional[Cycle]:
        found = topological_sort(self.digraph, self.reach)
        return found.cycle if isinstance(found, CycleFound) else None

    def lowest_sink(self) -> int:
        return min(x for x in self.reach if not any(y in self.reach for y in self.digraph.successors(x)))


@dataclass(frozen=True)
class NoAcyclicPermutation:
    """Every cyclic colour order starting at ``f(u)`` produced a directed
    cycle reachable from ``u``; ``cycles[i]`` belongs to ``perms[i]``
    (colours rebased so that ``f(u) = 0``)."""

    edge: Edge
    perms: tuple[tuple[int, ...], ...]
    cycles: tuple[Cycle, ...]


def _check_k(k: int):
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > MAX_K:
        raise ParamOutOfRange(f"k = {k} exceeds the permutation search cap {MAX_K}")


def _perms_with_zero_first(k: int):
    for rest in itertools.permutations(range(1, k)):
        yield (0,) + rest


def claiming_permutations(g: Graph, colours: Sequence[int], cycle: Cycle, k: int) -> list[tuple[int, ...]]:
    """Permutations ``pi`` with ``pi(0) = 0`` under which ``cycle`` is directed
    in one of its two orientations."""
    out = []
    for perm in _perms_with_zero_first(k):
        nxt = {perm[i]: perm[(i + 1) % k] for i in range(k)}
        for orient in (cycle, cycle.reversed()):
            if all(nxt[colours[a]] == colours[b] for a, b in orient.steps()):
                out.append(perm)
                break
    return out


def extend_colouring(g: Graph, e: Sequence[int], f: Sequence[int], k: int) -> tuple[int, ...] | NoAcyclicPermutation:
    """Turn a proper k-colouring of ``g - e`` into one of ``g``.

    Colours are rebased so that ``f(u) = 0``.  Permutations with
    ``pi(0) = 0`` are tried lexicographically; for the first one whose
    digraph restricted to the vertices reachable from ``u`` is acyclic,
    the lowest-id sink is recoloured to its successor colour until ``u``
    and ``v`` differ.
    """
    _check_k(k)
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise ValueError(f"{(u, v)} is not an edge of the graph")
    rest = g.without_edge((u, v))
    if len(f) != g.n or any(not 0 <= c < k for c in f) or any(f[a] == f[b] for a, b in rest.edges):
        raise NotProperOnGMinusE(f"{tuple(f)} is not a proper {k}-colouring of G - {(u, v)}")
    if f[u] != f[v]:
        return tuple(f)
    base = f[u]
    colours = [(c - base) % k for c in f]
    perms, cycles = [], []
    for perm in _perms_with_zero_first(k):
        pd = PermutationDigraph.build(rest, colours, perm, u)
        cyc = pd.reachable_cycle()
        if cyc is not None:
            assert len(cyc.vertices) % k == 0
            perms.append(perm)
            cycles.append(cyc)
            continue
        position = {c: i for i, c in enumerate(perm)}
        while colours[u] == colours[v]:
            x = pd.lowest_sink()
            colours[x] = perm[(position[colours[x]] + 1) % k]
            pd = PermutationDigraph.build(rest, colours, perm, u)
        out = tuple((c + base) % k for c in colours)
        assert all(out[a] != out[b] for a, b in g.edges)
        return out
    if k >= 3:
        for perm, cyc in zip(perms, cycles):
            claims = claiming_permutations(rest, colours, cyc, k)
            assert len(claims) == 2 and perm in claims
    return NoAcyclicPermutation((u, v), tuple(perms), tuple(cycles))


@dataclass(frozen=True)
class FailureWitness:
    """Edge insertion ``step`` (0-based, in ``order``) could not be
    completed; ``count`` is the number of cycles of length ``0 mod k`` in
    the graph built so far, against ``threshold``."""

    step: int
    edge: Edge
    count: int
    threshold: Fraction
    order: tuple[Edge, ...]
    detail: NoAcyclicPermutation


def insertion_order(g: Graph, k: int) -> tuple[Edge, ...]:
    """Canonical edge order, except that the first edge ``e`` with fewer
    than ``(k-1)!/2`` cycles of length ``0 mod k`` in ``g - e`` goes last.

    Every earlier prefix is then a subgraph of ``g - e``, so the cycle
    bound holds at every insertion.
    """
    bound = cycle_threshold(k)
    for e in g.edges:
        if count_cycles_mod_k(g.without_edge(e), k) < bound:
            return tuple(x for x in g.edges if x != e) + (e,)
    return g.edges


def colour_sparse_cycles(g: Graph, k: int) -> tuple[int, ...] | FailureWitness:
    """Proper k-colouring of ``g`` built one edge at a time, or the first
    insertion that could not be repaired."""
    if k < 3:
        raise ValueError("k must be at least 3")
    _check_k(k)
    order = insertion_order(g, k)
    colours: tuple[int, ...] = (0,) * g.n
    current = Graph(g.n, ())
    for step, e in enumerate(order):
        current = current.with_edge(e)
        result = extend_colouring(current, e, colours, k)
        if isinstance(result, NoAcyclicPermutation):
            count = count_cycles_mod_k(current.without_edge(e), k)
            return FailureWitness(step, e, count, cycle_threshold(k), order, result)
        colours = result
    return colours
