"""Reduction from k-colouring reconfiguration to (p, q)-colouring
reconfiguration for p/q >= 4, where k = floor(p/q).

The instance ``G'`` contains ``G`` itself, a pinned copy ``y_0..y_{p-1}``
of the circular clique, and for every edge ``uv`` two forbidding paths
``P_uv`` and ``P_vu`` whose internal vertices are confined to colour lists
by their edges into the pinned copy.  The lists stop both ends of an edge
from landing in block ``S_0`` of the interval partition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .circular import CircularColouring, CircularParams, CyclicInterval, compatible, verify_colouring
from .errors import InvalidKSequence, InvalidPQSequence, ParamOutOfRange, RecolourError, RIsZero
from .graph import Graph
from .recolour import RecolourStep


class NotAProperColouring(RecolourError):
    pass


def _require_hard_regime(params: CircularParams):
    if params.below_four:
        raise ParamOutOfRange(f"p/q = {params.p}/{params.q} is below 4")


def path_length_t(params: CircularParams) -> int:
    """Smallest positive ``t`` with ``(t + 1) q = r (mod p)``."""
    _require_hard_regime(params)
    p, q, r = params.p, params.q, params.r
    if r == 0:
        raise RIsZero("r = 0: use the direct embedding instead of forbidding paths")
    for t in range(1, p + 1):
        if ((t + 1) * q - r) % p == 0:
            return t
    raise AssertionError("gcd(p, q) divides r, so a solution exists")


@dataclass(frozen=True)
class IntervalPartition:
    """Blocks ``S_0..S_{k-1}`` of ``Z_p``; ``gamma[i]`` is the left end of
    ``S_i``."""

    params: CircularParams
    blocks: tuple[CyclicInterval, ...]
    gamma: tuple[int, ...]
    _block_of: tuple[int, ...] = field(repr=False)

    def phi(self, colour: int) -> int:
        return self._block_of[colour]


def interval_partition(params: CircularParams) -> IntervalPartition:
    _require_hard_regime(params)
    p, q, k, r = params.p, params.q, params.k, params.r
    blocks = [CyclicInterval(0, q + r - 1, p)]
    blocks += [CyclicInterval(i * q + r, (i + 1) * q + r - 1, p) for i in range(1, k)]
    block_of = [0] * p
    for i, b in enumerate(blocks):
        for c in b.members():
            block_of[c] = i
    assert sum(len(b) for b in blocks) == p
    return IntervalPartition(params, tuple(blocks), tuple(b.a for b in blocks), tuple(block_of))


@dataclass(frozen=True)
class ForbiddingPathSpec:
    """Lists and pinned-copy joins for the internal vertices ``x_0..x_t``."""

    params: CircularParams
    t: int
    lists: tuple[CyclicInterval, ...]
    joins: tuple[CyclicInterval, ...]

    def enforced_list(self, i: int) -> frozenset:
        """Colours compatible with every pinned vertex joined to ``x_i``."""
        ys = self.joins[i].members()
        return frozenset(c for c in range(self.params.p) if all(compatible(self.params, c, j) for j in ys))


def forbidding_path_spec(params: CircularParams) -> ForbiddingPathSpec:
    t = path_length_t(params)
    p, q = params.p, params.q
    end_list = CyclicInterval(p - 1, 2 * q - 1, p)
    end_join = CyclicInterval(3 * q - 1, p - q - 1, p)
    lists = [end_list] + [CyclicInterval(i * q, (i + 2) * q - 1, p) for i in range(1, t)] + [end_list]
    joins = [end_join] + [CyclicInterval((i + 3) * q - 1, (i - 1) * q, p) for i in range(1, t)] + [end_join]
    spec = ForbiddingPathSpec(params, t, tuple(lists), tuple(joins))
    for i in range(t + 1):
        if spec.enforced_list(i) != frozenset(lists[i].members()):
            raise AssertionError(f"pinned joins of x_{i} do not enforce {lists[i]} for {params}")
    return spec


def standard_path_colours(params: CircularParams, t: int, tail: int, head: int) -> list[int]:
    """Colours of ``x_0..x_t`` on the path from a vertex coloured ``tail``
    to one coloured ``head``."""
    p, q = params.p, params.q
    if tail == 0:
        return [(i + 1) * q % p for i in range(t + 1)]
    base = [i * q % p for i in range(t)]
    return base + [q if head == 0 else 0]


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    params: CircularParams
    f: tuple[int, ...]
    target: tuple[int, ...]
    g_prime: Graph
    alpha: CircularColouring
    beta: CircularColouring
    partition: IntervalPartition
    spec: Optional[ForbiddingPathSpec]
    pinned: tuple[int, ...]
    paths: dict  # (a, b) -> ids of x_0..x_t on the path from a to b

    @property
    def k(self) -> int:
        return self.params.k

    def metadata(self) -> dict:
        return {
            "original": list(range(self.graph.n)),
            "pinned": list(self.pinned),
            "paths": [
                {"from": a, "to": b, "vertices": list(ids)}
                for (a, b), ids in self.paths.items()
            ],
        }


def _check_k_colouring(g: Graph, col: Sequence[int], k: int, name: str):
    if len(col) != g.n or any(not 0 <= c < k for c in col):
        raise NotAProperColouring(f"{name} is not a map into 0..{k - 1}")
    for u, v in g.edges:
        if col[u] == col[v]:
            raise NotAProperColouring(f"{name} gives edge {u}-{v} colour {col[u]} at both ends")


def build_reduction(g: Graph, f: Sequence[int], target: Sequence[int], params: CircularParams) -> ReductionInstance:
    """Compile the k-colouring instance ``(g, f, target)`` into ``(G', alpha, beta)``.

    Vertex ids of ``G'``: the original vertices, then ``y_0..y_{p-1}``,
    then for each edge ``uv`` in canonical order the internal vertices of
    ``P_uv`` followed by those of ``P_vu``.  When ``r = 0`` no gadgets are
    needed and ``G' = G`` with colours scaled by ``q``.
    """
    _require_hard_regime(params)
    k, p, q = params.k, params.p, params.q
    f, target = tuple(f), tuple(target)
    _check_k_colouring(g, f, k, "f")
    _check_k_colouring(g, target, k, "target")
    part = interval_partition(params)
    gamma = part.gamma

    if params.r == 0:
        alpha = CircularColouring(params, tuple(gamma[c] for c in f))
        beta = CircularColouring(params, tuple(gamma[c] for c in target))
        return ReductionInstance(g, params, f, target, g, alpha, beta, part, None, (), {})

    spec = forbidding_path_spec(params)
    t = spec.t
    n = g.n
    pinned = tuple(range(n, n + p))
    edges = list(g.edges)
    edges += [(pinned[i], pinned[j]) for i in range(p) for j in range(i + 1, p) if compatible(params, i, j)]
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    nxt = n + p
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            ids = tuple(range(nxt, nxt + t + 1))
            nxt += t + 1
            paths[(a, b)] = ids
            chain = (a,) + ids + (b,)
            edges += list(zip(chain, chain[1:]))
            for i, x in enumerate(ids):
                edges += [(x, pinned[j]) for j in spec.joins[i].members()]
    g_prime = Graph(nxt, edges)

    def extend(col):
        cs = [0] * nxt
        for v in range(n):
            cs[v] = gamma[col[v]]
        for i in range(p):
            cs[pinned[i]] = i
        for (a, b), ids in paths.items():
            for x, c in zip(ids, standard_path_colours(params, t, cs[a], cs[b])):
                cs[x] = c
        return CircularColouring(params, tuple(cs))

    alpha, beta = extend(f), extend(target)
    assert verify_colouring(g_prime, alpha) is None
    assert verify_colouring(g_prime, beta) is None
    return ReductionInstance(g, params, f, target, g_prime, alpha, beta, part, spec, pinned, paths)


def lift_sequence(red: ReductionInstance, ksteps: Sequence[Sequence[int]]) -> list[RecolourStep]:
    """Turn a k-colouring reconfiguration sequence for ``G`` into a
    (p, q)-colouring reconfiguration sequence for ``G'``.

    Every k-step ``u -> c`` is realised by one of five scripted moves,
    depending on whether ``u`` leaves or enters colour 0 and whether the
    other endpoint is ``q + r``.  Each stage is applied to all neighbours of
    ``u`` in ascending order before the next stage begins; scripted
    recolourings that would not change a colour are skipped.
    """
    g, params = red.graph, red.params
    p, q, r, k = params.p, params.q, params.r, params.k
    gamma = red.partition.gamma
    h = list(red.f)
    eta = list(red.alpha.colours)
    out: list[RecolourStep] = []

    def put(v, c):
        c %= p
        if eta[v] != c:
            eta[v] = c
            out.append(RecolourStep(v, c))

    for idx, step in enumerate(ksteps):
        try:
            u, c = (int(x) for x in step)
        except (TypeError, ValueError):
            raise InvalidKSequence(f"step {idx}: malformed {step!r}") from None
        if not (0 <= u < g.n and 0 <= c < k) or h[u] == c or any(h[w] == c for w in g.neighbours(u)):
            raise InvalidKSequence(f"step {idx}: cannot recolour {u} to {c}")
        old, new = gamma[h[u]], gamma[c]
        h[u] = c
        if red.spec is None or (old != 0 and new != 0):
            put(u, new)  # case (a), or the gadget-free embedding
            continue
        t = red.spec.t
        nbrs = g.neighbours(u)
        out_path = {v: red.paths[(u, v)] for v in nbrs}
        in_path = {v: red.paths[(v, u)] for v in nbrs}

        def restore_standard():
            for v in nbrs:
                for x, col in zip(out_path[v], standard_path_colours(params, t, eta[u], eta[v])):
                    put(x, col)

        if old == 0 and new != q + r:  # case (b)
            put(u, new)
            for v in nbrs:
                put(in_path[v][t], 0)
            restore_standard()
        elif old == 0:  # case (c): 0 -> q + r
            for v in nbrs:
                for i in range(t, -1, -1):
                    put(out_path[v][i], (i + 2) * q - 1)
            for v in nbrs:
                put(in_path[v][t - 1], -q - 1)
                put(in_path[v][t], 2 * q - 1)
            put(u, q - 1)
            for v in nbrs:
                put(out_path[v][0], p - 1)
                put(in_path[v][t], p - 1)
            put(u, q + r)
            for v in nbrs:
                put(in_path[v][t - 1], r - 2 * q)
                put(in_path[v][t], 0)
                for i in range(t):
                    put(out_path[v][i], i * q)
                put(out_path[v][t], 0)
        elif old != q + r:  # case (d): 2q + r or above -> 0
            for v in nbrs:
                put(in_path[v][t], q)
                for i in range(t, -1, -1):
                    put(out_path[v][i], (i + 1) * q)
            put(u, 0)
        else:  # case (e): q + r -> 0
            for v in nbrs:
                put(in_path[v][t], p - 1)
                put(out_path[v][0], p - 1)
            put(u, q - 1)
            for v in nbrs:
                for i in range(t, -1, -1):
                    put(out_path[v][i], (i + 2) * q - 1)
            for v in nbrs:
                put(in_path[v][t - 1], -q - 1)
                put(in_path[v][t], 2 * q - 1)
            put(u, 0)
            for v in nbrs:
                for i in range(t + 1):
                    put(out_path[v][i], (i + 1) * q)
                put(in_path[v][t], q)
                put(in_path[v][t - 1], r - 2 * q)
    return out


def project_sequence(red: ReductionInstance, pqsteps: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Read off the k-colouring moves of the original vertices.

    Steps are replayed on ``G'`` from ``alpha`` (each is checked); a
    k-step is emitted whenever an original vertex changes block.
    """
    gp, params, g = red.g_prime, red.params, red.graph
    phi = red.partition.phi
    cur = list(red.alpha.colours)
    h = [phi(cur[v]) for v in range(g.n)]
    out = []
    for idx, step in enumerate(pqsteps):
        try:
            v, c = (int(x) for x in step)
        except (TypeError, ValueError):
            raise InvalidPQSequence(f"step {idx}: malformed {step!r}") from None
        if not (0 <= v < gp.n and 0 <= c < params.p) or cur[v] == c:
            raise InvalidPQSequence(f"step {idx}: bad recolouring of {v} to {c}")
        for w in gp.neighbours(v):
            if not compatible(params, c, cur[w]):
                raise InvalidPQSequence(f"step {idx}: {v}={c} conflicts with {w}={cur[w]}")
        cur[v] = c
        if v < g.n and phi(c) != h[v]:
            h[v] = phi(c)
            if any(h[w] == h[v] for w in g.neighbours(v)):
                raise AssertionError(f"step {idx}: projection is not a proper colouring")
            out.append((v, h[v]))
    return out


@dataclass(frozen=True)
class ForbiddingCounterexample:
    """Colours of ``u``, ``v`` (both in ``S_0``) and of both paths."""

    u_colour: int
    v_colour: int
    path_uv: tuple[int, ...]
    path_vu: tuple[int, ...]


def _list_path(params, lists, start: int, end: int) -> Optional[tuple[int, ...]]:
    """A colouring of ``x_0..x_t`` from the lists that is proper on the path
    ``start, x_0, ..., x_t, end``, or None."""
    layers = [{c: None for c in lists[0] if compatible(params, c, start)}]
    for lst in lists[1:]:
        prev = layers[-1]
        layer = {}
        for c in lst:
            for b in prev:
                if compatible(params, b, c):
                    layer[c] = b
                    break
        layers.append(layer)
    ends = [c for c in layers[-1] if compatible(params, c, end)]
    if not ends:
        return None
    cols = [min(ends)]
    for layer in reversed(layers[1:]):
        cols.append(layer[cols[-1]])
    return tuple(reversed(cols))


def check_forbidding_property(params: CircularParams, lists: Optional[Sequence] = None) -> Optional[ForbiddingCounterexample]:
    """Search every list colouring of ``P_uv`` and ``P_vu`` for one that puts
    both ``u`` and ``v`` in ``S_0``.  Returns None when there is none.

    The search runs layer by layer along each path, so every list colouring
    is covered without listing them one by one.  ``lists`` overrides the
    gadget lists (used to check that the search detects broken gadgets).
    """
    spec = forbidding_path_spec(params)
    lists = [list(L) for L in (lists if lists is not None else spec.lists)]
    s0 = interval_partition(params).blocks[0].members()
    for cu in s0:
        for cv in s0:
            if not compatible(params, cu, cv):
                continue
            fwd = _list_path(params, lists, cu, cv)
            if fwd is None:
                continue
            back = _list_path(params, lists, cv, cu)
            if back is not None:
                return ForbiddingCounterexample(cu, cv, fwd, back)
    return None


def table_column(spec: ForbiddingPathSpec, i: int, colour: int) -> int:
    """Column of ``colour`` in row ``x_i`` of the list table, where the
    entry below colour ``c`` is ``c + q``.  Valid for ``0 <= i < t``."""
    p, q = spec.params.p, spec.params.q
    if i == 0:
        return (colour - (p - 1)) % p
    return (colour - i * q) % p + 1
