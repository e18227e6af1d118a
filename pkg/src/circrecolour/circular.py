"""Circular clique arithmetic and (p, q)-colourings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ColourOutOfRange, DomainMismatch, ParseError
from .graph import Edge, Graph


@dataclass(frozen=True)
class CircularParams:
    """Circumference ``p`` and gap ``q`` of a circular clique, ``p >= 2q``."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.p < 2 * self.q:
            raise ValueError(f"need q >= 1 and p >= 2q, got p={self.p}, q={self.q}")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def k(self) -> int:
        return self.p // self.q

    @property
    def r(self) -> int:
        return self.p - self.k * self.q

    @property
    def below_four(self) -> bool:
        """True in the polynomial regime ``2 <= p/q < 4``."""
        return self.p < 4 * self.q

    def __str__(self):
        return f"({self.p},{self.q})"


def compatible(params: CircularParams, i: int, j: int) -> bool:
    d = abs(i - j)
    return params.q <= d <= params.p - params.q


def neighbour_colours(params: CircularParams, i: int) -> list[int]:
    return [j for j in range(params.p) if compatible(params, i, j)]


def circular_clique(params: CircularParams) -> Graph:
    p = params.p
    return Graph(p, ((i, j) for i in range(p) for j in range(i + 1, p) if compatible(params, i, j)))


@dataclass(frozen=True)
class CyclicInterval:
    """``[a, b]`` on ``Z_p``: the colours ``a, a+1, ..., b`` taken mod ``p``."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    def __len__(self):
        return (self.b - self.a) % self.p + 1

    def members(self) -> list[int]:
        return [(self.a + i) % self.p for i in range(len(self))]

    def __iter__(self):
        return iter(self.members())

    def __contains__(self, c) -> bool:
        return (c - self.a) % self.p < len(self)

    def position(self, c: int) -> int:
        """Offset of ``c`` from the left endpoint."""
        if c not in self:
            raise ValueError(f"{c} not in {self}")
        return (c - self.a) % self.p

    def __str__(self):
        return f"[{self.a},{self.b}]"


def interval_members(iv: CyclicInterval, p: Optional[int] = None) -> list[int]:
    if p is not None and p != iv.p:
        iv = CyclicInterval(iv.a, iv.b, p)
    return iv.members()


def as_interval(colours: Iterable[int], p: int) -> Optional[CyclicInterval]:
    """The cyclic interval equal to ``colours``, or None if it is not one."""
    s = set(colours)
    if not s:
        return None
    if len(s) == p:
        return CyclicInterval(0, p - 1, p)
    starts = [c for c in s if (c - 1) % p not in s]
    if len(starts) != 1:
        return None
    a = starts[0]
    return CyclicInterval(a, a + len(s) - 1, p)


@dataclass(frozen=True)
class CommonNeighbours:
    """Exact common neighbourhood; ``interval`` is None when the set is
    empty or is not a cyclic interval (possible only when p/q >= 4)."""

    colours: frozenset
    interval: Optional[CyclicInterval]

    @property
    def is_interval(self) -> bool:
        return self.interval is not None


def common_neighbours(params: CircularParams, i: int, j: int) -> CommonNeighbours:
    s = frozenset(x for x in range(params.p) if compatible(params, x, i) and compatible(params, x, j))
    return CommonNeighbours(s, as_interval(s, params.p))


@dataclass(frozen=True)
class CircularColouring:
    params: CircularParams
    colours: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self):
        return len(self.colours)

    def recoloured(self, v: int, colour: int) -> "CircularColouring":
        cs = list(self.colours)
        cs[v] = colour
        return CircularColouring(self.params, tuple(cs))

    def shifted(self, amount: int, vertices: Optional[Iterable[int]] = None) -> "CircularColouring":
        cs = list(self.colours)
        for v in (range(len(cs)) if vertices is None else vertices):
            cs[v] = (cs[v] + amount) % self.params.p
        return CircularColouring(self.params, tuple(cs))

    def restricted(self, vertices: Sequence[int]) -> "CircularColouring":
        return CircularColouring(self.params, tuple(self.colours[v] for v in vertices))


def verify_colouring(g: Graph, c: CircularColouring) -> Optional[Edge]:
    """Return None if ``c`` is a (p, q)-colouring of ``g``, else the first
    violating edge in canonical order."""
    if len(c.colours) != g.n:
        raise DomainMismatch(f"colouring has {len(c.colours)} entries, graph has {g.n} vertices")
    p = c.params.p
    for v, col in enumerate(c.colours):
        if not 0 <= col < p:
            raise ColourOutOfRange(f"vertex {v} has colour {col} outside 0..{p - 1}")
    for u, v in g.edges:
        if not compatible(c.params, c.colours[u], c.colours[v]):
            return (u, v)
    return None


def is_colouring(g: Graph, c: CircularColouring) -> bool:
    try:
        return verify_colouring(g, c) is None
    except (DomainMismatch, ColourOutOfRange):
        return False


# ---------------------------------------------------------------- file format

def parse_colouring(text: str) -> CircularColouring:
    header = None
    values: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.split()[0] == "c":
            continue
        tok = line.split()
        try:
            if header is None:
                if tok[0] != "colouring" or len(tok) != 4:
                    raise ParseError(f"bad colouring header {line!r}")
                header = (int(tok[1]), int(tok[2]), int(tok[3]))
            else:
                values.extend(int(t) for t in tok)
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}") from None
    if header is None:
        raise ParseError("missing colouring header")
    p, q, n = header
    if len(values) != n:
        raise ParseError(f"header declares {n} colours, found {len(values)}")
    try:
        params = CircularParams(p, q)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return CircularColouring(params, tuple(values))


def format_colouring(c: CircularColouring) -> str:
    return f"colouring {c.params.p} {c.params.q} {len(c)}\n" + " ".join(map(str, c.colours)) + "\n"


def read_colouring(path) -> CircularColouring:
    with open(path) as fh:
        return parse_colouring(fh.read())
