"""Shrikhande graph, complete graphs, Cartesian products, and Doob graph vertex indexing.

The Doob graph D(m,n) is the Cartesian product of m copies of the Shrikhande
graph Sh and n copies of K4.  Vertices of Sh are the elements of Z4 x Z4 with
connection set {+-(1,0), +-(0,1), +-(1,1)}: the torus grid lines plus the
slanted diagonals.  Graphs are stored as per-vertex neighbor bitmasks and are
immutable after construction; anything larger than DESK_SCALE_LIMIT vertices
is rejected outright instead of degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator, Optional

from .errors import DeskScaleError

DESK_SCALE_LIMIT = 4096

# Differences (mod 4) that make two Shrikhande vertices adjacent.
SHRIKHANDE_CONNECTION_SET = frozenset(
    {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
)


@dataclass(frozen=True)
class DoobParams:
    """Parameters (m, n) of the Doob graph D(m,n) = Sh^m x K4^n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"parameters must be nonnegative, got ({self.m}, {self.n})")
        if self.m + self.n == 0:
            raise ValueError("empty parameter set: need m + n >= 1")

    @property
    def word_length(self) -> int:
        """Diameter-scale quantity 2m + n (the Hamming word length after reduction)."""
        return 2 * self.m + self.n

    @property
    def vertex_count(self) -> int:
        return 4 ** self.word_length

    @property
    def code_size(self) -> int:
        """Cardinality of a maximum independent set: 4^(2m+n-1)."""
        return 4 ** (self.word_length - 1)

    def __str__(self):
        return f"D({self.m},{self.n})"


@dataclass(frozen=True)
class DoobVertex:
    """A vertex of D(m,n): m Shrikhande coordinates (pairs mod 4), then n K4 values."""

    sh: tuple[tuple[int, int], ...]
    k: tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Immutable graph over vertex indices 0..vertex_count-1.

    Adjacency is a tuple of per-vertex neighbor bitmasks (bit v of
    neighbor_masks[u] is set iff u ~ v).  No self-loops; masks symmetric.
    """

    vertex_count: int
    neighbor_masks: tuple[int, ...]
    params: Optional[DoobParams] = None
    label: str = ""

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.neighbor_masks[u] >> v & 1)

    def neighbors(self, u: int) -> Iterator[int]:
        mask = self.neighbor_masks[u]
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def degree(self, u: int) -> int:
        return self.neighbor_masks[u].bit_count()

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.neighbor_masks) // 2

    def regular_degree(self) -> Optional[int]:
        """Common degree if the graph is regular, else None."""
        degrees = {self.degree(u) for u in range(self.vertex_count)}
        return degrees.pop() if len(degrees) == 1 else None

    def common_neighbor_count(self, u: int, v: int) -> int:
        return (self.neighbor_masks[u] & self.neighbor_masks[v]).bit_count()

    def summary(self) -> str:
        name = self.label or "graph"
        deg = self.regular_degree()
        shape = f"{deg}-regular" if deg is not None else "irregular"
        tag = f" [{self.params}]" if self.params is not None else ""
        return f"{name}: {self.vertex_count} vertices, {self.edge_count()} edges, {shape}{tag}"


def check_desk_scale(params: DoobParams):
    """Refuse parameters whose graph exceeds the desk-scale vertex limit."""
    if params.vertex_count > DESK_SCALE_LIMIT:
        raise DeskScaleError(
            f"{params} has 4^{params.word_length} = {params.vertex_count} vertices, "
            f"over the desk-scale limit {DESK_SCALE_LIMIT}"
        )


def clique_number(graph: Graph) -> int:
    """Size of a largest clique, by branch and bound on candidate bitmasks."""
    masks = graph.neighbor_masks
    best = 0

    def extend(candidates, size):
        nonlocal best
        if size > best:
            best = size
        while candidates:
            if size + candidates.bit_count() <= best:
                return
            low = candidates & -candidates
            candidates ^= low
            extend(candidates & masks[low.bit_length() - 1], size + 1)

    extend((1 << graph.vertex_count) - 1, 0)
    return best


def graph_from_predicate(n, adjacent, params=None, label=""):
    """Build a Graph from an adjacency predicate on index pairs."""
    masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if adjacent(u, v):
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    return Graph(n, tuple(masks), params=params, label=label)


def sh_index(a: int, b: int) -> int:
    """Index of the Shrikhande vertex (a, b): 4a + b."""
    if not (0 <= a <= 3 and 0 <= b <= 3):
        raise ValueError(f"Shrikhande coordinate out of range: ({a}, {b})")
    return 4 * a + b


def sh_pair(i: int) -> tuple[int, int]:
    if not 0 <= i <= 15:
        raise ValueError(f"Shrikhande index out of range: {i}")
    return divmod(i, 4)


def k4_pair(v: int) -> tuple[int, int]:
    """Two-bit view (a, b) of a K4 value, v = 2a + b with a, b in {0, 1}."""
    if not 0 <= v <= 3:
        raise ValueError(f"K4 value out of range: {v}")
    return divmod(v, 2)


def k4_value(a: int, b: int) -> int:
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError(f"K4 pair out of range: ({a}, {b})")
    return 2 * a + b


@lru_cache(maxsize=None)
def shrikhande() -> Graph:
    """The Shrikhande graph on Z4 x Z4, vertex (a,b) at index 4a + b."""

    def adjacent(u, v):
        a, b = divmod(u, 4)
        c, d = divmod(v, 4)
        return ((a - c) % 4, (b - d) % 4) in SHRIKHANDE_CONNECTION_SET

    return graph_from_predicate(16, adjacent, label="Sh")


@lru_cache(maxsize=None)
def complete_graph(q: int) -> Graph:
    """The complete graph K_q."""
    if q < 2:
        raise ValueError(f"complete graph order must be at least 2, got {q}")
    return graph_from_predicate(q, lambda u, v: True, label=f"K{q}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (u1,v1) ~ (u2,v2) iff equal in one slot, adjacent in the other.

    The pair (u, v) maps to index u * h.vertex_count + v, so the left factor
    is the more significant digit.
    """
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise ValueError("cartesian product of an empty graph")
    n = g.vertex_count * h.vertex_count
    if n > DESK_SCALE_LIMIT:
        raise DeskScaleError(
            f"product would have {n} vertices, over the desk-scale limit {DESK_SCALE_LIMIT}"
        )
    hn = h.vertex_count
    masks = []
    for u in range(g.vertex_count):
        g_row = g.neighbor_masks[u]
        for v in range(hn):
            mask = h.neighbor_masks[v] << (u * hn)
            row = g_row
            while row:
                low = row & -row
                u2 = low.bit_length() - 1
                mask |= 1 << (u2 * hn + v)
                row ^= low
            masks.append(mask)
    return Graph(n, tuple(masks))


@lru_cache(maxsize=None)
def doob_graph(params: DoobParams) -> Graph:
    """The Doob graph D(m,n), vertices indexed by encode_vertex.

    Built as the left-to-right Cartesian product of m Shrikhande factors and
    n K4 factors, so coordinate 0 is the most significant digit.
    """
    if params.vertex_count > DESK_SCALE_LIMIT:
        raise DeskScaleError(
            f"{params} has 4^{params.word_length} = {params.vertex_count} vertices, "
            f"over the desk-scale limit {DESK_SCALE_LIMIT}"
        )
    factors = [shrikhande()] * params.m + [complete_graph(4)] * params.n
    product = reduce(cartesian_product, factors)
    return Graph(
        product.vertex_count,
        product.neighbor_masks,
        params=params,
        label=str(params),
    )


def encode_vertex(vertex: DoobVertex, params: DoobParams) -> int:
    """Mixed-radix index: Sh coordinates as base-16 digits 4a+b, then K4 base-4 digits."""
    if len(vertex.sh) != params.m or len(vertex.k) != params.n:
        raise ValueError(
            f"vertex shape ({len(vertex.sh)} Sh, {len(vertex.k)} K4) does not match {params}"
        )
    index = 0
    for a, b in vertex.sh:
        index = index * 16 + sh_index(a, b)
    for v in vertex.k:
        if not 0 <= v <= 3:
            raise ValueError(f"K4 coordinate out of range: {v}")
        index = index * 4 + v
    return index


def decode_vertex(index: int, params: DoobParams) -> DoobVertex:
    """Inverse of encode_vertex."""
    if not 0 <= index < params.vertex_count:
        raise ValueError(f"vertex index {index} out of range for {params}")
    k_digits = []
    for _ in range(params.n):
        index, d = divmod(index, 4)
        k_digits.append(d)
    sh_digits = []
    for _ in range(params.m):
        index, d = divmod(index, 16)
        sh_digits.append(divmod(d, 4))
    return DoobVertex(tuple(reversed(sh_digits)), tuple(reversed(k_digits)))
