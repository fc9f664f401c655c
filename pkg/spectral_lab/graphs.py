"""
Simple undirected graphs stored as rows of neighbour bits, the parameterized
families the energy lemmas talk about, the small-graph catalog, and graph6.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy

from spectral_lab import Graph6Error, InvalidFamily, InvalidGraph

MAX_ORDER = 62

# A vertex subset, either as a bit mask or as an iterable of vertex indices.
VertexSet = Union[int, Iterable[int]]


def _popcount(bits: int) -> int:
    return bin(bits).count("1")


@dataclass(frozen=True)
class Graph:
    """
    An undirected simple graph on vertices ``0 .. n-1``.

    ``rows[i]`` is the neighbour set of vertex ``i`` as a bit mask. Instances
    are immutable and check symmetry and the empty diagonal on construction.
    """

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise InvalidGraph(f"order must be in [1, {MAX_ORDER}], got {self.n}")
        if len(self.rows) != self.n:
            raise InvalidGraph(
                f"expected {self.n} adjacency rows, got {len(self.rows)}"
            )
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise InvalidGraph(f"row {i} names a vertex outside 0..{self.n - 1}")
            if row >> i & 1:
                raise InvalidGraph(f"vertex {i} has a loop")
            bits = row
            while bits:
                low = bits & -bits
                j = low.bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise InvalidGraph(f"edge ({i}, {j}) is not symmetric")
                bits ^= low

    @property
    def m(self) -> int:
        return sum(_popcount(row) for row in self.rows) // 2

    @property
    def edge_count(self) -> int:
        return self.m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return _popcount(self.rows[v])

    def degrees(self) -> List[int]:
        return [_popcount(row) for row in self.rows]

    def neighbors(self, v: int) -> List[int]:
        return [u for u in range(self.n) if self.rows[v] >> u & 1]

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (u, v)
            for v in range(1, self.n)
            for u in range(v)
            if self.rows[u] >> v & 1
        ]

    def adjacency_matrix(self) -> numpy.ndarray:
        """The 0/1 adjacency matrix as an ``n x n`` integer array."""
        a = numpy.zeros((self.n, self.n), dtype=numpy.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, graph6={graph6_encode(self)!r})"


def _rows_from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> List[int]:
    rows = [0] * n
    for edge in edges:
        u, v = edge
        if u == v:
            raise InvalidGraph(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraph(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


def graph_from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Build a graph from an edge list; repeated edges collapse into one.

    Parameters
    ----------
    n : int
        Number of vertices, between 1 and 62.
    edges : iterable of pairs
        Unordered vertex pairs ``(u, v)`` with ``u != v``.

    Raises
    ------
    InvalidGraph
        On loops, endpoints outside ``0..n-1`` or ``n`` out of range.
    """
    if not 1 <= n <= MAX_ORDER:
        raise InvalidGraph(f"order must be in [1, {MAX_ORDER}], got {n}")
    return Graph(n, tuple(_rows_from_edges(n, edges)))


def _mask(g: Graph, s: VertexSet) -> int:
    if isinstance(s, int):
        bits = s
    else:
        bits = 0
        for v in s:
            if not 0 <= v < g.n:
                raise InvalidGraph(f"vertex {v} is not in 0..{g.n - 1}")
            bits |= 1 << v
    if bits < 0 or bits >> g.n:
        raise InvalidGraph(f"vertex set {bits:#x} is not a subset of 0..{g.n - 1}")
    return bits


def is_connected(g: Graph) -> bool:
    return _reach(g, 0) == (1 << g.n) - 1


def _reach(g: Graph, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        bits = frontier
        while bits:
            low = bits & -bits
            nxt |= g.rows[low.bit_length() - 1]
            bits ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def induced_subgraph(g: Graph, s: VertexSet) -> Graph:
    """
    The subgraph induced by ``s``, relabeled ``0..|s|-1`` in ascending order.
    """
    bits = _mask(g, s)
    if not bits:
        raise InvalidGraph("cannot induce on an empty vertex set")
    kept = [v for v in range(g.n) if bits >> v & 1]
    rows = []
    for v in kept:
        row = 0
        for new, u in enumerate(kept):
            if g.rows[v] >> u & 1:
                row |= 1 << new
        rows.append(row)
    return Graph(len(kept), tuple(rows))


def remove_vertices(g: Graph, s: VertexSet) -> Graph:
    """``g - s``: the subgraph induced by the vertices not in ``s``."""
    return induced_subgraph(g, ((1 << g.n) - 1) & ~_mask(g, s))


def components(g: Graph) -> List[Graph]:
    """Connected components, ordered by their smallest original vertex."""
    remaining = (1 << g.n) - 1
    parts = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        reached = _reach(g, start)
        parts.append(induced_subgraph(g, reached))
        remaining &= ~reached
    return parts


def disjoint_union(a: Graph, b: Graph) -> Graph:
    if a.n + b.n > MAX_ORDER:
        raise InvalidGraph(
            f"union would have {a.n + b.n} vertices, more than {MAX_ORDER}"
        )
    rows = a.rows + tuple(row << a.n for row in b.rows)
    return Graph(a.n + b.n, rows)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Rename vertex ``order[i]`` to ``i``."""
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    rows = [0] * g.n
    for i, v in enumerate(order):
        row = g.rows[v]
        new = 0
        while row:
            low = row & -row
            new |= 1 << position[low.bit_length() - 1]
            row ^= low
        rows[i] = new
    return Graph(g.n, tuple(rows))


def add_vertex(g: Graph, neighbours: int) -> Graph:
    """Append vertex ``g.n`` adjacent to the vertices in the ``neighbours`` mask."""
    new = g.n
    rows = tuple(
        row | (1 << new) if neighbours >> v & 1 else row
        for v, row in enumerate(g.rows)
    )
    return Graph(g.n + 1, rows + (neighbours,))


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def triangle_count(g: Graph) -> int:
    return sum(
        _popcount(g.rows[u] & g.rows[v])
        for u, v in g.edges()
    ) // 3


def exceptional_kind(n: int, m: int) -> str:
    """
    Name the connected graph pinned down by its order and size, if any.

    Among connected graphs, ``K_1``, ``K_2``, ``P_3`` and ``K_n`` are the only
    ones the energy bounds treat specially, and each is the unique connected
    graph with its ``(n, m)``.
    """
    if n == 1:
        return "K_1"
    if n == 2 and m == 1:
        return "K_2"
    if n == 3 and m == 2:
        return "P_3"
    if m == n * (n - 1) // 2:
        return "K_n"
    return "none"


def random_graph(n: int, density: float, rng: numpy.random.Generator) -> Graph:
    """An Erdos-Renyi graph: each pair is an edge with probability ``density``."""
    draws = rng.random(n * (n - 1) // 2)
    pairs = ((u, v) for v in range(1, n) for u in range(v))
    return graph_from_edges(
        n, [pair for pair, x in zip(pairs, draws) if x < density]
    )


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with the center at vertex 0."""
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


class FamilyKind(Enum):
    path = "path"
    cycle = "cycle"
    complete = "complete"
    star = "star"
    complete_minus_edge = "complete-minus-edge"
    complete_plus_pendant = "complete-plus-pendant"
    clique_k2 = "clique-k2"
    subdivided_star = "subdivided-star"
    gadget = "gadget"


_MIN_N = {
    FamilyKind.path: 1,
    FamilyKind.cycle: 3,
    FamilyKind.complete: 1,
    FamilyKind.star: 1,
    FamilyKind.complete_minus_edge: 3,
    FamilyKind.complete_plus_pendant: 3,
    FamilyKind.clique_k2: 5,
    FamilyKind.subdivided_star: 2,
}


@dataclass(frozen=True)
class FamilySpec:
    """
    A parameterized family member.

    ``params`` is ``(n,)`` for most kinds, ``(n, t)`` for
    ``subdivided_star`` and ``(index,)`` for ``gadget``.
    """

    kind: FamilyKind
    params: Tuple[int, ...]

    def __post_init__(self) -> None:
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        expected = 2 if kind is FamilyKind.subdivided_star else 1
        if len(self.params) != expected:
            raise InvalidFamily(
                f"{kind.value} takes {expected} parameter(s), got {self.params}"
            )
        if kind is FamilyKind.gadget:
            if not 1 <= self.params[0] <= len(_GADGET_EDGES):
                raise InvalidFamily(
                    f"gadget index must be in [1, {len(_GADGET_EDGES)}], "
                    f"got {self.params[0]}"
                )
            return
        n = self.params[0]
        if n < _MIN_N[kind]:
            raise InvalidFamily(f"{kind.value} needs n >= {_MIN_N[kind]}, got {n}")
        if kind is FamilyKind.subdivided_star:
            t = self.params[1]
            if not 1 <= t <= n - 1:
                raise InvalidFamily(
                    f"subdivided-star needs 1 <= t <= n - 1, got n={n}, t={t}"
                )

    @property
    def n(self) -> int:
        return self.params[0]

    @property
    def t(self) -> Optional[int]:
        if self.kind is FamilyKind.subdivided_star:
            return self.params[1]
        return None

    @property
    def order(self) -> int:
        """Number of vertices of the built graph."""
        if self.kind is FamilyKind.star:
            return self.n + 1
        if self.kind is FamilyKind.subdivided_star:
            return self.n + self.params[1] + 1
        if self.kind is FamilyKind.gadget:
            return _GADGET_ORDERS[self.params[0]]
        return self.n


def build_family(spec: FamilySpec) -> Graph:
    """
    Build a family member with its fixed labeling.

    Vertex 0 is always the distinguished vertex:

    * ``complete_minus_edge``: the missing edge is ``(0, 1)``;
    * ``complete_plus_pendant``: 0 is the pendant, hanging off vertex 1, and
      ``1..n-1`` is a clique;
    * ``clique_k2``: ``0..n-3`` is a clique, ``u = n-2`` and ``v = n-1`` are
      adjacent and both adjacent to ``y = 0``;
    * ``star`` and ``subdivided_star``: 0 is the center. In a subdivided star
      the subdivision vertices are ``1..t``, their leaves ``t+1..2t`` and the
      intact leaves ``2t+1..n+t``.
    """
    kind, n = spec.kind, spec.n
    if spec.order > MAX_ORDER:
        raise InvalidFamily(
            f"{kind.value}{spec.params} has {spec.order} vertices, "
            f"more than {MAX_ORDER}"
        )
    if kind is FamilyKind.path:
        return path_graph(n)
    if kind is FamilyKind.cycle:
        return cycle_graph(n)
    if kind is FamilyKind.complete:
        return complete_graph(n)
    if kind is FamilyKind.star:
        return star_graph(n)
    if kind is FamilyKind.complete_minus_edge:
        edges = [(u, v) for v in range(n) for u in range(v) if (u, v) != (0, 1)]
        return graph_from_edges(n, edges)
    if kind is FamilyKind.complete_plus_pendant:
        edges = [(u, v) for v in range(2, n) for u in range(1, v)]
        return graph_from_edges(n, edges + [(0, 1)])
    if kind is FamilyKind.clique_k2:
        u, v = n - 2, n - 1
        edges = [(a, b) for b in range(n - 2) for a in range(b)]
        return graph_from_edges(n, edges + [(u, v), (0, u), (0, v)])
    if kind is FamilyKind.subdivided_star:
        t = spec.params[1]
        edges = []
        for i in range(1, t + 1):
            edges += [(0, i), (i, i + t)]
        edges += [(0, i) for i in range(2 * t + 1, n + t + 1)]
        return graph_from_edges(n + t + 1, edges)
    return gadget_catalog()[spec.params[0]]


# Edge lists of the small graphs of the energy table, 1-based as drawn.
_GADGET_EDGES: Dict[int, Tuple[int, List[Tuple[int, int]]]] = {
    1: (4, [(1, 2), (2, 3), (3, 1), (2, 4)]),
    2: (5, [(1, 2), (2, 3), (3, 1), (2, 4), (4, 5)]),
    3: (5, [(1, 2), (2, 3), (3, 5), (2, 4)]),
    4: (5, [(1, 2), (2, 3), (3, 1), (2, 4), (3, 5)]),
    5: (6, [(1, 2), (2, 3), (3, 1), (2, 4), (2, 5), (5, 4), (4, 6)]),
    6: (5, [(1, 2), (2, 3), (3, 4), (4, 1), (3, 5)]),
    7: (5, [(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (5, 2)]),
    8: (5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 5)]),
    9: (5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (3, 5)]),
    10: (5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (3, 5), (5, 2)]),
    11: (
        6,
        [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (5, 2), (2, 4), (2, 6), (6, 5)],
    ),
    12: (
        8,
        [
            (1, 2), (2, 3), (3, 1),
            (4, 5), (4, 1), (5, 1),
            (6, 7), (6, 2), (7, 2),
            (8, 3),
        ],
    ),
    # v, a, b, c, d1, d2
    13: (6, [(1, 2), (2, 4), (4, 1), (1, 3), (2, 5), (5, 6)]),
    14: (6, [(1, 2), (2, 4), (4, 1), (1, 3), (2, 5), (5, 6), (3, 4)]),
    # v, a, b, c, d1, d2, e
    15: (7, [(1, 2), (2, 3), (3, 1), (1, 4), (2, 5), (5, 6), (3, 7)]),
    16: (7, [(1, 2), (2, 4), (4, 1), (1, 3), (3, 4), (2, 5), (5, 6), (4, 7)]),
    # v, a, b, a1, a2, b1
    17: (6, [(1, 2), (2, 3), (3, 1), (4, 2), (2, 5), (3, 6)]),
}

_GADGET_ORDERS = {index: n for index, (n, _) in _GADGET_EDGES.items()}


def _from_drawing(n: int, edges: List[Tuple[int, int]]) -> Graph:
    return graph_from_edges(n, [(u - 1, v - 1) for u, v in edges])


def gadget_catalog() -> Dict[int, Graph]:
    """The seventeen gadgets ``H_1 .. H_17`` keyed by index."""
    return {
        index: _from_drawing(n, edges) for index, (n, edges) in _GADGET_EDGES.items()
    }


def table1_catalog() -> Dict[str, Graph]:
    """Every graph of the small-graph energy table, in table order."""
    catalog = {
        "P_3": path_graph(3),
        "P_4": path_graph(4),
        "P_5": path_graph(5),
        "K_{1,3}": star_graph(3),
        "C_4": cycle_graph(4),
        "C_5": cycle_graph(5),
    }
    for index, g in gadget_catalog().items():
        catalog[f"H_{index}"] = g
    return catalog


def graph6_encode(g: Graph) -> str:
    """
    Encode ``g`` in graph6.

    The first byte is ``n + 63``. The upper-triangle bits follow column by
    column (``j = 1..n-1``, ``i = 0..j-1``), zero padded to a multiple of six,
    each group of six written as ``value + 63``.
    """
    out = [chr(g.n + 63)]
    value = 0
    width = 0
    for j in range(1, g.n):
        for i in range(j):
            value = value << 1 | (g.rows[i] >> j & 1)
            width += 1
            if width == 6:
                out.append(chr(value + 63))
                value = width = 0
    if width:
        out.append(chr((value << (6 - width)) + 63))
    return "".join(out)


def graph6_decode(s: str) -> Graph:
    """
    Decode a graph6 string with ``1 <= n <= 62``.

    Raises
    ------
    Graph6Error
        On characters outside ``[63, 126]``, an order outside ``[1, 62]``, a
        length that does not match the order or nonzero padding bits.
    """
    if isinstance(s, bytes):
        s = s.decode("ascii")
    s = s.strip()
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) for c in s]
    for position, code in enumerate(codes):
        if not 63 <= code <= 126:
            raise Graph6Error(
                f"byte {code} at position {position} is outside [63, 126]"
            )
    n = codes[0] - 63
    if not 1 <= n <= MAX_ORDER:
        raise Graph6Error(f"order {n} is outside [1, {MAX_ORDER}]")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if len(codes) != 1 + nbytes:
        raise Graph6Error(
            f"order {n} needs {1 + nbytes} bytes, got {len(codes)}"
        )
    bits = 0
    for code in codes[1:]:
        bits = bits << 6 | (code - 63)
    padding = 6 * nbytes - nbits
    if bits & ((1 << padding) - 1):
        raise Graph6Error("nonzero padding bits")
    bits >>= padding
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))
