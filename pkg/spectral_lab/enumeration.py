"""
Isomorph-free generation of graphs by canonical augmentation.

Graphs grow one vertex at a time from ``K_1``. A child is kept only when its
new vertex lies in the automorphism orbit of the child's canonically last
vertex, so each isomorphism class has exactly one accepted parent. Children
of one parent that are isomorphic to each other are dropped by canonical form.
"""

import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from spectral_lab import SpectralLabValueError

from .graphs import (
    Graph,
    add_vertex,
    graph6_decode,
    graph6_encode,
    graph_from_edges,
    is_connected,
    relabel,
)

SOFT_MAX_ORDER = 10
BRUTE_FORCE_MAX_ORDER = 7

Consumer = Callable[[Graph], None]
Cells = List[List[int]]


@dataclass(frozen=True)
class CanonicalGraph:
    graph: Graph
    canon: str


@dataclass(frozen=True)
class CanonicalLabeling:
    """
    ``order[i]`` is the vertex placed at canonical position ``i``.

    ``last_orbit`` is the automorphism orbit of ``order[-1]`` as a bit mask.
    """

    order: Tuple[int, ...]
    canon: str
    orbits: Tuple[Tuple[int, ...], ...]
    last_orbit: int


@dataclass(frozen=True)
class EnumShard:
    """
    The subtree of the generation tree under one graph of order ``depth``.

    ``prefix`` is that graph's canonical graph6 string.
    """

    n: int
    depth: int
    prefix: str

    @property
    def shard_id(self) -> str:
        return f"{self.n}:{self.prefix}"


def _popcount(bits: int) -> int:
    return bin(bits).count("1")


def _refine(g: Graph, cells: Cells) -> Cells:
    """
    Split cells by neighbour counts into every cell until nothing changes.

    Sub-cells keep the position of the cell they came from and are ordered by
    their count signature, so the result depends only on the isomorphism type
    of ``(g, cells)``.
    """
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        refined: Cells = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                key = tuple(_popcount(g.rows[v] & mask) for mask in masks)
                groups.setdefault(key, []).append(v)
            refined.extend(groups[key] for key in sorted(groups))
        if len(refined) == len(cells):
            return refined
        cells = refined


def _twins(g: Graph, u: int, v: int) -> bool:
    return g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u)


def _twin_representatives(g: Graph, cell: Sequence[int]) -> List[int]:
    # Swapping two twins is an automorphism, so one branch per class suffices.
    reps: List[int] = []
    for v in cell:
        if not any(_twins(g, v, r) for r in reps):
            reps.append(v)
    return reps


def _certificate(g: Graph, order: Sequence[int]) -> int:
    value = 0
    for j in range(1, g.n):
        row = g.rows[order[j]]
        for i in range(j):
            value = value << 1 | (row >> order[i] & 1)
    return value


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru != rv:
            self.parent[max(ru, rv)] = min(ru, rv)


def canonical_labeling(g: Graph) -> CanonicalLabeling:
    """
    Canonical vertex order of ``g`` by refinement and individualization.

    Every leaf of the search tree is scored by its upper-triangle bits and the
    largest score wins. Two leaves with equal scores give an automorphism;
    those automorphisms and the twin swaps used for pruning generate the
    automorphism group, from which the vertex orbits are read.

    Since the starting partition orders vertices by degree, the canonically
    last vertex always has maximum degree.
    """
    n = g.n
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    first_leaf: Dict[int, Tuple[int, ...]] = {}
    orbits = _UnionFind(n)

    stack = [_refine(g, [list(range(n))])]
    while stack:
        cells = stack.pop()
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            order = tuple(cell[0] for cell in cells)
            cert = _certificate(g, order)
            seen = first_leaf.setdefault(cert, order)
            if seen is not order:
                for a, b in zip(seen, order):
                    orbits.union(a, b)
            if best is None or cert > best[0]:
                best = (cert, order)
            continue
        cell = cells[target]
        reps = _twin_representatives(g, cell)
        for v in cell:
            for r in reps:
                if v != r and _twins(g, v, r):
                    orbits.union(v, r)
                    break
        # reversed so that the first representative is explored first
        for v in reversed(reps):
            rest = [u for u in cell if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            stack.append(_refine(g, split))

    assert best is not None
    order = best[1]
    groups: Dict[int, List[int]] = {}
    for v in range(n):
        groups.setdefault(orbits.find(v), []).append(v)
    last = orbits.find(order[-1])
    return CanonicalLabeling(
        order=order,
        canon=graph6_encode(relabel(g, order)),
        orbits=tuple(tuple(members) for members in sorted(groups.values())),
        last_orbit=sum(1 << v for v in groups[last]),
    )


def canonical_form(g: Graph) -> str:
    """graph6 of ``g`` in canonical labeling; equal iff isomorphic."""
    return canonical_labeling(g).canon


def automorphism_orbits(g: Graph) -> Tuple[Tuple[int, ...], ...]:
    return canonical_labeling(g).orbits


def _children(parent: Graph, connected: bool) -> Iterator[Graph]:
    k = parent.n
    degrees = parent.degrees()
    seen = set()
    for mask in range(1 << k):
        degree = _popcount(mask)
        # the canonically last vertex has maximum degree
        if any(d + (mask >> v & 1) > degree for v, d in enumerate(degrees)):
            continue
        child = add_vertex(parent, mask)
        if connected and not is_connected(child):
            continue
        labeling = canonical_labeling(child)
        if not labeling.last_orbit >> k & 1:
            continue
        if labeling.canon in seen:
            continue
        seen.add(labeling.canon)
        yield relabel(child, labeling.order)


_ROOT = graph_from_edges(1, [])


def _grow(g: Graph, n: int, consumer: Consumer, connected_only: bool) -> int:
    if g.n == n:
        if connected_only and not is_connected(g):
            return 0
        consumer(g)
        return 1
    last_level = g.n + 1 == n
    return sum(
        _grow(child, n, consumer, connected_only)
        for child in _children(g, connected=connected_only and last_level)
    )


def _check_order(n: int) -> None:
    if n < 1:
        raise SpectralLabValueError(f"order must be >= 1, got {n}")
    if n > SOFT_MAX_ORDER:
        warnings.warn(
            f"enumerating order {n} is beyond the supported range "
            f"(<= {SOFT_MAX_ORDER}) and may take a very long time",
            stacklevel=3,
        )


def enumerate_graphs(
    n: int, consumer: Consumer, connected_only: bool = False
) -> int:
    """
    Call ``consumer`` once per isomorphism class of graphs on ``n`` vertices.

    Emitted graphs are in canonical labeling, so ``graph6_encode`` of an
    emitted graph equals its ``canonical_form``. Returns the class count.
    """
    _check_order(n)
    return _grow(_ROOT, n, consumer, connected_only)


def enumerate_connected(n: int, consumer: Consumer) -> int:
    """
    Call ``consumer`` once per isomorphism class of connected graphs on ``n``
    vertices and return the class count.

    Orders above 10 are allowed but warn.
    """
    _check_order(n)
    return _grow(_ROOT, n, consumer, connected_only=True)


def brute_force_connected(n: int) -> List[CanonicalGraph]:
    """
    Every connected class on ``n <= 7`` vertices by trying all labeled graphs.

    Slow on purpose: it is the oracle the generator is checked against.
    """
    if not 1 <= n <= BRUTE_FORCE_MAX_ORDER:
        raise SpectralLabValueError(
            f"brute force is limited to 1 <= n <= {BRUTE_FORCE_MAX_ORDER}, got {n}"
        )
    pairs = list(itertools.combinations(range(n), 2))
    classes: Dict[str, Graph] = {}
    for bits in range(1 << len(pairs)):
        g = graph_from_edges(n, [pair for k, pair in enumerate(pairs) if bits >> k & 1])
        if not is_connected(g):
            continue
        canon = canonical_form(g)
        if canon not in classes:
            classes[canon] = graph6_decode(canon)
    return [
        CanonicalGraph(graph=g, canon=canon) for canon, g in sorted(classes.items())
    ]


def shard_enumeration(n: int, depth: int) -> List[EnumShard]:
    """
    Split the generation of order-``n`` graphs into one shard per class of
    order ``depth``.
    """
    if not 1 <= depth < n:
        raise SpectralLabValueError(f"need 1 <= depth < n, got depth={depth}, n={n}")
    prefixes: List[str] = []
    enumerate_graphs(depth, lambda g: prefixes.append(graph6_encode(g)))
    return [EnumShard(n=n, depth=depth, prefix=prefix) for prefix in prefixes]


def enumerate_shard(
    shard: EnumShard, consumer: Consumer, connected_only: bool = True
) -> int:
    """Run the generator below ``shard.prefix`` only."""
    _check_order(shard.n)
    return _grow(graph6_decode(shard.prefix), shard.n, consumer, connected_only)
