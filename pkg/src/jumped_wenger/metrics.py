"""Exact BFS invariants: distances, components, eccentricity, diameter, girth.

Many-source searches are bit-parallel: each vertex carries a row of uint64
words, one bit per source, and a BFS level is a gather of the neighbour rows
followed by an OR reduction.
"""

from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from jumped_wenger.graph import (
    GraphSpec,
    Side,
    VertexId,
    neighbor_array,
    neighbors,
)

logger = logging.getLogger(__name__)

INFINITE = math.inf
GATHER_BUDGET = 1 << 23  # uint64 words touched per gather, bounds the chunk width

Distance = Union[int, float]


@dataclass
class InvariantResult:
    """Structural invariants of one graph.

    ``diameter`` is ``math.inf`` for disconnected graphs and ``girth`` is None
    for acyclic ones.
    """

    components: int
    diameter: Optional[Distance]
    girth: Optional[int]
    regular_degree: Optional[int]
    elapsed_ms: int
    diameter_mode: str = "exact"
    component_diameters: List[int] = field(default_factory=list)


# -- single-source BFS -------------------------------------------------------


def distance_array(spec: GraphSpec, root: VertexId) -> np.ndarray:
    """Distances from root by global index; -1 marks unreachable vertices."""
    adj = neighbor_array(spec)
    dist = np.full(spec.vertex_count, -1, dtype=np.int32)
    start = spec.global_index(root)
    dist[start] = 0
    frontier = np.array([start], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        reached = np.unique(adj[frontier].ravel())
        reached = reached[dist[reached] < 0]
        dist[reached] = level
        frontier = reached
    return dist


def bfs_distances(spec: GraphSpec, root: VertexId) -> Dict[VertexId, int]:
    dist = distance_array(spec, root)
    return {spec.vertex_at(int(k)): int(d) for k, d in enumerate(dist) if d >= 0}


def distance_between(spec: GraphSpec, u: VertexId, v: VertexId) -> Distance:
    d = int(distance_array(spec, u)[spec.global_index(v)])
    return INFINITE if d < 0 else d


def line_difference_profile(spec: GraphSpec, delta: Sequence[int]) -> Distance:
    """Distance from the zero line to the line with coordinates delta."""
    zero = spec.line([0] * (spec.m + 1))
    return distance_between(spec, zero, spec.line(delta))


def component_labels(spec: GraphSpec) -> np.ndarray:
    """Component index per global vertex, numbered in order of smallest member."""
    labels = np.full(spec.vertex_count, -1, dtype=np.int32)
    adj = neighbor_array(spec)
    current = 0
    for start in range(spec.vertex_count):
        if labels[start] >= 0:
            continue
        labels[start] = current
        frontier = np.array([start], dtype=np.int64)
        while frontier.size:
            reached = np.unique(adj[frontier].ravel())
            reached = reached[labels[reached] < 0]
            labels[reached] = current
            frontier = reached
        current += 1
    return labels


def components(spec: GraphSpec) -> int:
    return int(component_labels(spec).max()) + 1


# -- bit-parallel many-source BFS ---------------------------------------------


def _chunk_width(spec: GraphSpec, sources: int) -> int:
    words = max(1, GATHER_BUDGET // (spec.vertex_count * spec.field.q))
    return min(words, math.ceil(sources / 64))


def _seed_bits(vertex_count: int, sources: np.ndarray, words: int) -> np.ndarray:
    bits = np.zeros((vertex_count, words), dtype=np.uint64)
    slots = np.arange(sources.size)
    np.bitwise_or.at(
        bits,
        (sources, slots // 64),
        np.left_shift(np.uint64(1), (slots % 64).astype(np.uint64)),
    )
    return bits


def _source_mask(bits: np.ndarray, count: int) -> np.ndarray:
    """Boolean per source: is its bit set in any vertex row."""
    column = np.bitwise_or.reduce(bits, axis=0).astype("<u8")
    return np.unpackbits(column.view(np.uint8), bitorder="little")[:count].astype(bool)


def _eccentricity_chunk(adj: np.ndarray, sources: np.ndarray) -> np.ndarray:
    words = math.ceil(sources.size / 64)
    visited = _seed_bits(adj.shape[0], sources, words)
    frontier = visited.copy()
    ecc = np.zeros(sources.size, dtype=np.int32)
    level = 0
    while True:
        reached = np.bitwise_or.reduce(frontier[adj], axis=1)
        reached &= ~visited
        alive = _source_mask(reached, sources.size)
        if not alive.any():
            return ecc
        level += 1
        ecc[alive] = level
        visited |= reached
        frontier = reached


def _chunks(spec: GraphSpec, sources: np.ndarray) -> List[np.ndarray]:
    width = 64 * _chunk_width(spec, sources.size)
    return [sources[k : k + width] for k in range(0, sources.size, width)]


def eccentricities(
    spec: GraphSpec, sources: Optional[Sequence[int]] = None, workers: int = 1
) -> np.ndarray:
    """Eccentricity within its component for each source (global indices)."""
    adj = neighbor_array(spec)
    if sources is None:
        sources = np.arange(spec.vertex_count, dtype=np.int64)
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size == 0:
        return np.zeros(0, dtype=np.int32)
    chunks = _chunks(spec, sources)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _eccentricity_chunk(adj, c), chunks))
    else:
        parts = [_eccentricity_chunk(adj, c) for c in chunks]
    return np.concatenate(parts)


def diameter_exact(spec: GraphSpec, workers: int = 1) -> Distance:
    """Max eccentricity over every vertex; infinite when disconnected."""
    if components(spec) > 1:
        return INFINITE
    return int(eccentricities(spec, workers=workers).max())


def component_diameters(spec: GraphSpec, workers: int = 1) -> List[int]:
    labels = component_labels(spec)
    ecc = eccentricities(spec, workers=workers)
    return [int(ecc[labels == c].max()) for c in range(int(labels.max()) + 1)]


def diameter_sampled(spec: GraphSpec, roots: int, seed: int = 0, workers: int = 1) -> int:
    """Lower bound on the diameter from BFS at ``roots`` random vertices."""
    rng = random.Random(seed)
    count = min(roots, spec.vertex_count)
    sources = sorted(rng.sample(range(spec.vertex_count), count))
    return int(eccentricities(spec, sources, workers=workers).max())


def _girth_chunk(adj: np.ndarray, sources: np.ndarray, max_level: int) -> Optional[int]:
    """First BFS level at which some vertex is reached twice, or None."""
    words = math.ceil(sources.size / 64)
    visited = _seed_bits(adj.shape[0], sources, words)
    frontier = visited.copy()
    for level in range(1, max_level + 1):
        acc = np.zeros_like(frontier)
        multi = np.zeros_like(frontier)
        for slot in range(adj.shape[1]):
            incoming = frontier[adj[:, slot]]
            multi |= acc & incoming
            acc |= incoming
        reached = acc & ~visited
        if (reached & multi).any():
            return level
        if not reached.any():
            return None
        visited |= reached
        frontier = reached
    return None


def girth_exact(spec: GraphSpec, workers: int = 1) -> Optional[int]:
    """Shortest cycle length from BFS at every point, stopping early at 4.

    A vertex reached along two different shortest paths at level d closes a
    cycle of length at most 2d, and a root on a shortest cycle sees its
    length exactly, so the minimum over point roots is the girth.
    """
    adj = neighbor_array(spec)
    points = np.arange(spec.side_size, dtype=np.int64)
    best: Optional[int] = None
    limit = spec.vertex_count
    chunks = _chunks(spec, points)

    def run(chunk: np.ndarray, cap: int) -> Optional[int]:
        return _girth_chunk(adj, chunk, cap)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            levels = list(pool.map(lambda c: run(c, limit), chunks))
        found = [lv for lv in levels if lv is not None]
        return 2 * min(found) if found else None
    for chunk in chunks:
        cap = limit if best is None else best // 2 - 1
        if cap < 2:
            break
        level = run(chunk, cap)
        if level is not None:
            best = 2 * level
            if best == 4:
                break
    return best


def check_regularity(spec: GraphSpec, sample: Optional[int] = None, seed: int = 0) -> Optional[int]:
    """Common degree if every checked vertex has q distinct opposite-side
    neighbours with symmetric incidence, otherwise None.

    With ``sample`` set, that many random vertices are checked through the
    scalar adjacency; otherwise the vectorised tables are checked exhaustively.
    """
    q = spec.field.q
    if sample is not None:
        rng = random.Random(seed)
        count = min(sample, spec.vertex_count)
        for index in rng.sample(range(spec.vertex_count), count):
            vertex = spec.vertex_at(index)
            nbrs = neighbors(spec, vertex)
            if len(set(nbrs)) != q or any(n.side is vertex.side for n in nbrs):
                logger.error("Vertex %s of %s breaks regularity", vertex, spec.label())
                return None
            if any(vertex not in neighbors(spec, n) for n in nbrs):
                logger.error("Incidence at %s of %s is not symmetric", vertex, spec.label())
                return None
        return q
    adj = neighbor_array(spec)
    ordered = np.sort(adj, axis=1)
    if (ordered[:, 1:] == ordered[:, :-1]).any():
        return None
    n = spec.side_size
    if (adj[:n] < n).any() or (adj[n:] >= n).any():
        return None
    own = np.arange(n, dtype=np.int64)[:, None]
    from_points = (own * n + (adj[:n] - n)).ravel()
    from_lines = (adj[n:] * n + own).ravel()
    if not np.array_equal(np.sort(from_points), np.sort(from_lines)):
        return None
    return q


def compute_invariants(
    spec: GraphSpec,
    max_vertices: int = 200_000,
    sample_diameter: bool = False,
    roots: int = 1000,
    seed: int = 0,
    workers: int = 1,
    regularity_sample: Optional[int] = None,
) -> InvariantResult:
    """Regularity, components, diameter and girth of one graph."""
    started = time.perf_counter()
    degree = check_regularity(spec, regularity_sample, seed)
    labels = component_labels(spec)
    count = int(labels.max()) + 1
    mode = "exact"
    per_component: List[int] = []
    if sample_diameter or spec.vertex_count > max_vertices:
        mode = "sampled"
        diameter: Optional[Distance] = (
            INFINITE if count > 1 else diameter_sampled(spec, roots, seed, workers)
        )
    else:
        ecc = eccentricities(spec, workers=workers)
        per_component = [int(ecc[labels == c].max()) for c in range(count)]
        diameter = INFINITE if count > 1 else per_component[0]
    girth = girth_exact(spec, workers=workers)
    elapsed = int((time.perf_counter() - started) * 1000)
    logger.debug(
        "%s: components=%d diameter=%s girth=%s (%d ms)", spec.label(), count, diameter, girth, elapsed
    )
    return InvariantResult(
        components=count,
        diameter=diameter,
        girth=girth,
        regular_degree=degree,
        elapsed_ms=elapsed,
        diameter_mode=mode,
        component_diameters=per_component,
    )


__all__ = [
    "INFINITE",
    "InvariantResult",
    "distance_array",
    "bfs_distances",
    "distance_between",
    "line_difference_profile",
    "component_labels",
    "components",
    "eccentricities",
    "diameter_exact",
    "component_diameters",
    "diameter_sampled",
    "girth_exact",
    "check_regularity",
    "compute_invariants",
]
