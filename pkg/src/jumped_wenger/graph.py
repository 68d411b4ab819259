"""Jumped Wenger graphs J_m(q,i,j) with implicit adjacency.

A point (p_1, ..., p_{m+1}) and a line [l_1, ..., l_{m+1}] are adjacent when
``l_k + p_k = l_1 * p_1 ** e_k`` for k = 2..m+1, where e_1 < ... < e_{m+1} is
the exponent list of the spec (e_1 = 0).  The jumped family uses the exponents
{0, ..., m+2} minus {i, j}.

Vertex ranks are base-q numbers whose least significant digit is the first
coordinate.  The global index used by the numpy engine is the rank for
points and q^(m+1) + rank for lines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from jumped_wenger.errors import (
    BadJumpIndicesError,
    SameSideError,
    WrongSideError,
)
from jumped_wenger.gf import FieldSpec

logger = logging.getLogger(__name__)

EDGE_FORMATS = ("edgelist", "dimacs", "ntriples")


class Side(str, Enum):
    POINT = "P"
    LINE = "L"

    @property
    def other(self) -> "Side":
        return Side.LINE if self is Side.POINT else Side.POINT


@dataclass(frozen=True, order=True)
class VertexId:
    side: Side
    rank: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.rank}"


@dataclass(frozen=True)
class GraphSpec:
    """One graph of the family: a field, m and the exponent list.

    ``i`` and ``j`` are set for the jumped origin and left as None for custom
    exponent lists.
    """

    field: FieldSpec
    m: int
    exponents: Tuple[int, ...]
    i: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self) -> None:
        exponents = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exponents)
        if self.m < 1:
            raise BadJumpIndicesError(f"m must be positive, got {self.m}")
        if len(exponents) != self.m + 1 or exponents[0] != 0:
            raise BadJumpIndicesError(
                f"need m+1={self.m + 1} exponents starting at 0, got {list(exponents)}"
            )
        if any(b <= a for a, b in zip(exponents, exponents[1:])):
            raise BadJumpIndicesError(f"exponents must increase strictly: {list(exponents)}")
        if (self.i is None) != (self.j is None):
            raise BadJumpIndicesError("jump indices must be given together")
        if self.i is not None:
            if not 1 <= self.i < self.j <= self.m + 2:
                raise BadJumpIndicesError(
                    f"need 1 <= i < j <= m+2, got m={self.m}, i={self.i}, j={self.j}"
                )
            if exponents != _jumped_exponents(self.m, self.i, self.j):
                raise BadJumpIndicesError("exponents do not match the jump indices")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_jumped(self) -> bool:
        return self.i is not None

    @property
    def side_size(self) -> int:
        """q^(m+1), the number of vertices on each side."""
        return self.field.q ** (self.m + 1)

    @property
    def vertex_count(self) -> int:
        return 2 * self.side_size

    def label(self) -> str:
        if self.is_jumped:
            return f"J_{self.m}({self.field.describe()},{self.i},{self.j})"
        return f"J_{self.m}({self.field.describe()};{','.join(map(str, self.exponents))})"

    # -- coordinates ---------------------------------------------------------

    def coords(self, rank: int) -> List[int]:
        if not 0 <= rank < self.side_size:
            raise ValueError(f"rank {rank} outside [0, {self.side_size})")
        q = self.field.q
        out = []
        for _ in range(self.m + 1):
            out.append(rank % q)
            rank //= q
        return out

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} coordinates, got {len(coords)}")
        rank = 0
        for c in reversed(coords):
            rank = rank * self.field.q + c
        return rank

    def point(self, coords: Sequence[int]) -> VertexId:
        return VertexId(Side.POINT, self.encode(coords))

    def line(self, coords: Sequence[int]) -> VertexId:
        return VertexId(Side.LINE, self.encode(coords))

    def global_index(self, vertex: VertexId) -> int:
        return vertex.rank if vertex.side is Side.POINT else self.side_size + vertex.rank

    def vertex_at(self, index: int) -> VertexId:
        if index < self.side_size:
            return VertexId(Side.POINT, int(index))
        return VertexId(Side.LINE, int(index) - self.side_size)

    def column(self, x: int) -> List[int]:
        """(x^e_1, ..., x^e_{m+1}), the direction of the line step through first coordinate x."""
        return [self.field.pow(x, e) for e in self.exponents]

    @cached_property
    def power_table(self) -> np.ndarray:
        """(q, m+1) array with entry [x, k] = x ** exponents[k]."""
        return np.stack([self.field.power_column(e) for e in self.exponents], axis=1)


def _jumped_exponents(m: int, i: int, j: int) -> Tuple[int, ...]:
    return tuple(e for e in range(m + 3) if e not in (i, j))


def jumped_spec(field_spec: FieldSpec, m: int, i: int, j: int) -> GraphSpec:
    if m < 1 or not 1 <= i < j <= m + 2:
        raise BadJumpIndicesError(f"need m >= 1 and 1 <= i < j <= m+2, got m={m}, i={i}, j={j}")
    return GraphSpec(field_spec, m, _jumped_exponents(m, i, j), i, j)


def custom_spec(field_spec: FieldSpec, exponents: Sequence[int]) -> GraphSpec:
    """Spec with an arbitrary exponent list (first exponent 0)."""
    exponents = tuple(exponents)
    if len(exponents) < 2:
        raise BadJumpIndicesError("a custom spec needs at least two exponents")
    return GraphSpec(field_spec, len(exponents) - 1, exponents)


def jump_pairs(m: int) -> Iterator[Tuple[int, int]]:
    """All (i, j) with 1 <= i < j <= m+2 in ascending order."""
    for i in range(1, m + 3):
        for j in range(i + 1, m + 3):
            yield i, j


# -- scalar adjacency --------------------------------------------------------


def _require(vertex: VertexId, side: Side) -> None:
    if vertex.side is not side:
        raise WrongSideError(f"expected a {side.name.lower()}, got {vertex}")


def line_neighbor_with_first(spec: GraphSpec, point: VertexId, l1: int) -> VertexId:
    """The unique line through ``point`` whose first coordinate is l1."""
    _require(point, Side.POINT)
    f = spec.field
    p = spec.coords(point.rank)
    coords = [l1] + [
        f.sub(f.mul(l1, f.pow(p[0], e)), p[k]) for k, e in enumerate(spec.exponents) if k
    ]
    return spec.line(coords)


def point_on_line(spec: GraphSpec, line: VertexId, p1: int) -> VertexId:
    """The unique point of ``line`` whose first coordinate is p1."""
    _require(line, Side.LINE)
    f = spec.field
    l = spec.coords(line.rank)
    coords = [p1] + [
        f.sub(f.mul(l[0], f.pow(p1, e)), l[k]) for k, e in enumerate(spec.exponents) if k
    ]
    return spec.point(coords)


def point_neighbors(spec: GraphSpec, point: VertexId) -> List[VertexId]:
    _require(point, Side.POINT)
    return [line_neighbor_with_first(spec, point, l1) for l1 in spec.field.elements()]


def line_neighbors(spec: GraphSpec, line: VertexId) -> List[VertexId]:
    _require(line, Side.LINE)
    return [point_on_line(spec, line, p1) for p1 in spec.field.elements()]


def neighbors(spec: GraphSpec, vertex: VertexId) -> List[VertexId]:
    if vertex.side is Side.POINT:
        return point_neighbors(spec, vertex)
    return line_neighbors(spec, vertex)


def is_edge(spec: GraphSpec, u: VertexId, v: VertexId) -> bool:
    if u.side is v.side:
        raise SameSideError(f"{u} and {v} lie on the same side")
    point, line = (u, v) if u.side is Side.POINT else (v, u)
    f = spec.field
    p = spec.coords(point.rank)
    l = spec.coords(line.rank)
    return all(
        f.add(l[k], p[k]) == f.mul(l[0], f.pow(p[0], e))
        for k, e in enumerate(spec.exponents)
        if k
    )


def counts(spec: GraphSpec) -> Tuple[int, int]:
    """(vertices, edges) = (2 q^(m+1), q^(m+2))."""
    return spec.vertex_count, spec.side_size * spec.field.q


# -- vectorised adjacency ----------------------------------------------------


def _coordinate_array(spec: GraphSpec) -> np.ndarray:
    ranks = np.arange(spec.side_size, dtype=np.int64)
    powers = spec.field.q ** np.arange(spec.m + 1, dtype=np.int64)
    return (ranks[:, None] // powers[None, :]) % spec.field.q


def _ranks_of(spec: GraphSpec, coords: np.ndarray) -> np.ndarray:
    powers = spec.field.q ** np.arange(spec.m + 1, dtype=np.int64)
    return coords @ powers


@lru_cache(maxsize=8)
def adjacency_arrays(spec: GraphSpec) -> Tuple[np.ndarray, np.ndarray]:
    """(point_to_line, line_to_point) rank arrays of shape (q^(m+1), q).

    Column c holds the neighbour whose free first coordinate has rank c.
    """
    f = spec.field
    q = f.q
    coords = _coordinate_array(spec)
    powers = spec.power_table
    mul = f.mul_table
    add = f.add_table
    neg = f.neg_table
    free = np.arange(q, dtype=np.int64)

    # point side: l_k = l_1 * p_1^e_k - p_k
    scaled = mul[free[None, :, None], powers[coords[:, 0]][:, None, :]]
    line_coords = add[scaled, neg[coords][:, None, :]]
    line_coords[:, :, 0] = free[None, :]
    point_to_line = _ranks_of(spec, line_coords)

    # line side: p_k = l_1 * p_1^e_k - l_k
    scaled = mul[coords[:, 0][:, None, None], powers[free][None, :, :]]
    point_coords = add[scaled, neg[coords][:, None, :]]
    point_coords[:, :, 0] = free[None, :]
    line_to_point = _ranks_of(spec, point_coords)

    logger.debug("Built adjacency arrays for %s (%d vertices)", spec.label(), spec.vertex_count)
    return point_to_line, line_to_point


def neighbor_array(spec: GraphSpec) -> np.ndarray:
    """(2 q^(m+1), q) array of global neighbour indices."""
    point_to_line, line_to_point = adjacency_arrays(spec)
    return np.concatenate([point_to_line + spec.side_size, line_to_point])


def iter_edges(spec: GraphSpec) -> Iterator[Tuple[int, int]]:
    """(point rank, line rank) pairs sorted by point rank then line rank."""
    point_to_line, _ = adjacency_arrays(spec)
    ordered = np.sort(point_to_line, axis=1)
    for rank, row in enumerate(ordered):
        for line_rank in row:
            yield rank, int(line_rank)


# -- export ------------------------------------------------------------------


def edgelist_header(spec: GraphSpec) -> str:
    f = spec.field
    poly = "[" + ",".join(str(c) for c in f.modulus) + "]"
    i = spec.i if spec.is_jumped else "-"
    j = spec.j if spec.is_jumped else "-"
    return f"# jwg q={f.q} p={f.p} e={f.e} poly={poly} m={spec.m} i={i} j={j}"


def write_edges(spec: GraphSpec, handle: TextIO, fmt: str = "edgelist") -> int:
    """Write the edge records to an open text handle; returns the edge count."""
    if fmt not in EDGE_FORMATS:
        raise ValueError(f"unknown edge format {fmt!r}; expected one of {EDGE_FORMATS}")
    if fmt == "ntriples":
        from jumped_wenger.rdf_export import graph_to_ntriples

        payload, written = graph_to_ntriples(spec)
        handle.write(payload)
        return written
    vertices, edges = counts(spec)
    if fmt == "edgelist":
        handle.write(edgelist_header(spec) + "\n")
        for point_rank, line_rank in iter_edges(spec):
            handle.write(f"P {point_rank} L {line_rank}\n")
    else:
        offset = spec.side_size
        handle.write(f"c {edgelist_header(spec)[2:]}\n")
        handle.write(f"p edge {vertices} {edges}\n")
        for point_rank, line_rank in iter_edges(spec):
            handle.write(f"e {point_rank + 1} {offset + line_rank + 1}\n")
    return edges


def export_edgelist(spec: GraphSpec, destination: Union[str, Path], fmt: str = "edgelist") -> int:
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        written = write_edges(spec, handle, fmt)
    logger.info("Wrote %d edges of %s to %s (%s)", written, spec.label(), path, fmt)
    return written


def read_edgelist(source: Union[str, Path]) -> List[Tuple[int, int]]:
    """Parse the "P <rank> L <rank>" records of an edge-list file."""
    edges = []
    for raw in Path(source).read_text(encoding="utf-8").splitlines():
        if not raw or raw.startswith("#"):
            continue
        tag_p, point_rank, tag_l, line_rank = raw.split()
        if tag_p != "P" or tag_l != "L":
            raise ValueError(f"malformed edge record {raw!r}")
        edges.append((int(point_rank), int(line_rank)))
    return edges


__all__ = [
    "Side",
    "VertexId",
    "GraphSpec",
    "jumped_spec",
    "custom_spec",
    "jump_pairs",
    "point_neighbors",
    "line_neighbors",
    "neighbors",
    "line_neighbor_with_first",
    "point_on_line",
    "is_edge",
    "counts",
    "adjacency_arrays",
    "neighbor_array",
    "iter_edges",
    "edgelist_header",
    "write_edges",
    "export_edgelist",
    "read_edgelist",
]
