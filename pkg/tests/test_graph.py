from __future__ import annotations

import io

import pytest

from jumped_wenger.errors import BadJumpIndicesError, SameSideError, WrongSideError
from jumped_wenger.gf import field_of_order, make_field
from jumped_wenger.graph import (
    Side,
    VertexId,
    adjacency_arrays,
    counts,
    custom_spec,
    export_edgelist,
    is_edge,
    iter_edges,
    jump_pairs,
    jumped_spec,
    line_neighbor_with_first,
    line_neighbors,
    neighbor_array,
    point_neighbors,
    point_on_line,
    read_edgelist,
    write_edges,
)


def test_jumped_exponents(make_spec):
    assert make_spec(5, 1, 1, 2).exponents == (0, 3)
    assert make_spec(5, 1, 1, 3).exponents == (0, 2)
    assert make_spec(5, 2, 3, 4).exponents == (0, 1, 2)
    assert make_spec(5, 3, 2, 5).exponents == (0, 1, 3, 4)


def test_jump_pairs():
    assert list(jump_pairs(1)) == [(1, 2), (1, 3), (2, 3)]
    assert len(list(jump_pairs(3))) == 10


@pytest.mark.parametrize("m, i, j", [(1, 2, 2), (1, 1, 4), (2, 0, 1), (0, 1, 2), (2, 3, 1)])
def test_bad_jump_indices(m, i, j):
    with pytest.raises(BadJumpIndicesError):
        jumped_spec(make_field(5), m, i, j)


def test_custom_spec_validation():
    f = make_field(5)
    spec = custom_spec(f, [0, 2, 3])
    assert spec.m == 2
    assert not spec.is_jumped
    assert spec.label() == "J_2(5;0,2,3)"
    with pytest.raises(BadJumpIndicesError):
        custom_spec(f, [1, 2])
    with pytest.raises(BadJumpIndicesError):
        custom_spec(f, [0, 3, 3])
    with pytest.raises(BadJumpIndicesError):
        custom_spec(f, [0])


def test_counts(make_spec):
    assert counts(make_spec(3, 2, 1, 2)) == (54, 81)
    assert counts(make_spec(2, 1, 1, 2)) == (8, 8)


def test_coordinates_roundtrip(make_spec):
    spec = make_spec(3, 1, 1, 2)
    assert spec.encode([1, 2]) == 7
    assert spec.coords(7) == [1, 2]
    with pytest.raises(ValueError):
        spec.coords(9)


def test_point_neighbors_example(make_spec):
    spec = make_spec(3, 1, 1, 3)
    lines = point_neighbors(spec, spec.point([1, 1]))
    assert [spec.coords(line.rank) for line in lines] == [[0, 2], [1, 0], [2, 1]]


def test_unique_neighbour_with_first_coordinate(make_spec):
    spec = make_spec(5, 2, 1, 4)
    point = spec.point([2, 3, 4])
    line = line_neighbor_with_first(spec, point, 3)
    assert spec.coords(line.rank)[0] == 3
    assert is_edge(spec, point, line)
    assert point_on_line(spec, line, 2) == point


def test_is_edge_is_symmetric_and_side_checked(make_spec):
    spec = make_spec(4, 1, 2, 3)
    point = spec.point([1, 2])
    for line in point_neighbors(spec, point):
        assert is_edge(spec, point, line)
        assert is_edge(spec, line, point)
        assert point in line_neighbors(spec, line)
    with pytest.raises(SameSideError):
        is_edge(spec, point, spec.point([0, 0]))
    with pytest.raises(WrongSideError):
        point_neighbors(spec, VertexId(Side.LINE, 0))
    with pytest.raises(WrongSideError):
        line_neighbors(spec, VertexId(Side.POINT, 0))


@pytest.mark.parametrize("q, m, i, j", [(4, 2, 1, 3), (9, 1, 2, 3), (5, 2, 2, 4), (8, 1, 1, 2)])
def test_adjacency_arrays_match_scalar_adjacency(q, m, i, j, make_spec):
    spec = make_spec(q, m, i, j)
    point_to_line, line_to_point = adjacency_arrays(spec)
    for rank in range(spec.side_size):
        point = VertexId(Side.POINT, rank)
        line = VertexId(Side.LINE, rank)
        assert [int(r) for r in point_to_line[rank]] == [n.rank for n in point_neighbors(spec, point)]
        assert [int(r) for r in line_to_point[rank]] == [n.rank for n in line_neighbors(spec, line)]


def test_neighbor_array_uses_global_indices(make_spec):
    spec = make_spec(3, 1, 1, 2)
    adj = neighbor_array(spec)
    assert adj.shape == (spec.vertex_count, 3)
    assert (adj[: spec.side_size] >= spec.side_size).all()
    assert (adj[spec.side_size :] < spec.side_size).all()


def test_custom_spec_adjacency():
    spec = custom_spec(field_of_order(5), [0, 2, 3])
    point = spec.point([1, 2, 3])
    for line in point_neighbors(spec, point):
        assert is_edge(spec, line, point)


def test_golden_edgelist(make_spec, data_dir):
    spec = make_spec(2, 1, 1, 2)
    buffer = io.StringIO()
    assert write_edges(spec, buffer) == 8
    assert buffer.getvalue() == (data_dir / "j1_2_1_2.edgelist").read_text(encoding="utf-8")


def test_iter_edges_sorted(make_spec):
    spec = make_spec(3, 2, 1, 3)
    edges = list(iter_edges(spec))
    assert len(edges) == counts(spec)[1]
    assert edges == sorted(edges)


def test_dimacs_export(make_spec):
    spec = make_spec(2, 1, 1, 2)
    buffer = io.StringIO()
    write_edges(spec, buffer, "dimacs")
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "c jwg q=2 p=2 e=1 poly=[0,1] m=1 i=1 j=2"
    assert lines[1] == "p edge 8 8"
    assert lines[2] == "e 1 5"
    assert len(lines) == 10


def test_export_and_read_edgelist(make_spec, tmp_path):
    spec = make_spec(4, 1, 1, 3)
    path = tmp_path / "out" / "j1_4_1_3.edgelist"
    assert export_edgelist(spec, path) == 64
    assert read_edgelist(path) == list(iter_edges(spec))
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == "# jwg q=4 p=2 e=2 poly=[1,1,1] m=1 i=1 j=3"


def test_unknown_edge_format(make_spec):
    with pytest.raises(ValueError):
        write_edges(make_spec(2, 1, 1, 2), io.StringIO(), "graphml")
