from __future__ import annotations

import random

import pytest

from jumped_wenger.errors import (
    InternalInconsistencyError,
    NotJumpedOriginError,
    PreconditionViolatedError,
)
from jumped_wenger.gf import make_field
from jumped_wenger.graph import Side, VertexId, custom_spec, jump_pairs
from jumped_wenger.metrics import distance_between, girth_exact
from jumped_wenger.witness import (
    GirthStatus,
    Walk,
    WalkKind,
    algebraic_girth,
    diameter_witness,
    eight_cycle,
    exact_diameter_family,
    four_cycle_search,
    path_between,
    path_between_lines,
    path_bound,
    predicted_diameter,
    predicted_girth,
    six_cycle_search,
    validate_walk,
    walk_to_json,
)


@pytest.mark.parametrize("q, m, i, j", [(2, 1, 1, 2), (3, 1, 2, 3), (5, 2, 1, 3), (4, 3, 2, 5), (9, 2, 3, 4)])
def test_eight_cycle(q, m, i, j, make_spec):
    spec = make_spec(q, m, i, j)
    walk = eight_cycle(spec)
    assert walk.kind is WalkKind.CYCLE
    assert walk.length == 8
    f = spec.field
    minus_one = f.neg(1)
    ones = [1] * m
    lines = [spec.coords(v.rank) for v in walk.vertices[:-1] if v.side is Side.LINE]
    points = [spec.coords(v.rank) for v in walk.vertices if v.side is Side.POINT]
    assert lines == [[0] * (m + 1), [1] + [0] * m, [f.add(1, 1)] + ones, [1] + ones]
    assert points == [[0] * (m + 1), [1] + ones, [0] + [minus_one] * m, [1] + [0] * m]


def test_four_cycle_search(make_spec):
    walk = four_cycle_search(make_spec(5, 1, 1, 3))
    assert walk is not None and walk.length == 4
    assert four_cycle_search(make_spec(5, 1, 1, 2)) is None


def test_six_cycle_search(make_spec):
    walk = six_cycle_search(make_spec(5, 1, 1, 2))
    assert walk is not None and walk.length == 6
    assert six_cycle_search(make_spec(2, 1, 1, 2)) is None


ORACLE_CELLS = [
    (q, m, i, j)
    for q in (2, 3, 4, 5, 7)
    for m in (1, 2, 3)
    for i, j in jump_pairs(m)
    if q ** (m + 1) <= 1000
]


@pytest.mark.parametrize("q, m, i, j", ORACLE_CELLS)
def test_algebraic_girth_matches_bfs(q, m, i, j, make_spec):
    spec = make_spec(q, m, i, j)
    assert algebraic_girth(spec) == girth_exact(spec)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_asserted_predictions_hold(q, m, make_spec):
    for i, j in jump_pairs(m):
        spec = make_spec(q, m, i, j)
        prediction = predicted_girth(spec)
        if prediction.status is GirthStatus.ASSERTED:
            assert algebraic_girth(spec) == prediction.value, (spec.label(), prediction.source)


@pytest.mark.parametrize(
    "q, m, i, j, predicted, actual",
    [
        (2, 1, 1, 2, 6, 8),
        (2, 1, 1, 3, 6, 8),
        (3, 1, 2, 3, 8, 6),
        (5, 3, 2, 3, 8, 6),
        (13, 3, 2, 3, 8, 6),
        (3, 3, 2, 4, 8, 6),
        (7, 3, 2, 4, 8, 6),
    ],
)
def test_inconsistent_girth_claims(q, m, i, j, predicted, actual, make_spec):
    spec = make_spec(q, m, i, j)
    prediction = predicted_girth(spec)
    assert prediction.status is GirthStatus.PAPER_INCONSISTENT
    assert prediction.value == predicted
    assert prediction.note
    assert algebraic_girth(spec) == actual


def test_flagged_high_m_cells(make_spec):
    assert predicted_girth(make_spec(4, 5, 1, 4)).status is GirthStatus.PAPER_INCONSISTENT
    assert predicted_girth(make_spec(4, 6, 2, 5)).status is GirthStatus.PAPER_INCONSISTENT
    assert predicted_girth(make_spec(4, 4, 1, 4)).status is GirthStatus.ASSERTED
    assert predicted_girth(make_spec(5, 5, 1, 4)).value == 8


def test_wenger_member_is_uncovered(make_spec):
    prediction = predicted_girth(make_spec(5, 2, 3, 4))
    assert prediction.status is GirthStatus.UNCOVERED
    assert prediction.value == 8


def test_predicted_girth_rejects_custom_specs():
    with pytest.raises(NotJumpedOriginError):
        predicted_girth(custom_spec(make_field(5), [0, 2, 3]))


def test_custom_spec_cycles():
    spec = custom_spec(make_field(5), [0, 2, 3])
    assert algebraic_girth(spec) == girth_exact(spec)


def test_predicted_diameter(make_spec):
    assert exact_diameter_family(make_spec(7, 2, 2, 4))
    assert predicted_diameter(make_spec(7, 2, 2, 4)) == 6
    assert predicted_diameter(make_spec(7, 2, 1, 2)) is None
    assert predicted_diameter(make_spec(3, 1, 2, 3)) is None


@pytest.mark.parametrize(
    "q, m, i, j", [(5, 1, 1, 3), (5, 1, 2, 3), (7, 2, 2, 4), (7, 2, 3, 4), (7, 2, 2, 3), (7, 3, 3, 5)]
)
def test_diameter_witness(q, m, i, j, make_spec):
    spec = make_spec(q, m, i, j)
    witness = diameter_witness(spec)
    assert witness is not None
    assert witness.distance == witness.predicted == 2 * (m + 1)
    assert witness.source.side is Side.LINE and witness.target.side is Side.LINE


@pytest.mark.parametrize("q, m, i, j", [(5, 1, 1, 2), (7, 2, 2, 4), (7, 2, 1, 3), (8, 2, 1, 2), (9, 1, 2, 3), (7, 3, 3, 5)])
def test_constructive_paths(q, m, i, j, make_spec):
    spec = make_spec(q, m, i, j)
    rng = random.Random(f"paths:{q}:{m}:{i}:{j}")
    for _ in range(40):
        u = spec.vertex_at(rng.randrange(spec.vertex_count))
        v = spec.vertex_at(rng.randrange(spec.vertex_count))
        walk = path_between(spec, u, v)
        assert walk.vertices[0] == u and walk.vertices[-1] == v
        assert walk.length <= path_bound(spec, u, v)
        assert walk.length >= distance_between(spec, u, v)
        assert (walk.length % 2 == 0) == (u.side is v.side)


def test_paths_need_m_below_q_minus_two(make_spec):
    spec = make_spec(3, 1, 1, 2)
    with pytest.raises(PreconditionViolatedError):
        path_between_lines(spec, spec.line([0, 0]), spec.line([0, 1]))


def test_validate_walk_rejects_broken_cycles(make_spec):
    spec = make_spec(5, 1, 2, 3)
    walk = eight_cycle(spec)
    broken = Walk(walk.vertices[:3] + walk.vertices[4:], WalkKind.CYCLE)
    with pytest.raises(InternalInconsistencyError):
        validate_walk(spec, broken)
    open_path = Walk(walk.vertices[:-1], WalkKind.CYCLE)
    with pytest.raises(InternalInconsistencyError):
        validate_walk(spec, open_path)
    with pytest.raises(InternalInconsistencyError):
        validate_walk(spec, Walk((VertexId(Side.POINT, 0), VertexId(Side.LINE, 5)), WalkKind.PATH))


def test_walk_to_json(make_spec):
    spec = make_spec(3, 1, 2, 3)
    payload = walk_to_json(spec, eight_cycle(spec))
    assert payload["kind"] == "cycle"
    assert payload["length"] == 8
    assert payload["vertices"][0] == {"side": "L", "rank": 0, "coords": [0, 0]}
    assert len(payload["vertices"]) == 9
