from __future__ import annotations

from pathlib import Path
from typing import Callable

import pytest

from jumped_wenger.gf import FieldSpec, field_of_order, make_field
from jumped_wenger.graph import GraphSpec, jumped_spec

SpecFactory = Callable[[int, int, int, int], GraphSpec]


@pytest.fixture(autouse=True)
def _no_config_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("JWG_CONFIG_PATH", raising=False)


@pytest.fixture
def data_dir() -> Path:
    return Path(__file__).parent / "data"


@pytest.fixture
def repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


@pytest.fixture
def gf7() -> FieldSpec:
    return make_field(7)


@pytest.fixture
def gf9() -> FieldSpec:
    return make_field(3, 2)


@pytest.fixture
def gf4() -> FieldSpec:
    return make_field(2, 2)


@pytest.fixture
def make_spec() -> SpecFactory:
    """J_m(q, i, j) over the default field of order q."""

    def build(q: int, m: int, i: int, j: int) -> GraphSpec:
        return jumped_spec(field_of_order(q), m, i, j)

    return build
