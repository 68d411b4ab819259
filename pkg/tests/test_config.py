from __future__ import annotations

import pytest

from jumped_wenger.config import (
    CONFIG_ENV_VAR,
    coerce_fields,
    coerce_ij,
    coerce_m_values,
    grid_from_mapping,
    load_grid_yaml,
    load_limits,
)
from jumped_wenger.errors import ConfigError
from jumped_wenger.models import Limits


def test_defaults_without_config():
    limits = load_limits()
    assert limits.max_vertices == 200_000
    assert limits.max_roots == 1000
    assert limits.path_samples == 100
    assert limits.seed == 0
    assert limits.workers >= 1


def test_limits_from_env_file(tmp_path, monkeypatch):
    path = tmp_path / "limits.yaml"
    path.write_text("limits:\n  max_vertices: 5000\n  seed: 9\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    limits = load_limits()
    assert limits.max_vertices == 5000
    assert limits.seed == 9
    assert limits.path_samples == 100


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_limits(tmp_path / "absent.yaml")


@pytest.mark.parametrize(
    "text",
    [
        "limits:\n  bogus: 1\n",
        "limits:\n  seed: many\n",
        "limits:\n  workers: 0\n",
        "limits:\n  sample_diameter: \"false\"\n",
        "limits:\n  sample_diameter: 1\n",
        "- 1\n- 2\n",
        "limits: [1\n",
    ],
)
def test_invalid_limits(tmp_path, text):
    path = tmp_path / "limits.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_limits(path)


def test_overrides_ignore_none():
    limits = Limits(workers=1).with_overrides(seed=None, path_samples=5)
    assert limits.seed == 0
    assert limits.path_samples == 5


def test_coerce_fields():
    assert [f.q for f in coerce_fields([9, "5", 2])] == [2, 5, 9]
    assert [f.q for f in coerce_fields("4, 3^2/[2,1,1]")] == [4, 9]
    assert [f.q for f in coerce_fields(7)] == [7]
    with pytest.raises(ConfigError):
        coerce_fields([10])
    with pytest.raises(ConfigError):
        coerce_fields({"q": 5})


def test_coerce_m_values():
    assert coerce_m_values(2) == (2,)
    assert coerce_m_values("1..3") == (1, 2, 3)
    assert coerce_m_values([3, 1, 3]) == (1, 3)
    assert coerce_m_values({"min": 2, "max": 4}) == (2, 3, 4)
    assert coerce_m_values("1,2") == (1, 2)
    with pytest.raises(ConfigError):
        coerce_m_values(0)
    with pytest.raises(ConfigError):
        coerce_m_values(True)


def test_coerce_ij():
    assert coerce_ij("all") is None
    assert coerce_ij(None) is None
    assert coerce_ij(["2-3", [1, 2]]) == ((1, 2), (2, 3))
    assert coerce_ij("1:3") == ((1, 3),)
    with pytest.raises(ConfigError):
        coerce_ij(["3-3"])
    with pytest.raises(ConfigError):
        coerce_ij([[1, 2, 3]])


def test_grid_from_mapping_requires_q_and_m():
    with pytest.raises(ConfigError, match="'q'"):
        grid_from_mapping({"m": 1}, Limits())
    with pytest.raises(ConfigError, match="Unknown"):
        grid_from_mapping({"q": 5, "m": 1, "extra": True}, Limits())


def test_default_grid_file(repo_root):
    grid = load_grid_yaml(repo_root / "configs" / "grid.default.yaml", Limits(workers=1))
    assert [f.q for f in grid.fields] == [2, 3, 4, 5, 7, 8, 9]
    assert grid.m_values == (1, 2, 3)
    assert grid.ij is None
    assert grid.limits.max_vertices == 100_000
    assert grid.limits.workers == 1


def test_sample_diameter_flag_from_yaml(tmp_path):
    path = tmp_path / "limits.yaml"
    path.write_text("limits:\n  sample_diameter: true\n", encoding="utf-8")
    assert load_limits(path).sample_diameter is True
    path.write_text("limits:\n  sample_diameter: false\n", encoding="utf-8")
    assert load_limits(path).sample_diameter is False
