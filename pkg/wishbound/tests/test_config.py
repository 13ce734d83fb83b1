"""Tests for run configuration parsing."""

from fractions import Fraction
from pathlib import Path

import pytest
import yaml

from wishbound.config import RunConfig, parse_alpha, parse_grid
from wishbound.exceptions import ConfigError
from wishbound.pep import CurveSource

TEST_FILES_DIR = Path(__file__).parent / "test_files"


def test_parse_alpha():
    assert parse_alpha("0, 0.1, 1/2") == (Fraction(0), Fraction(1, 10), Fraction(1, 2))
    with pytest.raises(ConfigError):
        parse_alpha("1,x")
    with pytest.raises(ConfigError):
        parse_alpha("")


def test_parse_grid_includes_stop():
    assert parse_grid("0:40:5") == [0, 5, 10, 15, 20, 25, 30, 35, 40]
    assert parse_grid("0:12:3") == [0, 3, 6, 9, 12]
    assert parse_grid("2.5:2.5:1") == [2.5]


@pytest.mark.parametrize("text", ["0:40", "a:b:c", "0:10:0", "10:0:1"])
def test_parse_grid_rejects(text):
    with pytest.raises(ConfigError):
        parse_grid(text)


def test_defaults_are_valid():
    config = RunConfig()
    assert config.alpha_values == (1, 0, 0)
    assert config.curve_source is CurveSource.EXACT


def test_validation():
    with pytest.raises(ConfigError):
        RunConfig(n=0)
    with pytest.raises(ConfigError):
        RunConfig(source="simulated")
    with pytest.raises(ConfigError):
        RunConfig(alpha="1,,/")


def test_from_file():
    config = RunConfig.from_file(str(TEST_FILES_DIR / "run_3x3.yaml"))
    assert (config.n, config.m) == (3, 3)
    assert config.alpha_values == (Fraction(1, 10), 0, 1)
    assert config.grid_values == [0, 10, 20, 30, 40]
    assert config.samples == RunConfig().samples


def test_from_file_errors():
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(TEST_FILES_DIR / "unknown_key.yaml"))
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(TEST_FILES_DIR / "broken.yaml"))
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(TEST_FILES_DIR / "does_not_exist.yaml"))


def test_overrides_skip_none():
    config = RunConfig().with_overrides({'n': 4, 'm': None, 'seed': 9, 'verbose': True})
    assert (config.n, config.m, config.seed) == (4, 3, 9)


def test_yaml_dump_loads_back():
    config = RunConfig(n=2, m=4, alpha="0,1", grid="0:20:10")
    assert RunConfig.from_mapping(yaml.safe_load(config.to_yaml())) == config
