import pytest

from gestphon.config import builtin, load_config, read_toml
from gestphon.errors import ConfigError
from gestphon.timing import ParameterTable


def test_builtin_files_load():
    cfg = load_config()
    assert "b" in cfg.inventory
    assert cfg.table.phases("stop") == (120, 240, 330)
    assert float(cfg.table.neutral_eigenperiod) == 250


def test_partial_directory_falls_back(tmp_path):
    (tmp_path / "parameters.toml").write_text(builtin("parameters.toml").read_text(encoding="utf-8").replace("ga_threshold = 0.2", "ga_threshold = 0.3"), encoding="utf-8")
    assert load_config(tmp_path).table.ga_threshold == 0.3


@pytest.mark.parametrize(
    "name,text",
    [
        ("lattice.toml", "atoms = [\n"),
        ("lattice.toml", "subtypes = {}\n"),
        ("lattice.toml", 'atoms = ["a"]\n[constraints]\nc = "a & ("\n'),
        ("lattice.toml", 'atoms = ["a"]\n[constraints]\nc = "d"\nd = "c"\n'),
    ],
)
def test_bad_lattice_files(tmp_path, name, text):
    (tmp_path / name).write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(tmp_path)


def test_missing_directory(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope")
    with pytest.raises(ConfigError):
        read_toml(tmp_path / "nope.toml")


def test_parameter_phase_checks():
    data = read_toml(builtin("parameters.toml"))
    data["classes"]["stop"]["assoc"] = 400
    with pytest.raises(ConfigError):
        ParameterTable.from_dict(data)
