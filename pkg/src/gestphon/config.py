"""Loading of the three configuration files.

A configuration directory holds ``lattice.toml`` (atoms, subtype edges,
named constraints), ``inventory.toml`` (segments, aliases, legal onsets)
and ``parameters.toml`` (gesture classes, tract variables, render
settings).  Missing files fall back to the built-in defaults.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from gestphon.errors import ConfigError
from gestphon.lattice import TypeLattice
from gestphon.phonology import SegmentInventory, load_inventory, parse_constraints
from gestphon.terms import FeatureTerm
from gestphon.timing import ParameterTable

LATTICE_FILE = "lattice.toml"
INVENTORY_FILE = "inventory.toml"
PARAMETERS_FILE = "parameters.toml"
CORPUS_FILE = "corpus.toml"


@dataclass(frozen=True)
class Config:
    lattice: TypeLattice = field(repr=False)
    constraints: Mapping[str, FeatureTerm] = field(repr=False)
    table: ParameterTable = field(repr=False)
    inventory: SegmentInventory = field(repr=False)


def builtin(name: str) -> Path:
    return Path(str(resources.files("gestphon") / "data" / name))


def read_toml(path) -> dict:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def load_lattice(data: Mapping) -> tuple[TypeLattice, dict[str, FeatureTerm]]:
    if "atoms" not in data:
        raise ConfigError("lattice file needs an `atoms` list")
    lattice = TypeLattice.from_hierarchy(data["atoms"], data.get("subtypes", {}))
    return lattice, parse_constraints(data.get("constraints", {}), lattice)


def load_config(
    directory=None,
    *,
    lattice_path=None,
    inventory_path=None,
    parameters_path=None,
) -> Config:
    def pick(explicit, name):
        if explicit is not None:
            return Path(explicit)
        if directory is not None and (Path(directory) / name).exists():
            return Path(directory) / name
        return builtin(name)

    if directory is not None and not Path(directory).is_dir():
        raise ConfigError(f"config directory {directory} does not exist")
    lattice, constraints = load_lattice(read_toml(pick(lattice_path, LATTICE_FILE)))
    table = ParameterTable.from_dict(read_toml(pick(parameters_path, PARAMETERS_FILE)))
    inventory = load_inventory(read_toml(pick(inventory_path, INVENTORY_FILE)), lattice, table, constraints)
    return Config(lattice, constraints, table, inventory)


_default = None


def default_config() -> Config:
    global _default
    if _default is None:
        _default = load_config()
    return _default
