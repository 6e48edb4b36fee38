"""Finite type lattice.

Every named type denotes a set of atoms; meet is intersection and
complement is set difference against the full atom set.  Types are
declared as a subtype hierarchy whose leaves are the atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from gestphon.errors import ConfigError

BOTTOM = "bottom"
TOP = "top"


@dataclass(frozen=True)
class TypeLattice:
    atoms: frozenset[str]
    denotations: Mapping[str, frozenset[str]] = field(repr=False)
    # declaration order, used to pick a canonical name for a denotation
    order: tuple[str, ...] = field(default=(), repr=False)

    @classmethod
    def from_hierarchy(
        cls, atoms: Iterable[str], subtypes: Mapping[str, Iterable[str]]
    ) -> "TypeLattice":
        """Build a lattice from atoms and ``parent -> children`` edges.

        Children may be atoms or other named types; cycles and dangling
        names are configuration errors.
        """
        atoms = tuple(dict.fromkeys(atoms))
        atom_set = frozenset(atoms)
        if not atom_set:
            raise ConfigError("type lattice needs at least one atom")
        for reserved in (BOTTOM, TOP):
            if reserved in atom_set or reserved in subtypes:
                raise ConfigError(f"{reserved!r} is reserved")
        edges = {name: tuple(children) for name, children in subtypes.items()}
        clash = atom_set & edges.keys()
        if clash:
            raise ConfigError(f"names declared both as atom and type: {sorted(clash)}")

        den: dict[str, frozenset[str]] = {a: frozenset([a]) for a in atoms}
        visiting: set[str] = set()

        def resolve(name: str) -> frozenset[str]:
            if name in den:
                return den[name]
            if name not in edges:
                raise ConfigError(f"unknown type {name!r} in subtype hierarchy")
            if name in visiting:
                raise ConfigError(f"cycle in subtype hierarchy through {name!r}")
            visiting.add(name)
            result = frozenset().union(*(resolve(c) for c in edges[name]))
            visiting.discard(name)
            if not result:
                raise ConfigError(f"type {name!r} denotes no atoms")
            den[name] = result
            return result

        for name in edges:
            resolve(name)
        den[BOTTOM] = frozenset()
        den[TOP] = atom_set
        return cls(atom_set, den, atoms + tuple(edges) + (TOP, BOTTOM))

    def __contains__(self, name: str) -> bool:
        return name in self.denotations

    @property
    def names(self) -> tuple[str, ...]:
        return self.order

    def denotation(self, t) -> frozenset[str]:
        if isinstance(t, frozenset):
            if not t <= self.atoms:
                raise ConfigError(f"atoms not in lattice: {sorted(t - self.atoms)}")
            return t
        try:
            return self.denotations[t]
        except KeyError:
            pass
        parts = frozenset(t.split("|"))
        if "|" in t and parts <= self.atoms:
            return parts
        raise ConfigError(f"unknown type name {t!r}")

    def meet(self, a, b) -> str:
        return self.name_of(self.denotation(a) & self.denotation(b))

    def join(self, a, b) -> str:
        return self.name_of(self.denotation(a) | self.denotation(b))

    def complement(self, a) -> str:
        return self.name_of(self.atoms - self.denotation(a))

    def subsumes(self, general, specific) -> bool:
        return self.denotation(specific) <= self.denotation(general)

    def name_of(self, atoms: frozenset[str]) -> str:
        """Most specific registered name for an atom set.

        Unnamed sets get a synthesized ``a|b|c`` name (sorted atoms), which
        :meth:`denotation` reads back.
        """
        if not atoms:
            return BOTTOM
        for name in self.order:
            if self.denotations[name] == atoms:
                return name
        return "|".join(sorted(atoms))
