"""Independent reference implementations used by the tests."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from gestphon.lattice import TypeLattice
from gestphon.terms import And, Attr, Not, Or, Type

ATTRS = ("f", "g")


def random_lattice(rng: random.Random, max_atoms: int = 6) -> TypeLattice:
    n = rng.randint(1, max_atoms)
    atoms = [f"a{i}" for i in range(n)]
    subtypes = {}
    for k in range(rng.randint(0, 4)):
        members = rng.sample(atoms, rng.randint(1, n))
        subtypes[f"t{k}"] = members
    return TypeLattice.from_hierarchy(atoms, subtypes)


def random_term(rng: random.Random, lattice: TypeLattice, depth: int):
    names = [n for n in lattice.names]
    if depth <= 1 or rng.random() < 0.25:
        return Type(rng.choice(names))
    kind = rng.choice(("and", "or", "not", "attr", "attr"))
    if kind == "not":
        return Not(random_term(rng, lattice, depth - 1))
    if kind == "attr":
        return Attr(rng.choice(ATTRS), random_term(rng, lattice, depth - 1))
    parts = tuple(random_term(rng, lattice, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(parts) if kind == "and" else Or(parts)


def term_depth(term) -> int:
    if isinstance(term, Type):
        return 1
    if isinstance(term, (Not, Attr)):
        return 1 + term_depth(term.term)
    return 1 + max(term_depth(t) for t in term.terms)


def type_paths(term, prefix=()):
    if isinstance(term, Type):
        return {prefix}
    if isinstance(term, Attr):
        return type_paths(term.term, prefix + (term.attr,))
    if isinstance(term, Not):
        return type_paths(term.term, prefix)
    return set().union(*(type_paths(t, prefix) for t in term.terms))


def brute_force_satisfiable(term, lattice: TypeLattice) -> bool:
    """Enumerate one atom per constrained path; evaluate classically.

    Each node of a feature structure carries exactly one atom and every
    feature is defined, so a term only depends on the atoms at the paths
    it mentions.
    """
    paths = sorted(type_paths(term))
    atoms = sorted(lattice.atoms)
    grid = np.array(list(itertools.product(range(len(atoms)), repeat=len(paths))), dtype=int)
    grid = grid.reshape(-1, len(paths))
    column = {p: grid[:, j] for j, p in enumerate(paths)}

    def holds(t, prefix):
        if isinstance(t, Type):
            members = [atoms.index(a) for a in lattice.denotation(t.type)]
            return np.isin(column[prefix], members)
        if isinstance(t, Attr):
            return holds(t.term, prefix + (t.attr,))
        if isinstance(t, Not):
            return ~holds(t.term, prefix)
        parts = [holds(s, prefix) for s in t.terms]
        combine = np.logical_and if isinstance(t, And) else np.logical_or
        out = parts[0]
        for p in parts[1:]:
            out = combine(out, p)
        return out

    return bool(holds(term, ()).any())


def critically_damped(x0: float, target: float, period: float, t: float) -> float:
    """Analytic position of a critically damped oscillator released at rest."""
    w = 2 * math.pi / period
    return target + (x0 - target) * (1 + w * t) * math.exp(-w * t)
