"""Depth-first solver for feature terms with affine arithmetic.

Disjunctions are explored in textual order and the first satisfiable
disjunct of the term's DNF is returned.  Before branching, every
non-disjunctive literal reachable without choice is applied, so
conflicts prune early; this does not change which disjunct comes first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from gestphon.affine import AffineStore, ArithVar
from gestphon.errors import InconsistentError, UnsatisfiableError
from gestphon.lattice import TypeLattice
from gestphon.terms import (
    And,
    Attr,
    Eq,
    FeatureTerm,
    Labeled,
    Or,
    Path,
    Type,
    Var,
    conj,
    conjuncts,
    nnf,
)


@dataclass(frozen=True)
class Solution:
    lattice: TypeLattice = field(repr=False)
    types: Mapping[Path, frozenset]
    paths: Mapping[Path, ArithVar]
    store: AffineStore = field(repr=False)

    def type_at(self, path: Path) -> frozenset | None:
        return self.types.get(tuple(path))

    def type_name(self, path: Path) -> str | None:
        atoms = self.type_at(path)
        return None if atoms is None else self.lattice.name_of(atoms)

    def has_type(self, path: Path, type_name: str) -> bool:
        """True iff the solved type at ``path`` is subsumed by ``type_name``."""
        atoms = self.type_at(path)
        return atoms is not None and atoms <= self.lattice.denotation(type_name)

    def value_of(self, var) -> Fraction | None:
        return self.store.value_of(var)

    def var_at(self, path: Path) -> ArithVar | None:
        return self.paths.get(tuple(path))

    def subpaths(self, prefix: Path) -> list[Path]:
        prefix = tuple(prefix)
        n = len(prefix)
        found = {p for p in (*self.types, *self.paths) if p[:n] == prefix}
        return sorted(found)


class _Fail(Exception):
    pass


def _expand(term, path, types, paths, store, pending):
    """Apply every choice-free literal of ``term``; collect its disjunctions.

    Mutates ``types``/``paths`` and ``pending``; returns the new store.
    """
    stack = [(path, term)]
    while stack:
        path, term = stack.pop()
        if isinstance(term, Type):
            atoms = term.type
            if path in types:
                atoms = types[path] & atoms
            if not atoms:
                raise _Fail
            types[path] = atoms
        elif isinstance(term, Attr):
            stack.append((path + (term.attr,), term.term))
        elif isinstance(term, Labeled):
            stack.append((path, term.term))
        elif isinstance(term, And):
            stack.extend((path, t) for t in reversed(term.terms))
        elif isinstance(term, Or):
            pending.append((path, term))
        elif isinstance(term, Var):
            bound = paths.get(path)
            if bound is None:
                paths[path] = term.var
                store = store.declare(term.var)
            elif bound != term.var:
                try:
                    store = store.post(bound, term.var)
                except InconsistentError:
                    raise _Fail from None
        elif isinstance(term, Eq):
            try:
                store = store.post(term.equation.lhs, term.equation.rhs)
            except InconsistentError:
                raise _Fail from None
        else:
            raise TypeError(f"not in negation normal form: {term!r}")
    return store


def _search(types, paths, store, agenda):
    # agenda: disjunctions still to decide, in textual order
    if not agenda:
        return types, paths, store
    (path, head), rest = agenda[0], agenda[1:]
    for alternative in head.terms:
        t, p, pending = dict(types), dict(paths), []
        try:
            s = _expand(alternative, path, t, p, store, pending)
        except _Fail:
            continue
        found = _search(t, p, s, pending + rest)
        if found is not None:
            return found
    return None


def _prepare(term: FeatureTerm, lattice: TypeLattice) -> FeatureTerm:
    term = nnf(term, lattice)
    return _resolve_types(term, lattice)


def _resolve_types(term, lattice):
    if isinstance(term, Type):
        return Type(lattice.denotation(term.type))
    if isinstance(term, Attr):
        return Attr(term.attr, _resolve_types(term.term, lattice))
    if isinstance(term, Labeled):
        return Labeled(term.label, _resolve_types(term.term, lattice))
    if isinstance(term, (And, Or)):
        return type(term)(tuple(_resolve_types(t, lattice) for t in term.terms))
    return term


def satisfiable(term: FeatureTerm, lattice: TypeLattice, store: AffineStore | None = None) -> bool:
    return _solve(_prepare(term, lattice), store or AffineStore()) is not None


def _solve(term, store):
    types, paths, pending = {}, {}, []
    try:
        store = _expand(term, (), types, paths, store, pending)
    except _Fail:
        return None
    return _search(types, paths, store, pending)


def solve(term: FeatureTerm, lattice: TypeLattice, store: AffineStore | None = None) -> Solution:
    """First solution of ``term`` in textual disjunct order.

    Raises :class:`UnsatisfiableError` carrying the labels of a minimal
    unsatisfiable subset of the top-level conjuncts.
    """
    store = store if store is not None else AffineStore()
    found = _solve(_prepare(term, lattice), store)
    if found is None:
        core = unsat_core(term, lattice, store)
        labels = [c.label for c in core if isinstance(c, Labeled)]
        raise UnsatisfiableError(
            "constraints unsatisfiable: " + (", ".join(labels) or " & ".join(map(str, core))),
            labels,
        )
    types, paths, store = found
    return Solution(lattice, dict(sorted(types.items())), dict(sorted(paths.items())), store)


def unsat_core(term: FeatureTerm, lattice: TypeLattice, store: AffineStore | None = None) -> list:
    """Deletion-filter a minimal unsatisfiable subset of top-level conjuncts."""
    store = store if store is not None else AffineStore()
    core = conjuncts(term)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1 :]
        if not satisfiable(conj(*trial) if trial else And(()), lattice, store):
            core = trial
        else:
            i += 1
    return core
