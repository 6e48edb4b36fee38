"""Typed feature terms.

A term constrains the value found at a path of attributes.  Type
constraints, ``attr:term`` descents, conjunction, disjunction and
negation follow CUF notation; :func:`parse_term` reads the textual form::

    seg:~obstruent ; seg:obstruent & (~coda ; coda & seg:secondary:voiceless)

``:`` binds tightest, then prefix ``~``, then ``&``, then ``;``.
Arithmetic enters through :class:`Var` (a path carries an arithmetic
variable) and :class:`Eq` (an affine equality atom).  Negation is classical
finite-domain complement and is rejected over either arithmetic form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Mapping, Union

from gestphon.affine import ArithVar, Equation
from gestphon.errors import ConfigError, UnsupportedConstructError
from gestphon.lattice import TypeLattice

Path = tuple[str, ...]


class FeatureTerm:
    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Type(FeatureTerm):
    type: Union[str, frozenset]

    def __str__(self):
        if isinstance(self.type, frozenset):
            return "{" + "|".join(sorted(self.type)) + "}"
        return self.type


@dataclass(frozen=True)
class Attr(FeatureTerm):
    attr: str
    term: FeatureTerm

    def __str__(self):
        inner = str(self.term)
        if isinstance(self.term, (And, Or)):
            inner = f"({inner})"
        return f"{self.attr}:{inner}"


@dataclass(frozen=True)
class And(FeatureTerm):
    terms: tuple[FeatureTerm, ...]

    def __str__(self):
        return " & ".join(f"({t})" if isinstance(t, Or) else str(t) for t in self.terms)


@dataclass(frozen=True)
class Or(FeatureTerm):
    terms: tuple[FeatureTerm, ...]

    def __str__(self):
        return " ; ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Not(FeatureTerm):
    term: FeatureTerm

    def __str__(self):
        inner = str(self.term)
        if isinstance(self.term, (And, Or)):
            inner = f"({inner})"
        return f"~{inner}"


@dataclass(frozen=True)
class Var(FeatureTerm):
    var: ArithVar

    def __str__(self):
        return f"<{self.var}>"


@dataclass(frozen=True)
class Eq(FeatureTerm):
    equation: Equation

    def __str__(self):
        return f"equal({self.equation.lhs}, {self.equation.rhs})"


@dataclass(frozen=True)
class Labeled(FeatureTerm):
    """Names a sub-term for failure reports; logically transparent."""

    label: str
    term: FeatureTerm

    def __str__(self):
        return str(self.term)


TOP_TERM = And(())


def conj(*terms: FeatureTerm) -> FeatureTerm:
    return terms[0] if len(terms) == 1 else And(tuple(terms))


def disj(*terms: FeatureTerm) -> FeatureTerm:
    return terms[0] if len(terms) == 1 else Or(tuple(terms))


def at(path: Iterable[str], term: FeatureTerm) -> FeatureTerm:
    for attr in reversed(tuple(path)):
        term = Attr(attr, term)
    return term


def equal(lhs, rhs, label: str = "") -> Eq:
    return Eq(Equation.of(lhs, rhs, label))


# ---------------------------------------------------------------- normal forms


def nnf(term: FeatureTerm, lattice: TypeLattice, negate: bool = False) -> FeatureTerm:
    """Push negation down to type constraints, complementing them."""
    if isinstance(term, Type):
        if not negate:
            lattice.denotation(term.type)
            return term
        return Type(lattice.atoms - lattice.denotation(term.type))
    if isinstance(term, Attr):
        # features are total, so ~a:t == a:~t
        return Attr(term.attr, nnf(term.term, lattice, negate))
    if isinstance(term, Not):
        return nnf(term.term, lattice, not negate)
    if isinstance(term, (And, Or)):
        flip = isinstance(term, And) == negate
        parts = tuple(nnf(t, lattice, negate) for t in term.terms)
        return Or(parts) if flip else And(parts)
    if isinstance(term, Labeled):
        return Labeled(term.label, nnf(term.term, lattice, negate))
    if isinstance(term, (Var, Eq)):
        if negate:
            raise UnsupportedConstructError(f"negation over arithmetic atom {term}")
        return term
    raise TypeError(f"not a feature term: {term!r}")


@dataclass(frozen=True)
class TypeLit:
    path: Path
    atoms: frozenset


@dataclass(frozen=True)
class VarLit:
    path: Path
    var: ArithVar


@dataclass(frozen=True)
class EqLit:
    equation: Equation


Literal = Union[TypeLit, VarLit, EqLit]
DNF = tuple[tuple[Literal, ...], ...]


def normalize(term: FeatureTerm, lattice: TypeLattice) -> DNF:
    """Disjunctive normal form, disjuncts in textual (depth-first) order.

    The result is exponential in the number of nested disjunctions; the
    solver explores the same order lazily instead of materializing it.
    """
    return _dnf(nnf(term, lattice), (), lattice)


def _dnf(term: FeatureTerm, path: Path, lattice: TypeLattice) -> DNF:
    if isinstance(term, Type):
        return ((TypeLit(path, lattice.denotation(term.type)),),)
    if isinstance(term, Attr):
        return _dnf(term.term, path + (term.attr,), lattice)
    if isinstance(term, Labeled):
        return _dnf(term.term, path, lattice)
    if isinstance(term, Var):
        return ((VarLit(path, term.var),),)
    if isinstance(term, Eq):
        return ((EqLit(term.equation),),)
    if isinstance(term, Or):
        return tuple(d for t in term.terms for d in _dnf(t, path, lattice))
    if isinstance(term, And):
        parts = [_dnf(t, path, lattice) for t in term.terms]
        return tuple(tuple(lit for d in combo for lit in d) for combo in product(*parts))
    raise TypeError(f"not in negation normal form: {term!r}")


def paths_of(term: FeatureTerm, prefix: Path = ()) -> set[Path]:
    """Every path a term constrains with a type (not prefixes)."""
    if isinstance(term, Type):
        return {prefix}
    if isinstance(term, Attr):
        return paths_of(term.term, prefix + (term.attr,))
    if isinstance(term, (Not, Labeled)):
        return paths_of(term.term, prefix)
    if isinstance(term, (And, Or)):
        return set().union(*(paths_of(t, prefix) for t in term.terms))
    return set()


def conjuncts(term: FeatureTerm) -> list[FeatureTerm]:
    """Top-level conjuncts, flattening nested ``And``."""
    if isinstance(term, And):
        return [c for t in term.terms for c in conjuncts(t)]
    return [term]


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(?P<name>[^\W\d]\w*)|(?P<op>[:&;()~∼¬]))", re.UNICODE)


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConfigError(f"unexpected character {text[pos:].lstrip()[:1]!r} in term {text!r}")
        tok = m.group("name") or m.group("op")
        tokens.append("~" if tok in "∼¬" else tok)
        pos = m.end()
    return tokens


def parse_term(
    text: str,
    lattice: TypeLattice,
    definitions: Mapping[str, FeatureTerm] | Callable[[str], FeatureTerm | None] = {},
) -> FeatureTerm:
    """Parse CUF-style term syntax.

    A bare name is a named definition if ``definitions`` knows it,
    otherwise a lattice type; anything else is a :class:`ConfigError`.
    """
    lookup = definitions if callable(definitions) else definitions.get
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(tok):
        nonlocal pos
        if peek() != tok:
            raise ConfigError(f"expected {tok!r} at token {pos} in {text!r}, got {peek()!r}")
        pos += 1

    def disjunction():
        nonlocal pos
        parts = [conjunction()]
        while peek() == ";":
            pos += 1
            parts.append(conjunction())
        return disj(*parts)

    def conjunction():
        nonlocal pos
        parts = [unary()]
        while peek() == "&":
            pos += 1
            parts.append(unary())
        return conj(*parts)

    def unary():
        nonlocal pos
        if peek() == "~":
            pos += 1
            return Not(unary())
        return primary()

    def primary():
        nonlocal pos
        tok = peek()
        if tok == "(":
            pos += 1
            inner = disjunction()
            expect(")")
            return inner
        if tok is None or not _TOKEN.fullmatch(tok) or tok in ":&;()~":
            raise ConfigError(f"expected a name at token {pos} in {text!r}, got {tok!r}")
        pos += 1
        if peek() == ":":
            pos += 1
            return Attr(tok, unary())
        defined = lookup(tok)
        if defined is not None:
            return Labeled(tok, defined)
        if tok in lattice:
            return Type(tok)
        raise ConfigError(f"unknown name {tok!r} in term {text!r}")

    if not tokens:
        raise ConfigError("empty term")
    result = disjunction()
    if pos != len(tokens):
        raise ConfigError(f"trailing tokens {tokens[pos:]} in {text!r}")
    return result
