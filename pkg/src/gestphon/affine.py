"""Affine equality constraints over exact rationals.

The store keeps its equations in solved form: each pivot variable is
expressed through non-pivot (free) variables only.  Posting an equation
reduces it against the pivots; a leftover ``0 = c`` with ``c != 0`` is an
inconsistency, a leftover ``0 = 0`` is redundant.  Stores are immutable;
:meth:`AffineStore.post` returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from gestphon.errors import InconsistentError, UnknownVariableError, UnsupportedConstructError


@dataclass(frozen=True, order=True)
class ArithVar:
    id: str
    tag: str = field(default="", compare=False)

    def __str__(self):
        return self.id

    # arithmetic sugar so timing code can write ``start + T * phase / 360``
    def _expr(self) -> "AffineExpr":
        return AffineExpr({self: Fraction(1)})

    def __add__(self, other):
        return self._expr() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self._expr() - other

    def __rsub__(self, other):
        return as_expr(other) - self._expr()

    def __neg__(self):
        return -self._expr()

    def __mul__(self, other):
        return self._expr() * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._expr() / other


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        # decimal reading, so 0.1 means 1/10 rather than its binary neighbour
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not a number: {value!r}")


class AffineExpr:
    """``sum(coeff * var) + const`` with Fraction coefficients."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Mapping[ArithVar, Fraction] | None = None, const=0):
        self.coeffs = {v: to_fraction(c) for v, c in (coeffs or {}).items() if c != 0}
        self.const = to_fraction(const)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    @property
    def variables(self) -> frozenset[ArithVar]:
        return frozenset(self.coeffs)

    def __add__(self, other):
        other = as_expr(other)
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return AffineExpr(coeffs, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return AffineExpr({v: -c for v, c in self.coeffs.items()}, -self.const)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) - self

    def __mul__(self, other):
        other = as_expr(other)
        if not other.is_constant and not self.is_constant:
            raise UnsupportedConstructError(
                f"product of non-constant expressions ({self}) * ({other}) is not affine"
            )
        if other.is_constant:
            k, e = other.const, self
        else:
            k, e = self.const, other
        return AffineExpr({v: c * k for v, c in e.coeffs.items()}, e.const * k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_expr(other)
        if not other.is_constant:
            raise UnsupportedConstructError(f"division by non-constant ({other})")
        if other.const == 0:
            raise ZeroDivisionError("division of affine expression by zero")
        return self * (1 / other.const)

    def __rtruediv__(self, other):
        if not self.is_constant:
            raise UnsupportedConstructError(f"division by non-constant ({self})")
        return as_expr(other) / self.const

    def __eq__(self, other):
        if not isinstance(other, (AffineExpr, ArithVar, int, Fraction)):
            return NotImplemented
        other = as_expr(other)
        return self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.const))

    def substitute(self, bindings: Mapping[ArithVar, "AffineExpr"]) -> "AffineExpr":
        out = AffineExpr(None, self.const)
        for v, c in self.coeffs.items():
            out = out + (bindings[v] * c if v in bindings else AffineExpr({v: c}))
        return out

    def evaluate(self, values: Mapping[ArithVar, Fraction]) -> Fraction:
        return self.const + sum((c * values[v] for v, c in self.coeffs.items()), Fraction(0))

    def __repr__(self):
        return f"AffineExpr({self})"

    def __str__(self):
        parts = [f"{c}*{v}" for v, c in sorted(self.coeffs.items())]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


def as_expr(value) -> AffineExpr:
    if isinstance(value, AffineExpr):
        return value
    if isinstance(value, ArithVar):
        return AffineExpr({value: Fraction(1)})
    return AffineExpr(None, to_fraction(value))


@dataclass(frozen=True)
class Equation:
    lhs: AffineExpr
    rhs: AffineExpr
    label: str = ""

    @classmethod
    def of(cls, lhs, rhs, label: str = "") -> "Equation":
        return cls(as_expr(lhs), as_expr(rhs), label)

    @property
    def difference(self) -> AffineExpr:
        return self.lhs - self.rhs

    @property
    def variables(self) -> frozenset[ArithVar]:
        return self.lhs.variables | self.rhs.variables

    def residual(self, values: Mapping[ArithVar, Fraction]) -> Fraction:
        return self.difference.evaluate(values)

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


class AffineStore:
    __slots__ = ("_pivots", "_known")

    def __init__(self):
        # pivot -> expression over free variables only
        self._pivots: dict[ArithVar, AffineExpr] = {}
        self._known: frozenset[ArithVar] = frozenset()

    @classmethod
    def of(cls, equations: Iterable[Equation]) -> "AffineStore":
        store = cls()
        for eq in equations:
            store = store.post(eq.lhs, eq.rhs)
        return store

    def _copy(self) -> "AffineStore":
        new = AffineStore.__new__(AffineStore)
        new._pivots = dict(self._pivots)
        new._known = self._known
        return new

    @property
    def variables(self) -> frozenset[ArithVar]:
        return self._known

    def declare(self, *variables: ArithVar) -> "AffineStore":
        """Make variables known to the store without constraining them."""
        new = self._copy()
        new._known = self._known | frozenset(variables)
        return new

    def post(self, lhs, rhs=0) -> "AffineStore":
        """Add ``lhs = rhs``; raise :class:`InconsistentError` on ``0 = c``."""
        diff = (as_expr(lhs) - as_expr(rhs)).substitute(self._pivots)
        new = self._copy()
        new._known = self._known | as_expr(lhs).variables | as_expr(rhs).variables
        if diff.is_constant:
            if diff.const != 0:
                raise InconsistentError(f"{lhs} = {rhs} reduces to 0 = {-diff.const}")
            return new
        # smallest variable as pivot: deterministic for a given equation set
        pivot = min(diff.coeffs)
        k = diff.coeffs[pivot]
        solved = AffineExpr(
            {v: -c / k for v, c in diff.coeffs.items() if v != pivot}, -diff.const / k
        )
        binding = {pivot: solved}
        new._pivots = {v: e.substitute(binding) for v, e in self._pivots.items()}
        new._pivots[pivot] = solved
        return new

    def post_equation(self, eq: Equation) -> "AffineStore":
        return self.post(eq.lhs, eq.rhs)

    def reduce(self, expr) -> AffineExpr:
        return as_expr(expr).substitute(self._pivots)

    def value_of(self, var) -> Fraction | None:
        """Entailed value of a variable or expression; ``None`` if undetermined."""
        if isinstance(var, ArithVar) and var not in self._known:
            raise UnknownVariableError(f"unknown variable {var}")
        reduced = self.reduce(var)
        return reduced.const if reduced.is_constant else None

    def bindings(self) -> dict[ArithVar, Fraction]:
        out = {}
        for v in sorted(self._known):
            value = self.value_of(v)
            if value is not None:
                out[v] = value
        return out

    def is_consistent_with(self, lhs, rhs=0) -> bool:
        try:
            self.post(lhs, rhs)
        except InconsistentError:
            return False
        return True

    def __len__(self):
        return len(self._pivots)

    def __repr__(self):
        return f"AffineStore(rank={len(self._pivots)}, vars={len(self._known)})"


def post_equation(store: AffineStore, lhs, rhs) -> AffineStore:
    return store.post(lhs, rhs)
