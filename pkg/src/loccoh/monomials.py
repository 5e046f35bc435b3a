"""Monomials, monomial ideals and quotient rings k[x_1..x_n]/J.

A monomial is a tuple of integer exponents; negative exponents only make
sense inside a localization and are rejected wherever an honest polynomial
is required.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Optional, Sequence, Tuple

from .errors import NegativeExponent
from .linalg import Field, QQ

Monomial = Tuple[int, ...]


def monomial(exps: Iterable[int]) -> Monomial:
    return tuple(int(e) for e in exps)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Sequence[int], b: Sequence[int]) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(monos: Sequence[Sequence[int]], n: int) -> Monomial:
    if not monos:
        return (0,) * n
    return tuple(max(col) for col in zip(*monos))


def support(m: Sequence[int]) -> frozenset:
    return frozenset(i for i, e in enumerate(m) if e > 0)


def _check_nonneg(gens):
    for g in gens:
        if any(e < 0 for e in g):
            raise NegativeExponent(f"negative exponent in {g}")


def _minimize(gens) -> Tuple[Monomial, ...]:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    kept = []
    for g in gens:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators (sorted, no duplicates)."""

    nvars: int
    gens: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        gens = tuple(monomial(g) for g in self.gens)
        for g in gens:
            if len(g) != self.nvars:
                raise ValueError(f"monomial {g} has wrong length for {self.nvars} variables")
        _check_nonneg(gens)
        object.__setattr__(self, "gens", _minimize(gens))

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]], nvars: Optional[int] = None) -> "MonomialIdeal":
        gens = [monomial(g) for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer the variable count of an empty ideal")
            nvars = len(gens[0])
        return cls(nvars, tuple(gens))

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def __contains__(self, m) -> bool:
        return membership(m, self)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.nvars != other.nvars:
            raise ValueError("ideals live in different rings")
        return MonomialIdeal(self.nvars, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.nvars != other.nvars:
            raise ValueError("ideals live in different rings")
        return MonomialIdeal(self.nvars, tuple(mono_mul(a, b) for a in self.gens for b in other.gens))

    def __pow__(self, k: int) -> "MonomialIdeal":
        return ideal_power(self, k)

    def frobenius_power(self, r: int) -> "MonomialIdeal":
        """The ideal generated by r-th powers of the minimal generators."""
        return MonomialIdeal(self.nvars, tuple(tuple(r * e for e in g) for g in self.gens))

    def max_exponent(self) -> int:
        return max((max(g) for g in self.gens if g), default=0)

    def to_json(self):
        return [list(g) for g in self.gens]

    def __str__(self):
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")" if self.gens else "(0)"


def format_monomial(m: Sequence[int], names: str = "xyzwuvst") -> str:
    parts = []
    for i, e in enumerate(m):
        v = names[i] if i < len(names) else f"x{i}"
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def minimal_generators(gens: Iterable[Sequence[int]], nvars: Optional[int] = None) -> MonomialIdeal:
    """Minimal generating set under divisibility.

    >>> minimal_generators([(2, 0), (3, 0), (0, 1)]).gens
    ((0, 1), (2, 0))
    """
    gens = [monomial(g) for g in gens]
    if nvars is None:
        nvars = len(gens[0]) if gens else 0
    return MonomialIdeal(nvars, tuple(gens))


def ideal_power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise ValueError("power must be positive")
    out = I
    for _ in range(k - 1):
        out = out * I
    return out


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.nvars, tuple(tuple(1 if e > 0 else 0 for e in g) for g in I.gens))


def membership(m: Sequence[int], I: MonomialIdeal) -> bool:
    _check_nonneg([m])
    return any(divides(g, m) for g in I.gens)


@dataclass(frozen=True)
class RingSpec:
    """k[x_1..x_n]/J for a monomial ideal J, finely graded by exponent vectors.

    ``variable_degrees`` is only used when a coarse grading is reported; the
    default is the standard total-degree weight of 1 per variable.
    """

    nvars: int
    field: Field = QQ
    relations: Optional[MonomialIdeal] = None
    variable_degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        rel = self.relations if self.relations is not None else MonomialIdeal.zero(self.nvars)
        if rel.nvars != self.nvars:
            raise ValueError("relations live in a different ring")
        object.__setattr__(self, "relations", rel)
        if self.variable_degrees is None:
            object.__setattr__(self, "variable_degrees", (1,) * self.nvars)
        elif len(self.variable_degrees) != self.nvars:
            raise ValueError("one degree per variable")

    def with_relations(self, extra: MonomialIdeal) -> "RingSpec":
        return RingSpec(self.nvars, self.field, self.relations + extra, self.variable_degrees)

    def coarse_degree(self, a: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.variable_degrees, a))


def krull_dim(ring: RingSpec) -> int:
    """Largest set of variables containing the support of no relation."""
    J = ring.relations
    if J.is_unit:
        return -1
    supports = [support(g) for g in J.gens]
    n = ring.nvars
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def standard_monomials(J: MonomialIdeal, bound: Sequence[int]) -> list:
    """Monomials outside J with exponents componentwise <= bound."""
    return [m for m in product(*(range(b + 1) for b in bound)) if not any(divides(g, m) for g in J.gens)]
