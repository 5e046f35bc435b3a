"""Degreewise bases of the cyclic building blocks and matrices of monomial maps.

Every module handled here is a finite direct sum of cyclic pieces over
R/J (J a monomial ideal): either R/J with its generator placed in degree
``shift``, or a localization (R/J)[1/alpha] at a monomial alpha.  With the
fine Z^n grading each piece is 0- or 1-dimensional in every multidegree, so
a degree-``a`` basis is simply the list of summands that survive at ``a``.

A map between such sums is given by ``{(target, source): (coeff, monomial)}``
and sends the generator of the source summand to ``coeff * x^monomial``
times the generator of the target summand.  Maps must be degree preserving:
``source.shift == monomial + target.shift``.  In a fixed degree the matrix
entry is then ``coeff`` exactly when both pieces are present.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import ceil
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InfinitePiece, InhomogeneousEntry, ShapeMismatch
from .linalg import ExactMatrix, Field, QQ
from .monomials import Monomial, MonomialIdeal, RingSpec, monomial, support


@dataclass(frozen=True)
class Cyclic:
    shift: Monomial
    inverted: Optional[Monomial] = None

    @property
    def inverted_support(self) -> frozenset:
        return support(self.inverted) if self.inverted is not None else frozenset()


def piece_present(b: Sequence[int], inverted: Optional[Sequence[int]], relations: MonomialIdeal) -> bool:
    """Is x^b a nonzero basis element of R/J, or of (R/J)[1/inverted]?

    For a localization at alpha with support S, x^b survives iff b_i >= 0 off
    S and x^(b + t*alpha) lies outside J for all large t.  For monomial J the
    latter fails iff some generator of J is dominated by b off S.
    """
    if inverted is None:
        if any(e < 0 for e in b):
            return False
        return not any(all(h <= e for h, e in zip(g, b)) for g in relations.gens)
    S = support(inverted)
    for i, e in enumerate(b):
        if i not in S and e < 0:
            return False
    for g in relations.gens:
        if all(g[i] <= b[i] for i in range(len(b)) if i not in S):
            return False
    return True


def survives_at(b: Sequence[int], inverted: Sequence[int], relations: MonomialIdeal, t: int) -> bool:
    """Whether x^(b + t*inverted) is a nonzero element of R/J (a single colimit stage)."""
    c = [e + t * a for e, a in zip(b, inverted)]
    return piece_present(c, None, relations)


def survival_search(b: Sequence[int], inverted: Sequence[int], relations: MonomialIdeal,
                    t0: Optional[int] = None, window: int = 3) -> bool:
    """Decide localized survival by testing stages t0..t0+window explicitly.

    The default t0 is past every threshold at which a coordinate of
    b + t*inverted can still cross 0 or a generator exponent of J.
    """
    if t0 is None:
        t0 = stage_threshold(b, [inverted], relations)
    for i, e in enumerate(b):
        if inverted[i] == 0 and e < 0:
            return False
    stages = [survives_at(b, inverted, relations, t) for t in range(t0, t0 + window + 1)]
    return stages[-1]


def stage_threshold(a: Sequence[int], vectors: Iterable[Sequence[int]], relations: MonomialIdeal) -> int:
    """Least s >= 1 past which membership of x^(a + s*v) in R/J is constant, for every v.

    Each coordinate condition ``a_i + s*v_i >= c`` (c = 0 or an exponent of a
    generator of J) is monotone in s, so after the largest crossing point
    every presence test is frozen.
    """
    s_star = 1
    gens = relations.gens
    for v in vectors:
        for i, vi in enumerate(v):
            if vi <= 0:
                continue
            s_star = max(s_star, ceil(-a[i] / vi))
            for g in gens:
                s_star = max(s_star, ceil((g[i] - a[i]) / vi))
    return s_star


@dataclass(frozen=True)
class ModuleDescriptor:
    """A finite direct sum of cyclic pieces over R/J."""

    nvars: int
    relations: MonomialIdeal
    summands: Tuple[Cyclic, ...]

    @classmethod
    def free(cls, ring: RingSpec, shifts: Iterable[Sequence[int]], relations: Optional[MonomialIdeal] = None):
        J = ring.relations if relations is None else relations
        return cls(ring.nvars, J, tuple(Cyclic(monomial(s)) for s in shifts))

    @classmethod
    def localized(cls, ring: RingSpec, inverted: Sequence[int], relations: Optional[MonomialIdeal] = None,
                  shift: Optional[Sequence[int]] = None):
        J = ring.relations if relations is None else relations
        if any(e < 0 for e in inverted):
            raise ValueError("inverted monomial must have nonnegative exponents")
        sh = monomial(shift) if shift is not None else (0,) * ring.nvars
        return cls(ring.nvars, J, (Cyclic(sh, monomial(inverted)),))

    @classmethod
    def direct_sum(cls, parts: Sequence["ModuleDescriptor"]) -> "ModuleDescriptor":
        if not parts:
            raise ValueError("empty direct sum needs an explicit descriptor")
        J = parts[0].relations
        if any(p.relations != J for p in parts):
            raise ValueError("summands over different quotient rings")
        return cls(parts[0].nvars, J, tuple(s for p in parts for s in p.summands))

    def present(self, idx: int, a: Sequence[int]) -> bool:
        c = self.summands[idx]
        b = [x - y for x, y in zip(a, c.shift)]
        return piece_present(b, c.inverted, self.relations)

    def present_indices(self, a: Sequence[int]) -> List[int]:
        return [i for i in range(len(self.summands)) if self.present(i, a)]

    def dim(self, a: Sequence[int]) -> int:
        return len(self.present_indices(a))


def basis_of_degree(m: ModuleDescriptor, a: Sequence[int]) -> List[Tuple[int, Monomial]]:
    """Labels (summand index, exponent of the basis monomial) in degree ``a``."""
    out = []
    for i in m.present_indices(a):
        c = m.summands[i]
        out.append((i, tuple(x - y for x, y in zip(a, c.shift))))
    return out


MapEntries = Dict[Tuple[int, int], Tuple[object, Monomial]]


def check_homogeneous(source: ModuleDescriptor, target: ModuleDescriptor, entries: MapEntries) -> None:
    for (t, s), (_, mono) in entries.items():
        want = tuple(x - y for x, y in zip(source.summands[s].shift, target.summands[t].shift))
        if tuple(mono) != want:
            raise InhomogeneousEntry(f"entry {(t, s)} has degree {tuple(mono)}, expected {want}")


def map_matrix(source: ModuleDescriptor, target: ModuleDescriptor, entries: MapEntries,
               a: Sequence[int], field: Field = QQ, check: bool = True,
               src_idx: Optional[List[int]] = None, tgt_idx: Optional[List[int]] = None) -> ExactMatrix:
    """Matrix of the map in degree ``a``: rows index the target basis, columns the source basis."""
    if check:
        check_homogeneous(source, target, entries)
    if src_idx is None:
        src_idx = source.present_indices(a)
    if tgt_idx is None:
        tgt_idx = target.present_indices(a)
    col = {s: j for j, s in enumerate(src_idx)}
    row = {t: i for i, t in enumerate(tgt_idx)}
    ent = {}
    for (t, s), (c, _) in entries.items():
        if t in row and s in col:
            ent[(row[t], col[s])] = c
    return ExactMatrix(len(tgt_idx), len(src_idx), field, ent)


def euler_characteristic(dims: Sequence[Optional[int]], start: int = 0) -> int:
    """Alternating sum of dimensions indexed from ``start``."""
    total = 0
    for k, d in enumerate(dims):
        if d is None:
            raise InfinitePiece(f"piece at index {start + k} is not finite")
        total += (-1) ** ((start + k) % 2) * d
    return total


def coarse_dim(m: ModuleDescriptor, ring: RingSpec, d: int, radius: int) -> int:
    """Dimension of the total-degree-``d`` piece, searched in the cube |a_i| <= radius.

    Raises InfinitePiece when a surviving multidegree touches the search
    boundary, which is how non-finite coarse pieces such as those of
    k[x,y][1/x] show up.
    """
    total = 0
    for a in product(range(-radius, radius + 1), repeat=m.nvars):
        if ring.coarse_degree(a) != d:
            continue
        n = m.dim(a)
        if n and any(abs(x) == radius for x in a):
            raise InfinitePiece(f"coarse degree {d} piece is not finite (witness {a})")
        total += n
    return total
