"""Exact linear algebra over the rationals and prime fields.

Matrices are stored sparsely as ``{(row, col): value}`` with no stored zeros.
Over the rationals, rank is computed by fraction-free integer elimination;
kernels and solves go through a sparse reduced row echelon form.  A dense
numpy backend (``ModPDense``) handles the large matrices met when resolving
modules over finite dimensional algebras in positive characteristic.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CompositionNotZero, ShapeMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (characteristic 0) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, spec) -> "Field":
        """Accept 0, a prime, "Q", "QQ", "F2", "GF(3)" and similar."""
        if isinstance(spec, Field):
            return spec
        if isinstance(spec, int):
            return cls(spec)
        if isinstance(spec, dict):
            return cls(int(spec.get("characteristic", 0)))
        s = str(spec).strip().upper().replace(" ", "")
        if s in ("Q", "QQ", "RATIONALS", "0"):
            return cls(0)
        for prefix in ("GF(", "F_", "GF", "F"):
            if s.startswith(prefix):
                return cls(int(s[len(prefix):].rstrip(")")))
        return cls(int(s))

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __call__(self, x):
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, p)) % p
            return int(x) % p
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return (a * b) % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(int(a), -1, self.characteristic)
        return 1 / Fraction(a)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse matrix over a Field; ``entries`` never holds a zero."""

    rows: int
    cols: int
    field: Field = QQ
    entries: Dict[Tuple[int, int], object] = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("negative dimension")
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ShapeMismatch(f"index {(r, c)} out of bounds for {self.rows}x{self.cols}")
            v = self.field(v)
            if v != 0:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: Field = QQ, cols: Optional[int] = None) -> "ExactMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v != 0}
        return cls(rows, cols, field, ent)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls(n, n, field, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        return cls(rows, cols, field, {})

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.field, frozenset(self.entries.items())))

    def to_dense(self) -> List[list]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, self.field, {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot compose {self.shape} with {other.shape}")
        F = self.field
        by_row: Dict[int, Dict[int, object]] = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, {})[c] = v
        out: Dict[Tuple[int, int], object] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, {}).items():
                out[(r, c)] = F.add(out.get((r, c), F.zero), F.mul(a, b))
        return ExactMatrix(self.rows, other.cols, F, out)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match column count")
        F = self.field
        out = [F.zero] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c] != 0:
                out[r] = F.add(out[r], F.mul(v, F(vec[c])))
        return out

    def column_stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("row counts differ")
        ent = dict(self.entries)
        ent.update({(r, c + self.cols): v for (r, c), v in other.entries.items()})
        return ExactMatrix(self.rows, self.cols + other.cols, self.field, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int, field: Field = QQ) -> "ExactMatrix":
        ent = {(r, c): v for c, col in enumerate(columns) for r, v in enumerate(col) if v != 0}
        return cls(rows, len(columns), field, ent)


# -- elimination -----------------------------------------------------------

def _sparse_rows(m: ExactMatrix) -> List[Dict[int, object]]:
    rows: List[Dict[int, object]] = [dict() for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    return [r for r in rows if r]


def _rank_mod_p(rows: List[Dict[int, int]], p: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _rank_fraction_free(rows: List[Dict[int, Fraction]]) -> int:
    """Rank over Q by integer elimination with content removal."""
    int_rows = []
    for row in rows:
        den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in row.values()), 1)
        int_rows.append({k: int(v * den) for k, v in row.items()})
    pivots: Dict[int, Dict[int, int]] = {}
    for row in int_rows:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                g = reduce(gcd, row.values())
                if row[c] < 0:
                    g = -g
                pivots[c] = {k: v // g for k, v in row.items()}
                break
            a, b = piv[c], row[c]
            new = {}
            for k in set(row) | set(piv):
                v = a * row.get(k, 0) - b * piv.get(k, 0)
                if v:
                    new[k] = v
            if new:
                g = reduce(gcd, new.values())
                new = {k: v // g for k, v in new.items()}
            row = new
    return len(pivots)


def rank(m: ExactMatrix) -> int:
    """Rank of ``m`` over its field."""
    rows = _sparse_rows(m)
    if not rows:
        return 0
    p = m.field.characteristic
    if p:
        return _rank_mod_p(rows, p)
    return _rank_fraction_free(rows)


def rref(m: ExactMatrix) -> Tuple[List[Dict[int, object]], List[int]]:
    """Reduced row echelon form as (sparse rows, pivot columns), pivots ascending."""
    F = m.field
    pending = _sparse_rows(m)
    done: List[Dict[int, object]] = []
    piv_cols: List[int] = []
    cols = sorted({c for row in pending for c in row})
    for c in cols:
        k = next((i for i, row in enumerate(pending) if c in row), None)
        if k is None:
            continue
        prow = pending.pop(k)
        inv = F.inv(prow[c])
        prow = {j: F.mul(v, inv) for j, v in prow.items()}
        for row in pending + done:
            f = row.get(c)
            if f is None:
                continue
            for j, v in prow.items():
                nv = F.sub(row.get(j, F.zero), F.mul(f, v))
                if nv != 0:
                    row[j] = nv
                else:
                    row.pop(j, None)
        pending = [row for row in pending if row]
        done.append(prow)
        piv_cols.append(c)
    return done, piv_cols


def kernel_basis(m: ExactMatrix) -> List[list]:
    """Basis of the null space; one vector per free column, in column order."""
    F = m.field
    rows, piv_cols = rref(m)
    piv_set = set(piv_cols)
    basis = []
    for free in range(m.cols):
        if free in piv_set:
            continue
        v = [F.zero] * m.cols
        v[free] = F.one
        for row, pc in zip(rows, piv_cols):
            f = row.get(free)
            if f:
                v[pc] = F.neg(f)
        basis.append(v)
    return basis


def solve(m: ExactMatrix, b: Sequence) -> Optional[list]:
    """Some x with m x = b, free variables set to zero; None if inconsistent."""
    F = m.field
    if len(b) != m.rows:
        raise ShapeMismatch("right-hand side length does not match row count")
    aug = m.column_stack(ExactMatrix.from_columns([list(b)], m.rows, F))
    rows, piv_cols = rref(aug)
    x = [F.zero] * m.cols
    for row, pc in zip(rows, piv_cols):
        if pc == m.cols:
            return None
        x[pc] = row.get(m.cols, F.zero)
    return x


def homology_dim(d_in: ExactMatrix, d_out: ExactMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for composable V -> W -> U."""
    if d_in.rows != d_out.cols:
        raise ShapeMismatch(f"d_in lands in dimension {d_in.rows} but d_out starts from {d_out.cols}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out . d_in != 0")
    return d_out.cols - rank(d_out) - rank(d_in)


def induced_map_rank(src_in: ExactMatrix, src_out: ExactMatrix, f: ExactMatrix, tgt_in: ExactMatrix) -> int:
    """Rank of the map induced by ``f`` on homology at one spot.

    ``src_in``/``src_out`` are the differentials into and out of the source
    spot, ``tgt_in`` the differential into the target spot; f is a chain map
    component between the two spots.
    """
    F = f.field
    cycles = kernel_basis(src_out)
    if not cycles:
        return 0
    images = [f.apply(z) for z in cycles]
    imgs = ExactMatrix.from_columns(images, f.rows, F)
    both = imgs.column_stack(tgt_in) if tgt_in.cols else imgs
    return rank(both) - rank(tgt_in)


# -- dense mod-p backend ---------------------------------------------------

class ModPDense:
    """Row reduction of dense numpy matrices over F_p.

    For p = 2 rows are bit-packed into uint64 words so a pivot step is one
    vectorized XOR.
    """

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError("p must be prime")
        self.p = p

    def rref(self, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        a = np.asarray(a, dtype=np.int64) % self.p
        if self.p == 2:
            return self._rref_gf2(a)
        return self._rref_general(a)

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def _rref_general(self, a):
        p = self.p
        m = a.copy()
        nrows, ncols = m.shape
        pivots = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + nz[0]
            if k != r:
                m[[r, k]] = m[[k, r]]
            m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
            col = m[:, c].copy()
            col[r] = 0
            hit = np.nonzero(col)[0]
            if hit.size:
                m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def _rref_gf2(self, a):
        nrows, ncols = a.shape
        if nrows == 0 or ncols == 0:
            return np.zeros((0, ncols), dtype=np.int64), []
        words = (ncols + 63) // 64
        padded = np.zeros((nrows, words * 64), dtype=np.uint8)
        padded[:, :ncols] = a.astype(np.uint8)
        # little-endian bit order inside each 64-bit word
        packed = np.packbits(padded.reshape(nrows, words, 64)[:, :, ::-1], axis=2, bitorder="big")
        m = packed.reshape(nrows, words * 8).view(">u8").astype(np.uint64).reshape(nrows, words)
        pivots = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            w, b = divmod(c, 64)
            bit = np.uint64(1) << np.uint64(b)
            has = (m[r:, w] & bit) != 0
            nz = np.nonzero(has)[0]
            if nz.size == 0:
                continue
            k = r + nz[0]
            if k != r:
                m[[r, k]] = m[[k, r]]
            hit = np.nonzero((m[:, w] & bit) != 0)[0]
            hit = hit[hit != r]
            if hit.size:
                m[hit] ^= m[r]
            pivots.append(c)
            r += 1
        m = m[:r]
        bits = np.zeros((r, words * 64), dtype=np.int64)
        for b in range(64):
            bits[:, b::64] = ((m >> np.uint64(b)) & np.uint64(1)).astype(np.int64)
        return bits[:, :ncols], pivots

    def kernel_basis(self, a: np.ndarray) -> np.ndarray:
        """Null space basis as rows of a (k, ncols) array."""
        a = np.asarray(a, dtype=np.int64)
        ncols = a.shape[1]
        if a.shape[0] == 0:
            return np.eye(ncols, dtype=np.int64)
        red, piv = self.rref(a)
        free = [c for c in range(ncols) if c not in set(piv)]
        out = np.zeros((len(free), ncols), dtype=np.int64)
        for i, c in enumerate(free):
            out[i, c] = 1
            if piv:
                out[i, piv] = (-red[:, c]) % self.p
        return out
