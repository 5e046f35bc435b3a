"""Finite dimensional augmented algebras: resolutions of k, Ext, socles and Frobenius forms.

An algebra is a structure tensor C with e_u e_v = sum_w C[u, v, w] e_w, a
unit vector, an augmentation functional and (optionally) degrees on the
basis.  Modules are left modules; a free module A^b is stored as b
algebra elements, and a map of free modules as a b_i x b_(i-1) array of
algebra elements acting by right multiplication:

    x = (x_1..x_b)  ->  (sum_j x_j D[j, k])_k

Linear algebra runs on dense numpy arrays: int64 mod p in positive
characteristic, exact Python ints and Fractions (object arrays) over the rationals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from itertools import combinations, permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ComputationError, NoFunctionalSupplied, NotAGroup
from .linalg import Field, ModPDense
from .monomials import MonomialIdeal, divides, standard_monomials
from .tables import CheckReport


class DenseOps:
    """Row reduction on dense arrays over a prime field or the rationals."""

    def __init__(self, field: Field):
        self.field = field
        self.p = field.characteristic
        self._modp = ModPDense(self.p) if self.p else None

    def array(self, x) -> np.ndarray:
        if self.p:
            return np.asarray(x, dtype=np.int64) % self.p
        a = np.asarray(x, dtype=object)
        return np.vectorize(Fraction, otypes=[object])(a) if a.size else a.astype(object)

    def zeros(self, shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p else a

    def matmul(self, a, b) -> np.ndarray:
        if self.p:
            # keep int64 products small
            return (a % self.p) @ (b % self.p) % self.p
        return self.einsum("ij,jk->ik", a, b)

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        """Reduced einsum; over QQ the operands are scaled to integers first."""
        if self.p:
            return np.einsum(subscripts, *operands) % self.p
        scaled, denom = [], 1
        for a in operands:
            a = np.asarray(a, dtype=object)
            d, plain = 1, True
            for x in a.flat:
                if type(x) is not int:
                    plain = False
                    d = lcm(d, x.denominator)
            if not plain:
                a = np.array([x * d if type(x) is int else x.numerator * (d // x.denominator) for x in a.flat],
                             dtype=object).reshape(a.shape)
            scaled.append(a)
            denom *= d
        out = np.asarray(np.einsum(subscripts, *scaled), dtype=object)
        if denom == 1 or not out.size:
            return out      # integral entries stay plain ints, which mix exactly with Fractions
        return np.vectorize(lambda x: Fraction(x, denom), otypes=[object])(out)

    def rref(self, a: np.ndarray):
        if self.p:
            return self._modp.rref(a)
        m = [list(row) for row in a]
        nrows = len(m)
        ncols = a.shape[1] if a.ndim == 2 else 0
        pivots, r = [], 0
        for c in range(ncols):
            k = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if k is None:
                continue
            m[r], m[k] = m[k], m[r]
            inv = 1 / Fraction(m[r][c])
            m[r] = [x * inv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        out = self.zeros((r, ncols))
        for i in range(r):
            out[i] = m[i]
        return out, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a: np.ndarray) -> np.ndarray:
        """Basis (rows) of {y : a @ y = 0}."""
        ncols = a.shape[1]
        if a.shape[0] == 0:
            out = self.zeros((ncols, ncols))
            for i in range(ncols):
                out[i, i] = 1
            return out
        red, piv = self.rref(a)
        pset = set(piv)
        free = [c for c in range(ncols) if c not in pset]
        out = self.zeros((len(free), ncols))
        for i, c in enumerate(free):
            out[i, c] = 1
            for r, pc in enumerate(piv):
                out[i, pc] = self.reduce(-red[r, c]) if self.p else -red[r, c]
        return out

    def left_kernel(self, m: np.ndarray) -> np.ndarray:
        """Basis (rows) of {x : x @ m = 0}."""
        return self.kernel(m.T)

    def solve_left(self, m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        """Rows X with X @ m = rhs (free variables zero); raises if inconsistent."""
        nx = m.shape[0]
        if rhs.shape[0] == 0:
            return self.zeros((0, nx))
        aug = np.concatenate([m.T, rhs.T], axis=1)
        red, piv = self.rref(aug)
        if any(c >= nx for c in piv):
            raise ComputationError("linear system has no solution")
        X = self.zeros((rhs.shape[0], nx))
        for r, c in enumerate(piv):
            X[:, c] = red[r, nx:]
        return X

    def in_span(self, basis: np.ndarray, vecs: np.ndarray) -> bool:
        return self.rank(np.concatenate([basis, vecs])) == self.rank(basis)


@dataclass
class FinDimAlgebra:
    field: Field
    structure: np.ndarray            # C[u, v, w]
    unit: np.ndarray
    augmentation: np.ndarray
    degrees: Tuple[int, ...]
    labels: Tuple[str, ...]
    identity_index: Optional[int] = None   # group algebras: basis index of the identity
    name: str = ""

    def __post_init__(self):
        self.ops = DenseOps(self.field)
        self.structure = self.ops.array(self.structure)
        self.unit = self.ops.array(self.unit)
        self.augmentation = self.ops.array(self.augmentation)
        d = self.dim
        if self.structure.shape != (d, d, d):
            raise ValueError("structure tensor must be dim x dim x dim")

    @property
    def dim(self) -> int:
        return len(self.labels)

    # element arithmetic -------------------------------------------------------
    def mul(self, a, b) -> np.ndarray:
        return self.ops.einsum("u,v,uvw->w", a, b, self.structure)

    def left_matrix(self, a) -> np.ndarray:
        """Rows: basis of the right factor; y -> a y as y @ L."""
        return self.ops.einsum("u,uvw->vw", a, self.structure)

    def right_matrix(self, b) -> np.ndarray:
        """x -> x b as x @ R."""
        return self.ops.einsum("v,uvw->uw", b, self.structure)

    def basis_vector(self, i: int) -> np.ndarray:
        e = self.ops.zeros(self.dim)
        e[i] = 1
        return e

    # structure ---------------------------------------------------------------
    def check_axioms(self) -> CheckReport:
        rep = CheckReport("algebra-axioms", checked=1)
        C = self.structure
        lhs = self.ops.einsum("uvx,xwy->uvwy", C, C)
        rhs = self.ops.einsum("vwx,uxy->uvwy", C, C)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            rep.fail(law="associativity", triple=[int(x) for x in bad[:3]])
        eye = np.eye(self.dim, dtype=np.int64)
        L, R = self.left_matrix(self.unit), self.right_matrix(self.unit)
        if not (np.array_equal(L, eye) and np.array_equal(R, eye)):
            rep.fail(law="unit")
        aug = self.augmentation
        prod_aug = self.ops.einsum("uvw,w->uv", C, aug)
        outer = self.ops.reduce(np.outer(aug, aug))
        if not np.array_equal(prod_aug, outer) or self.ops.reduce(aug @ self.unit) != 1:
            rep.fail(law="augmentation is not multiplicative")
        if self.is_graded:
            for u, v in product(range(self.dim), repeat=2):
                for w in np.nonzero(C[u, v])[0]:
                    if self.degrees[w] != self.degrees[u] + self.degrees[v]:
                        rep.fail(law="grading", pair=[u, v])
                        return rep
        return rep

    @property
    def is_graded(self) -> bool:
        return any(self.degrees)

    def augmentation_ideal(self) -> np.ndarray:
        """Basis (rows) of ker(augmentation)."""
        return self.ops.kernel(self.augmentation.reshape(1, -1))

    def _ideal_gens(self) -> np.ndarray:
        if getattr(self, "_ideal_gens_cache", None) is None:
            self._ideal_gens_cache = right_ideal_generators(self)
        return self._ideal_gens_cache

    def is_commutative(self) -> bool:
        return np.array_equal(self.structure, self.structure.transpose(1, 0, 2))

    def is_local(self) -> bool:
        """Is the augmentation ideal nilpotent?"""
        I = self.augmentation_ideal()
        power = I
        for _ in range(self.dim + 1):
            if power.shape[0] == 0:
                return True
            prods = self.ops.einsum("au,bv,uvw->abw", power, I, self.structure).reshape(-1, self.dim)
            red, piv = self.ops.rref(prods)
            power = red
        return power.shape[0] == 0

    def permuted(self, perm: Sequence[int]) -> "FinDimAlgebra":
        """Same algebra on the reordered basis new_i = old_perm[i]."""
        P = list(perm)
        inv = [0] * len(P)
        for i, q in enumerate(P):
            inv[q] = i
        C = self.structure[np.ix_(P, P)][:, :, P]
        ident = inv[self.identity_index] if self.identity_index is not None else None
        return FinDimAlgebra(self.field, C, self.unit[P], self.augmentation[P],
                             tuple(self.degrees[q] for q in P), tuple(self.labels[q] for q in P),
                             ident, self.name + " (permuted)")

    def hilbert_function(self) -> List[int]:
        top = max(self.degrees)
        h = [0] * (top + 1)
        for deg in self.degrees:
            h[deg] += 1
        return h

    def to_json(self) -> dict:
        triples = [[int(u), int(v), int(w), str(self.structure[u, v, w])]
                   for u, v, w in zip(*np.nonzero(self.structure))]
        return {"field": str(self.field), "basis": [{"label": l, "degree": d} for l, d in zip(self.labels, self.degrees)],
                "structure": triples, "unit": [str(x) for x in self.unit],
                "augmentation": [str(x) for x in self.augmentation]}

    @classmethod
    def from_json(cls, obj: dict, field: Optional[Field] = None) -> "FinDimAlgebra":
        field = field or Field.parse(obj.get("field", "QQ"))
        basis = obj["basis"]
        d = len(basis)
        C = DenseOps(field).zeros((d, d, d))
        for u, v, w, c in obj["structure"]:
            C[u, v, w] = field.parse(c) if isinstance(c, str) else field(c)
        conv = [field.parse(x) if isinstance(x, str) else field(x) for x in obj.get("unit", [1] + [0] * (d - 1))]
        aug = [field.parse(x) if isinstance(x, str) else field(x) for x in obj["augmentation"]]
        return cls(field, C, conv, aug, tuple(b.get("degree", 0) for b in basis),
                   tuple(b.get("label", f"e{i}") for i, b in enumerate(basis)), obj.get("identity_index"),
                   obj.get("name", ""))


# -- constructors -----------------------------------------------------------------

def check_group_table(table: Sequence[Sequence[int]]) -> int:
    """Validate a multiplication table; returns the index of the identity."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroup("table must be square and nonempty")
    if any(not (0 <= x < n) for row in table for x in row):
        raise NotAGroup("entries out of range")
    ident = next((e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))), None)
    if ident is None:
        raise NotAGroup("no identity element")
    for g in range(n):
        if not any(table[g][h] == ident for h in range(n)):
            raise NotAGroup(f"element {g} has no inverse")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"not associative at {(a, b, c)}")
    return ident


def group_algebra(table: Sequence[Sequence[int]], field: Field, name: str = "") -> FinDimAlgebra:
    ident = check_group_table(table)
    n = len(table)
    ops = DenseOps(field)
    C = ops.zeros((n, n, n))
    for g in range(n):
        for h in range(n):
            C[g, h, table[g][h]] = 1
    unit = [1 if g == ident else 0 for g in range(n)]
    return FinDimAlgebra(field, C, unit, [1] * n, (0,) * n, tuple(f"g{g}" for g in range(n)), ident,
                         name or f"group algebra of order {n}")


def exterior_algebra(field: Field, degrees=1) -> FinDimAlgebra:
    """Exterior algebra on generators of the given degrees (one generator for an int)."""
    degs = [degrees] if isinstance(degrees, int) else list(degrees)
    n = len(degs)
    subsets = [S for k in range(n + 1) for S in combinations(range(n), k)]
    index = {S: i for i, S in enumerate(subsets)}
    d = len(subsets)
    ops = DenseOps(field)
    C = ops.zeros((d, d, d))
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            # sign of the shuffle putting S + T in order, with graded signs
            inversions = sum(degs[s] * degs[t] for s in S for t in T if s > t)
            sign = -1 if inversions % 2 else 1
            C[index[S], index[T], index[tuple(sorted(S + T))]] = field(sign)
    aug = [1] + [0] * (d - 1)
    labels = tuple("*".join(f"t{i}" for i in S) or "1" for S in subsets)
    return FinDimAlgebra(field, C, aug, aug, tuple(sum(degs[i] for i in S) for S in subsets), labels,
                         name=f"exterior algebra on degrees {degs}")


def monomial_algebra(field: Field, relations: MonomialIdeal, name: str = "") -> FinDimAlgebra:
    """k[x_1..x_n]/J for an Artinian monomial ideal J, graded by total degree."""
    n = relations.nvars
    bound = []
    for i in range(n):
        pure = [g[i] for g in relations.gens if all(e == 0 for j, e in enumerate(g) if j != i) and g[i] > 0]
        if not pure:
            raise ValueError("monomial quotient is not finite dimensional")
        bound.append(min(pure) - 1)
    basis = sorted(standard_monomials(relations, bound), key=lambda m: (sum(m), m[::-1]))
    index = {m: i for i, m in enumerate(basis)}
    d = len(basis)
    ops = DenseOps(field)
    C = ops.zeros((d, d, d))
    for a, b in product(basis, repeat=2):
        c = tuple(x + y for x, y in zip(a, b))
        if c in index:
            C[index[a], index[b], index[c]] = 1
    aug = [1] + [0] * (d - 1)
    from .monomials import format_monomial
    return FinDimAlgebra(field, C, aug, aug, tuple(sum(m) for m in basis),
                         tuple(format_monomial(m) for m in basis), name=name or f"k[x]/{relations}")


# -- resolutions -------------------------------------------------------------------

@dataclass
class ResolutionSlice:
    """Free resolution F_N -> ... -> F_0 -> k; ``differentials[i]`` maps F_i -> F_(i-1) (i >= 1)."""

    algebra: FinDimAlgebra
    betti: List[int]
    differentials: List[np.ndarray]   # index i: array (b_i, b_(i-1), dim)
    minimal: bool

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    def linear_matrix(self, i: int) -> np.ndarray:
        """k-matrix of d_i: F_i -> F_(i-1), rows = (generator, basis) coordinates of F_i."""
        A = self.algebra
        D = self.differentials[i]
        b, bp, d = D.shape
        R = A.ops.einsum("jkv,uvw->jukw", D, A.structure)
        return R.reshape(b * d, bp * d)

    def check_d_squared(self) -> bool:
        for i in range(2, self.length + 1):
            prod_ = self.algebra.ops.matmul(self.linear_matrix(i), self.linear_matrix(i - 1))
            if np.any(prod_ != 0):
                return False
        return True

    def entries_in_augmentation_ideal(self) -> bool:
        aug = self.algebra.augmentation
        return all(not np.any(self.algebra.ops.reduce(D @ aug) != 0) for D in self.differentials[1:])

    def check_exact(self) -> bool:
        """dim ker d_i = rank d_(i+1) for 1 <= i < N, and the augmentation is onto k."""
        A = self.algebra
        d = A.dim
        prev_rank = A.ops.rank(A.augmentation.reshape(-1, 1))
        kernel = d - prev_rank
        for i in range(1, self.length + 1):
            r = A.ops.rank(self.linear_matrix(i))
            if r != kernel:
                return False
            kernel = self.betti[i] * d - r
        return True


def _left_action_span(A: FinDimAlgebra, elems: np.ndarray, b: int, by: np.ndarray) -> np.ndarray:
    """Rows a * x for a in ``by`` and x in ``elems`` (elements of A^b, flattened)."""
    if elems.shape[0] == 0 or by.shape[0] == 0:
        return A.ops.zeros((0, b * A.dim))
    L = A.ops.einsum("au,uvw->avw", by, A.structure)            # left multiplication matrices
    X = elems.reshape(elems.shape[0], b, A.dim)
    out = A.ops.einsum("xjv,avw->axjw", X, L)
    return out.reshape(-1, b * A.dim)


def _reduce_rows(ops: DenseOps, rows: np.ndarray, red: np.ndarray, piv: List[int]) -> np.ndarray:
    """Reduce rows modulo the row space of an rref matrix (zeroes its pivot columns)."""
    if not piv or rows.shape[0] == 0:
        return rows
    return ops.reduce(rows - ops.matmul(rows[:, piv], red))


def _greedy_span(ops: DenseOps, candidates: np.ndarray, closure, base=None) -> List[int]:
    """Indices of candidates picked in order until closure(chosen) plus base spans all of them.

    ``closure(v)`` returns the rows spanned by the submodule generated by v.
    """
    ncols = candidates.shape[1]
    span = base if base is not None else ops.zeros((0, ncols))
    red, piv = ops.rref(span) if span.shape[0] else (span, [])
    chosen = []
    rest = _reduce_rows(ops, candidates, red, piv)
    while True:
        nz = np.nonzero(np.any(rest != 0, axis=1))[0]
        if nz.size == 0:
            return chosen
        i = int(nz[0])
        chosen.append(i)
        red, piv = ops.rref(np.concatenate([red, closure(candidates[i])]))
        rest = _reduce_rows(ops, candidates, red, piv)


def right_ideal_generators(A: FinDimAlgebra) -> np.ndarray:
    """Elements u_t with sum u_t A equal to the augmentation ideal."""
    I = A.augmentation_ideal()
    if I.shape[0] == 0:
        return I
    # the rows of left_matrix(u) are the products u e_v, spanning u A
    picked = _greedy_span(A.ops, I, A.left_matrix)
    return I[picked]


def _select_generators(A: FinDimAlgebra, K: np.ndarray, b: int, local: bool) -> np.ndarray:
    ops = A.ops
    if K.shape[0] == 0:
        return K
    if local:
        # K / I K; I K = sum of u_t K for right-ideal generators u_t of I
        IK = _left_action_span(A, K, b, A._ideal_gens())
        red, piv = ops.rref(IK) if IK.shape[0] else (IK, [])
        quotient = _reduce_rows(ops, K, red, piv)
        _, keep = ops.rref(quotient.T)
        return K[keep]
    return _random_generators(A, K, b)


def _random_generators(A: FinDimAlgebra, K: np.ndarray, b: int, seed: int = 0) -> np.ndarray:
    """Generators of the module K built from seeded random combinations of its basis.

    Away from the local case a basis vector usually generates only a small
    piece of K, while a generic element of a cyclic summand generates all of
    it, so this keeps Betti numbers close to minimal.
    """
    ops = A.ops
    rng = np.random.default_rng(seed)
    full = np.stack([A.basis_vector(i) for i in range(A.dim)])
    red, piv = ops.zeros((0, K.shape[1])), []
    chosen = []
    rest = K
    while np.any(rest != 0):
        live = rest[np.any(rest != 0, axis=1)]
        for _ in range(20):
            coeffs = rng.integers(0, ops.p or 7, size=live.shape[0]) - (0 if ops.p else 3)
            v = ops.reduce(ops.array(coeffs) @ live)
            if np.any(v != 0):
                break
        else:
            v = live[0]
        chosen.append(v)
        red, piv = ops.rref(np.concatenate([red, _left_action_span(A, v.reshape(1, -1), b, full)]))
        rest = _reduce_rows(ops, K, red, piv)
    return np.stack(chosen)


def minimal_resolution(A: FinDimAlgebra, N: int = 8) -> ResolutionSlice:
    """Free resolution of k through F_N.

    For local algebras (nilpotent augmentation ideal) generators are a basis
    of K / I K, which makes the resolution minimal.  Otherwise generators are
    seeded random combinations added until they span the kernel as a module;
    that resolution is exact but need not be minimal.
    """
    if N < 0 or N > 20:
        raise ValueError("N must lie in 0..20")
    ops = A.ops
    d = A.dim
    local = A.is_local()
    betti = [1]
    diffs: List[np.ndarray] = [ops.zeros((1, 0, d))]
    K = A.augmentation_ideal()     # kernel of F_0 -> k, coordinates of F_0 = A
    for i in range(1, N + 1):
        b_prev = betti[-1]
        gens = _select_generators(A, K, b_prev, local)
        b = gens.shape[0]
        D = gens.reshape(b, b_prev, d) if b else ops.zeros((0, b_prev, d))
        betti.append(b)
        diffs.append(D)
        if b == 0:
            K = ops.zeros((0, 0))
            continue
        sl = ResolutionSlice(A, betti, diffs, local)
        K = ops.left_kernel(sl.linear_matrix(i))
    return ResolutionSlice(A, betti, diffs, local)


# -- Ext -------------------------------------------------------------------------------

def _hom_into_algebra(res: ResolutionSlice, i: int) -> np.ndarray:
    """Coboundary Hom(F_(i-1), A) -> Hom(F_i, A), both identified with A^b; y @ M convention."""
    A = res.algebra
    D = res.differentials[i]
    b, bp, d = D.shape
    L = A.ops.einsum("jku,uvw->kvjw", D, A.structure)
    return L.reshape(bp * d, b * d)


def ext_k_A(A: FinDimAlgebra, N: int = 6, resolution: Optional[ResolutionSlice] = None) -> List[int]:
    """dim Ext^i_A(k, A) for i = 0..N."""
    res = resolution or minimal_resolution(A, N + 1)
    ops = A.ops
    d = A.dim
    ranks = [0]
    for i in range(1, N + 2):
        M = _hom_into_algebra(res, i)
        ranks.append(ops.rank(M) if M.size else 0)
    return [res.betti[i] * d - ranks[i + 1] - ranks[i] for i in range(N + 1)]


def _hom_into_k(res: ResolutionSlice, i: int) -> np.ndarray:
    A = res.algebra
    D = res.differentials[i]
    return A.ops.einsum("jku,u->kj", D, A.augmentation)


def ext_k_k(A: FinDimAlgebra, N: int, resolution: Optional[ResolutionSlice] = None) -> List[int]:
    res = resolution or minimal_resolution(A, N + 1)
    ops = A.ops
    ranks = [0] + [ops.rank(_hom_into_k(res, i)) for i in range(1, N + 2)]
    return [res.betti[i] - ranks[i + 1] - ranks[i] for i in range(N + 1)]


@dataclass
class ExtAlgebra:
    dims: List[int]
    products: Dict[Tuple[int, int, int, int], List]   # (m, a, n, b) -> coordinates in degree m + n
    representatives: List[np.ndarray]                # cocycles on generators of F_n, as rows

    def product(self, m: int, a: int, n: int, b: int):
        return self.products[(m, a, n, b)]


def _cohomology_basis(ops: DenseOps, Z: np.ndarray, B: np.ndarray):
    """Representatives of Z / B and a coordinate function for cocycles."""
    bred, bpiv = ops.rref(B) if B.shape[0] else (B, [])
    reps = []
    basis = bred
    r = len(bpiv)
    for v in Z:
        trial = np.concatenate([basis, v.reshape(1, -1)]) if basis.shape[0] else v.reshape(1, -1)
        red, piv = ops.rref(trial)
        if len(piv) > r:
            reps.append(v)
            basis, r = red, len(piv)
    reps = np.stack(reps) if reps else ops.zeros((0, Z.shape[1]))
    full = np.concatenate([reps, B]) if B.shape[0] else reps

    def coords(v):
        if reps.shape[0] == 0:
            return []
        x = ops.solve_left(full, v.reshape(1, -1))[0]
        return [x[i] for i in range(reps.shape[0])]

    return reps, coords


def ext_algebra(A: FinDimAlgebra, N: int = 8) -> ExtAlgebra:
    """Ext_A(k, k) through degree N with Yoneda products of basis classes.

    A cocycle eta on F_n is lifted to a chain map eta_t: F_(n+t) -> F_t by
    solving d_t eta_t = eta_(t-1) d_(n+t) generator by generator; then
    xi . eta = xi o eta_m for xi of degree m.
    """
    if N > 12:
        raise ValueError("N must be at most 12")
    res = minimal_resolution(A, N + 1)
    ops = A.ops
    d = A.dim
    reps, coords = [], []
    dims = []
    for n in range(N + 1):
        # cocycles z @ E_(n+1) = 0; coboundaries are the rows of E_n
        Z = ops.left_kernel(_hom_into_k(res, n + 1))
        B = _hom_into_k(res, n) if n > 0 else ops.zeros((0, res.betti[0]))
        R, c = _cohomology_basis(ops, Z, B)
        reps.append(R)
        coords.append(c)
        dims.append(R.shape[0])
    mats = [None] + [res.linear_matrix(i) for i in range(1, N + 1)]
    products = {}
    for n in range(N + 1):
        for bi in range(dims[n]):
            eta = reps[n][bi]
            # eta_0: F_n -> F_0 = A, generator j -> eta_j * 1
            lift = ops.zeros((res.betti[n], 1, d))
            lift[:, 0, :] = np.outer(eta, A.unit) if not ops.p else np.outer(eta, A.unit) % ops.p
            lifts = [lift]
            for t in range(1, N - n + 1):
                Dn = res.differentials[n + t]             # (b_(n+t), b_(n+t-1), d)
                prev = lifts[-1]                          # (b_(n+t-1), b_(t-1), d)
                # rhs_j = sum_k D[j,k] * prev[k]  (left multiplication, componentwise)
                rhs = ops.einsum("jku,kcv,uvw->jcw", Dn, prev, A.structure)
                rhs = rhs.reshape(res.betti[n + t], -1)
                X = ops.solve_left(mats[t], rhs)
                lifts.append(X.reshape(res.betti[n + t], res.betti[t], d))
            for m in range(N - n + 1):
                comp = ops.einsum("jcw,w->jc", lifts[m], A.augmentation)   # (b_(n+m), b_m)
                for ai in range(dims[m]):
                    xi = reps[m][ai]
                    val = ops.reduce(comp @ xi)
                    products[(m, ai, n, bi)] = coords[m + n](val)
    return ExtAlgebra(dims, products, reps)


def _identity(ops: DenseOps, n: int) -> np.ndarray:
    out = ops.zeros((n, n))
    for i in range(n):
        out[i, i] = 1
    return out


def polynomial_certificate(E: ExtAlgebra, N: int) -> CheckReport:
    """Dims (1,1,...,1) and every power of the degree-one class nonzero: a polynomial ring on one class."""
    rep = CheckReport("polynomial-certificate", checked=N + 1)
    if E.dims[:N + 1] != [1] * (N + 1):
        rep.fail(reason="dimensions are not all one", dims=E.dims[:N + 1])
        return rep
    for n in range(N):
        c = E.product(1, 0, n, 0)
        if not any(x != 0 for x in c):
            rep.fail(reason=f"x * x^{n} vanishes", degree=n + 1)
        c2 = E.product(n, 0, 1, 0)
        if [str(x) for x in c2] != [str(x) for x in c]:
            rep.fail(reason="products do not commute", degree=n + 1)
    return rep


# -- socle, Frobenius, symmetry ------------------------------------------------------

def socle(A: FinDimAlgebra, two_sided: bool = False) -> np.ndarray:
    """Basis (rows) of {a : x a = 0 for x in the augmentation ideal} (and a x = 0 if two-sided)."""
    I = A.augmentation_ideal()
    if I.shape[0] == 0:
        return np.stack([A.basis_vector(i) for i in range(A.dim)])
    blocks = [A.left_matrix(x) for x in I]           # a -> x a as a @ L_x
    if two_sided:
        blocks += [A.right_matrix(x) for x in I]
    M = np.concatenate(blocks, axis=1)
    return A.ops.left_kernel(M)


def socle_dim(A: FinDimAlgebra, two_sided: bool = False) -> int:
    return socle(A, two_sided).shape[0]


def socle_degrees(A: FinDimAlgebra) -> Dict[int, int]:
    """Dimension of the socle in each degree of a graded algebra."""
    I = A.augmentation_ideal()
    out = {}
    for deg in sorted(set(A.degrees)):
        idx = [i for i, e in enumerate(A.degrees) if e == deg]
        blocks = [A.left_matrix(x)[idx] for x in I]
        if not blocks:
            out[deg] = len(idx)
            continue
        k = A.ops.left_kernel(np.concatenate(blocks, axis=1)).shape[0]
        if k:
            out[deg] = k
    return out


def top_degree_functional(A: FinDimAlgebra) -> np.ndarray:
    """Coefficient of the last basis element of top degree."""
    top = max(A.degrees)
    last = max(i for i, e in enumerate(A.degrees) if e == top)
    return A.basis_vector(last)


@dataclass
class FrobeniusResult:
    nondegenerate: bool
    rank: int
    witness: Optional[list]

    def __bool__(self):
        return self.nondegenerate


def frobenius_check(A: FinDimAlgebra, functional=None) -> FrobeniusResult:
    """Is (a, b) -> lambda(ab) nondegenerate?  Witness: a vector in its left radical."""
    if functional is None:
        if A.identity_index is None:
            raise NoFunctionalSupplied("no canonical functional for an algebra that is not a group algebra")
        functional = A.basis_vector(A.identity_index)
    lam = A.ops.array(functional)
    G = A.ops.einsum("uvw,w->uv", A.structure, lam)
    r = A.ops.rank(G)
    witness = None
    if r < A.dim:
        witness = [str(x) for x in A.ops.left_kernel(G)[0]]
    return FrobeniusResult(r == A.dim, r, witness)


def hilbert_symmetry_check(A: FinDimAlgebra) -> CheckReport:
    """Hilbert function symmetric about the socle degree when the socle is one dimensional."""
    rep = CheckReport("hilbert-symmetry", checked=1)
    h = A.hilbert_function()
    sd = socle_degrees(A)
    total = sum(sd.values())
    rep.details.update({"hilbert": h, "socle_dim": total})
    if total != 1:
        rep.details["exempt"] = True
        return rep
    s = next(iter(sd))
    rep.details["socle_degree"] = s
    for i in range(s + 1):
        if h[i] != (h[s - i] if 0 <= s - i < len(h) else 0):
            rep.fail(degree=i, dim=h[i], mirror=h[s - i])
    if len(h) != s + 1:
        rep.fail(reason="algebra has elements above the socle degree")
    return rep


def gorenstein_report(A: FinDimAlgebra, N: int = 8) -> dict:
    """Ext(k, A) through N together with the socle verdict (exact for commutative Artinian A)."""
    ext = ext_k_A(A, N)
    out = {"ext_k_A": ext, "ext_total": sum(ext), "through": N}
    if A.is_commutative():
        sd = socle_dim(A)
        out["socle_dim"] = sd
        out["gorenstein"] = sd == 1
        if A.is_graded:
            degs = socle_degrees(A)
            if sd == 1:
                out["gorenstein_shift"] = next(iter(degs))
    else:
        out["gorenstein_up_to_N"] = sum(ext) == 1
    return out
