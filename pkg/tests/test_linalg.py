from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from loccoh.errors import CompositionNotZero, ShapeMismatch
from loccoh.linalg import (QQ, ExactMatrix, Field, ModPDense, homology_dim, induced_map_rank,
                           kernel_basis, rank, solve)

F2, F3 = Field(2), Field(3)


def M(rows, field=QQ, cols=None):
    return ExactMatrix.from_dense(rows, field, cols)


def test_rank_examples():
    assert rank(ExactMatrix.identity(2)) == 2
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(M([[1, 1], [1, 1]], F2)) == 1


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    assert len(kernel_basis(ExactMatrix.zero(2, 3))) == 3
    (v,) = kernel_basis(M([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0


def test_homology_examples():
    assert homology_dim(ExactMatrix.zero(3, 0), ExactMatrix.zero(0, 3)) == 3
    assert homology_dim(ExactMatrix.identity(2), ExactMatrix.zero(0, 2)) == 0
    assert homology_dim(M([[1], [1]]), M([[1, -1]])) == 0


def test_homology_rejects_bad_input():
    with pytest.raises(CompositionNotZero):
        homology_dim(M([[1], [0]]), M([[1, 0]]))
    with pytest.raises(ShapeMismatch):
        homology_dim(M([[1], [0]]), M([[1, 0, 0]]))


def test_no_stored_zeros():
    m = M([[0, 3], [0, 0]], F3)
    assert m.entries == {}


def test_field_parse():
    assert Field.parse("QQ") == QQ
    assert Field.parse("F2").characteristic == 2
    assert Field.parse("GF(5)").characteristic == 5
    with pytest.raises(ValueError):
        Field(4)


small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_side=6):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    return [[draw(small) for _ in range(c)] for _ in range(r)], c


@given(matrices())
def test_rank_matches_sympy_over_rationals(mc):
    rows, c = mc
    mine = rank(M(rows, cols=c))
    theirs = sympy.Matrix(len(rows), c, [x for r in rows for x in r]).rank() if rows else 0
    assert mine == theirs
    assert mine <= min(len(rows), c)
    assert rank(M(rows, cols=c).transpose()) == mine


@given(matrices())
def test_rank_nullity(mc):
    rows, c = mc
    m = M(rows, cols=c)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == c
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


def _brute_kernel_size(rows, c, p):
    count = 0
    for v in product(range(p), repeat=c):
        if all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows):
            count += 1
    return count


@given(matrices(max_side=5), st.sampled_from([2, 3]))
def test_rank_mod_p_by_enumeration(mc, p):
    rows, c = mc
    F = Field(p)
    r = rank(M(rows, F, c))
    assert p ** (c - r) == _brute_kernel_size(rows, c, p)
    dense = np.array(rows, dtype=np.int64).reshape(len(rows), c)
    assert ModPDense(p).rank(dense) == r


@given(st.integers(1, 70), st.integers(1, 70), st.integers(0, 2 ** 31))
def test_gf2_packed_rank_matches_general(r, c, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, size=(r, c))
    packed = ModPDense(2)
    red, piv = packed.rref(a)
    assert len(piv) == len(packed._rref_general(a % 2)[1])
    ker = packed.kernel_basis(a)
    assert ker.shape[0] == c - len(piv)
    assert not ((a @ ker.T) % 2).any()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(small, min_size=3, max_size=3))
def test_solve_consistent(rows, x):
    m = M(rows, cols=3)
    b = m.apply([Fraction(v) for v in x])
    sol = solve(m, b)
    assert sol is not None and m.apply(sol) == b


def test_solve_inconsistent():
    assert solve(M([[1, 1], [1, 1]]), [1, 2]) is None


@st.composite
def composable(draw, p):
    """V -> W -> U with d_out . d_in = 0, built from a random splitting."""
    n = draw(st.integers(1, 6))
    a = draw(st.integers(0, n))
    # d_in maps onto the first a coordinates, d_out kills them
    v = draw(st.integers(0, 4))
    u = draw(st.integers(0, 4))
    vals = st.integers(0, p - 1) if p else small
    d_in = [[draw(vals) if i < a else 0 for _ in range(v)] for i in range(n)]
    d_out = [[draw(vals) if j >= a else 0 for j in range(n)] for _ in range(u)]
    return d_in, d_out, n, v


@given(st.data(), st.sampled_from([0, 2, 3, 5, 7]))
def test_homology_dim_matches_independent_count(data, p):
    d_in, d_out, n, v = data.draw(composable(p))
    F = Field(p)
    A = M(d_in, F, v) if v else ExactMatrix.zero(n, 0, F)
    B = M(d_out, F, n) if d_out else ExactMatrix.zero(0, n, F)
    h = homology_dim(A, B)
    if p:
        ra = ModPDense(p).rank(np.array(d_in, dtype=np.int64).reshape(n, v)) if v else 0
        rb = ModPDense(p).rank(np.array(d_out, dtype=np.int64).reshape(len(d_out), n)) if d_out else 0
    else:
        ra = sympy.Matrix(n, v, [x for r in d_in for x in r]).rank() if v else 0
        rb = sympy.Matrix(len(d_out), n, [x for r in d_out for x in r]).rank() if d_out else 0
    assert h == n - ra - rb >= 0


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_prime_field_axioms(p, a, b, c):
    F = Field(p)
    a, b, c = F(a), F(b), F(c)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one


def test_induced_map_rank_identity_and_zero():
    zero_in = ExactMatrix.zero(2, 0)
    zero_out = ExactMatrix.zero(0, 2)
    assert induced_map_rank(zero_in, zero_out, ExactMatrix.identity(2), zero_in) == 2
    assert induced_map_rank(zero_in, zero_out, ExactMatrix.zero(2, 2), zero_in) == 0
