import pytest
from hypothesis import given, strategies as st

from loccoh.errors import TooManyGenerators
from loccoh.ext_oracle import (colimit_map_ranks, compare_oracles, ext_dims, quotient_power, stable_ext,
                               taylor_resolution)
from loccoh.koszul_cech import local_cohomology
from loccoh.linalg import Field, QQ
from loccoh.monomials import MonomialIdeal, RingSpec
from loccoh.tables import DegreeBox

R1, R2, R3 = RingSpec(1), RingSpec(2), RingSpec(3)
X, Y = (1, 0), (0, 1)
F2 = Field(2)


def test_taylor_shapes():
    T = taylor_resolution(R1, [(1,)])
    assert T.lcms[1] == ((1,),)
    T = taylor_resolution(R2, [X, Y])
    assert T.lcms[2] == ((1, 1),)
    T = taylor_resolution(R2, [(2, 0), (1, 1)])
    assert T.lcms[2] == ((2, 1),)


def test_taylor_generator_limit():
    gens = [tuple(1 if j == i else 0 for j in range(13)) for i in range(13)]
    with pytest.raises(TooManyGenerators):
        taylor_resolution(RingSpec(13), gens)


@st.composite
def ideal_gens(draw, max_n=3, max_gens=4, max_exp=3):
    n = draw(st.integers(1, max_n))
    gens = [tuple(draw(st.integers(0, max_exp)) for _ in range(n)) for _ in range(draw(st.integers(1, max_gens)))]
    gens = [g for g in gens if any(g)] or [(1,) + (0,) * (n - 1)]
    return n, gens


@given(ideal_gens(), st.data())
def test_taylor_is_a_resolution(ng, data):
    n, gens = ng
    T = taylor_resolution(RingSpec(n), gens)
    b = tuple(data.draw(st.integers(0, 5)) for _ in range(n))
    assert T.check_d_squared(b)
    h = T.homology(b)
    in_ideal = any(all(x <= y for x, y in zip(g, b)) for g in gens)
    assert h == [0 if in_ideal else 1] + [0] * (len(gens))


def test_ext_examples():
    t = ext_dims(R1, [(1,)], 2, None, 4, i=1)
    assert t.nonzero(1) == {(-2,): 1, (-1,): 1}
    t = ext_dims(R2, [X, Y], 3, None, 3, i=0)
    assert t.nonzero() == {}
    t = ext_dims(R2, [X, Y], 2, None, 3)
    assert max(t.nonzero_indices()) <= 2


def test_quotient_powers():
    assert quotient_power([(1, 0), (0, 1)], 3) == ((3, 0), (0, 3))
    assert set(quotient_power([(1, 0), (0, 1)], 2, "ordinary", 2)) == {(2, 0), (1, 1), (0, 2)}


def test_colimit_maps_examples():
    for r in range(1, 5):
        d0, d1, isos = colimit_map_ranks(R1, [(1,)], r, (-1,))
        assert d0[1] == d1[1] == 1 and isos[1]
        d0, d1, isos = colimit_map_ranks(R2, [X, Y], r, (-1, -1))
        assert d0[2] == d1[2] == 1 and isos[2]
    d0, d1, isos = colimit_map_ranks(R1, [(1,)], 1, (0,))
    assert d0[0] == d1[0] == 0


@given(ideal_gens(max_n=2, max_gens=3, max_exp=2), st.integers(1, 3), st.data())
def test_solved_and_diagonal_lifts_induce_the_same_maps(ng, r, data):
    n, gens = ng
    a = tuple(data.draw(st.integers(-4, 1)) for _ in range(n))
    assert colimit_map_ranks(RingSpec(n), gens, r, a, lift="solve") == \
        colimit_map_ranks(RingSpec(n), gens, r, a, lift="diagonal")


def test_stable_ext_examples():
    assert stable_ext(R1, [(1,)], None, 4) == local_cohomology(R1, [(1,)], None, 4)
    # M = R/I is I-torsion: H^0 = M
    t = stable_ext(R2, [(1, 0), (0, 2)], [(1, 0), (0, 2)], 3)
    assert t.nonzero() == {(0, (0, 0)): 1, (0, (0, 1)): 1}
    assert stable_ext(R2, [(0, 0)], None, 2).nonzero() == {}


def test_ordinary_powers_agree_on_small_case():
    t = stable_ext(R2, [X, Y], None, 2, r_max=6, kind="ordinary", strict=False)
    assert t == local_cohomology(R2, [X, Y], None, 2)
    assert not t.meta["certified"]


@given(ideal_gens(max_n=2, max_gens=3, max_exp=2), st.sampled_from([QQ, F2]), st.booleans())
def test_three_oracles_agree_random(ng, field, with_module):
    n, gens = ng
    M = [tuple(1 for _ in range(n))] if with_module else None
    rep = compare_oracles(RingSpec(n, field), gens, M, 3, s_max=6, r_max=6)
    assert rep.passed, rep.witness
