from itertools import product

import pytest
from hypothesis import given, strategies as st

from loccoh.errors import EmptyIdeal, NotStabilized, RadicalsDiffer
from loccoh.koszul_cech import (build_cech, build_stable_koszul, build_unstable_koszul, cech_cohomology,
                                koszul_colimit_cohomology, les_check, local_cohomology,
                                radical_invariance_check, vanishing_report)
from loccoh.linalg import Field, QQ
from loccoh.monomials import MonomialIdeal, RingSpec
from loccoh.tables import DegreeBox, DegreeTable

R1, R2, R3 = RingSpec(1), RingSpec(2), RingSpec(3)
X, Y = (1, 0), (0, 1)
F2 = Field(2)


def variable_ideal_table(n, exps, box):
    """Closed form for H^*_I(k[x_1..x_n]) with I generated by powers x_i^e_i of distinct variables.

    Only H^|S| is nonzero, one-dimensional in degrees negative on S and nonnegative off S.
    """
    S = [i for i, e in enumerate(exps) if e]
    t = DegreeTable(box, (0, len(S)))
    for a in box:
        if all(a[i] <= -1 for i in S) and all(a[j] >= 0 for j in range(n) if j not in S):
            t.set(len(S), a, 1)
    return t


# -- builders -----------------------------------------------------------------------

def test_unstable_koszul_principal():
    K = build_unstable_koszul(R1, [(1,)], 1)
    hits = {a: K.cohomology(a) for a in DegreeBox.cube(1, 4)}
    assert all(h[0] == 0 for h in hits.values())
    assert sum(h[1] for h in hits.values()) == 1        # k[x]/(x), one degree


def test_unstable_koszul_two_generators():
    K = build_unstable_koszul(R2, [X, Y], 1)
    assert [len(t.summands) for t in K.terms] == [1, 2, 1]
    assert all(K.check_d_squared(a) for a in DegreeBox.cube(2, 2))


def test_repeated_generator_matches_single():
    box = DegreeBox.cube(1, 4)
    assert local_cohomology(R1, [(1,), (1,)], None, box) == local_cohomology(R1, [(1,)], None, box)


def test_cech_shapes():
    assert [len(t.summands) for t in build_cech(R1, [(1,)]).terms] == [1]
    C = build_cech(R2, [X, Y])
    assert [len(t.summands) for t in C.terms] == [2, 1]
    assert [t.summands[0].inverted for t in C.terms] == [X, (1, 1)]
    assert [len(t.summands) for t in build_cech(R3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).terms] == [3, 3, 1]


def test_cech_euler_example():
    C = build_cech(R1, [(1,)])
    assert C.dims((-1,)) == [1] and C.euler_check((-1,))
    K = build_unstable_koszul(R2, [X, Y], 1)
    assert K.dims((0, 0)) == [1, 2, 1] and K.euler_check((0, 0))


# -- local cohomology ---------------------------------------------------------------

def test_principal_local_cohomology():
    t = local_cohomology(R1, [(1,)], None, 4)
    assert t.nonzero(0) == {}
    assert t.nonzero(1) == {(a,): 1 for a in range(-4, 0)}


def test_unit_ideal_kills_everything():
    for C in (local_cohomology(R2, [(0, 0)], None, 2), koszul_colimit_cohomology(R2, [(0, 0)], None, 2)):
        assert C.nonzero() == {}


def test_maximal_ideal_of_plane():
    box = DegreeBox.cube(2, 4)
    for field in (QQ, F2):
        t = local_cohomology(RingSpec(2, field), [X, Y], None, box)
        assert t == variable_ideal_table(2, (1, 1), box)
        assert set(t.nonzero(2)) == {(-a, -b) for a in range(1, 5) for b in range(1, 5)}


def test_zero_ideal():
    with pytest.raises(EmptyIdeal):
        local_cohomology(R1, [], None, 2)
    t = local_cohomology(R1, MonomialIdeal.zero(1), [(3,)], 4, allow_zero_ideal=True)
    assert t.nonzero(0) == {(0,): 1, (1,): 1, (2,): 1}


def test_koszul_colimit_examples():
    t = koszul_colimit_cohomology(R1, [(1,)], None, 4, s_max=6)
    assert t.get(1, (-1,)) == 1 and t.get(0, (0,)) == 0 and t.get(1, (0,)) == 0
    assert t == local_cohomology(R1, [(1,)], None, 4)


def test_koszul_colimit_refuses_premature_stability():
    # k[x]/(x^3) at (x): the transition maps in degree -4 are isomorphisms
    # between zero spaces at s = 1, 2, 3 before the class x^2 * x^-4... appears
    with pytest.raises(NotStabilized) as err:
        koszul_colimit_cohomology(R1, [(1,)], [(3,)], 4, s_max=6)
    assert (-4,) in [tuple(a) for a in err.value.degrees]
    t = koszul_colimit_cohomology(R1, [(1,)], [(3,)], 4, s_max=8)
    assert t == local_cohomology(R1, [(1,)], [(3,)], 4)
    assert t.meta["heuristic_disagreements"]


def test_non_strict_colimit_flags_degrees():
    t = koszul_colimit_cohomology(R1, [(1,)], [(3,)], 4, s_max=6, strict=False)
    assert (-4,) in t.unstable


def test_cech_examples():
    t = cech_cohomology(R1, [(1,)], None, 3)
    assert t.nonzero(0) == {(a,): 1 for a in range(-3, 4)}
    u = cech_cohomology(R2, [(0, 0)], [(2, 0)], 2)
    assert u.nonzero(0) == {(a, b): 1 for a in range(0, 2) for b in range(0, 3)}
    assert u.nonzero_indices() == [0]
    h = local_cohomology(R2, [X, Y], None, 3)
    c = cech_cohomology(R2, [X, Y], None, 3)
    assert c.nonzero(1) == h.nonzero(2)


def test_les_examples():
    rep = les_check(R1, [(1,)], None, 2)
    assert rep.passed and rep.checked == 5
    assert les_check(R2, [(0, 0)], None, 2).passed


def test_radical_examples():
    assert radical_invariance_check(R2, [X, Y], [(2, 0), (0, 3), (1, 1)], None, 3).passed
    assert radical_invariance_check(R1, [(1,)], [(5,)], None, 4).passed
    with pytest.raises(RadicalsDiffer):
        radical_invariance_check(R2, [X], [Y], None, 2)


def test_vanishing_examples():
    r = vanishing_report(R2, [X, Y], None, 4)
    assert r.passed and (r.details["computed_depth"], r.details["krull_dim"]) == (2, 2)
    r = vanishing_report(R2, [X, Y], [(1, 1)], 4)
    assert r.passed and (r.details["computed_depth"], r.details["krull_dim"]) == (1, 1)
    r = vanishing_report(R2, [X, Y], [(2, 0), (1, 1)], 4)
    assert r.passed and r.details["computed_depth"] == 0


def test_table_json_round_trip():
    t = local_cohomology(R2, [X, Y], [(1, 1)], 2)
    assert DegreeTable.from_json(t.to_json()) == t
    assert t.to_csv().splitlines()[0] == "i,a,dim"
    assert "box" in t.render()


# -- properties ---------------------------------------------------------------------

@st.composite
def instances(draw, max_n=3, max_gens=3, max_exp=3):
    n = draw(st.integers(1, max_n))
    gens = [tuple(draw(st.integers(0, max_exp)) for _ in range(n)) for _ in range(draw(st.integers(1, max_gens)))]
    if draw(st.booleans()):
        J = [tuple(draw(st.integers(0, 2)) for _ in range(n)) for _ in range(draw(st.integers(1, 2)))]
        J = [j for j in J if any(j)] or None
    else:
        J = None
    field = draw(st.sampled_from([QQ, F2]))
    return RingSpec(n, field), gens, J


@given(instances(), st.data())
def test_complexes_square_to_zero_and_conserve_euler(inst, data):
    ring, gens, J = inst
    a = tuple(data.draw(st.integers(-3, 3)) for _ in range(ring.nvars))
    for C in (build_stable_koszul(ring, gens, J), build_cech(ring, gens, J),
              build_unstable_koszul(ring, gens, data.draw(st.integers(1, 3)), J)):
        assert C.check_d_squared(a)
        assert C.euler_check(a)


@given(st.integers(1, 3), st.data())
def test_variable_powers_match_closed_form(n, data):
    exps = tuple(data.draw(st.integers(0, 3)) for _ in range(n))
    if not any(exps):
        return
    gens = [tuple(e if j == i else 0 for j in range(n)) for i, e in enumerate(exps) if e]
    box = DegreeBox.cube(n, 3)
    assert local_cohomology(RingSpec(n), gens, None, box) == variable_ideal_table(n, exps, box)


@given(instances(max_n=2))
def test_les_holds_everywhere(inst):
    ring, gens, J = inst
    assert les_check(ring, gens, J, 2).passed


@given(instances(max_n=3), st.data())
def test_radical_invariance_random(inst, data):
    ring, gens, J = inst
    # same radical: raise each generator to a random positive power and add a multiple
    powers = [tuple(data.draw(st.integers(1, 3)) * e for e in g) for g in gens]
    extra = tuple(e + 1 for e in gens[0])
    assert radical_invariance_check(ring, gens, powers + [extra], J, 2).passed


@given(instances(max_n=3))
def test_vanishing_bounds_random(inst):
    ring, gens, J = inst
    assert vanishing_report(ring, gens, J, 3).passed
