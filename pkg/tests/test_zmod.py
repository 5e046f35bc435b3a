import pytest
from hypothesis import given, strategies as st

from loccoh.errors import OutsideClass
from loccoh.zmod import (ALL_ATOMS, Atom, PLocalObject, apply_derived, cech_homology_sequence, cech_p,
                         certify_exact, functor_laws_check, gamma_oracle, gamma_p, gamma_sequence,
                         hom_ext, lambda_p, parse_object, random_sums, truncation_oracle, uct_sequences,
                         verify_tables)

P = PLocalObject.of
ZERO = PLocalObject()


def pair(d):
    return tuple(d)


def test_atom_parsing():
    assert Atom.parse("Z/p^3") == Atom("Z/p^k", 3)
    assert Atom.parse("Zp8") == Atom.parse("Zpinf") == Atom.parse("Qp/Zp")
    assert parse_object("Z + Z/p^2") == P(["Z", "Z/p^2"])
    with pytest.raises(ValueError):
        Atom.parse("Z/7")


def test_hom_ext_examples():
    assert hom_ext("Zpinf", "Zpinf") == (P(["Zp"]), ZERO)
    assert hom_ext("Zpinf", "Z") == (ZERO, P(["Zp"]))
    for B in ALL_ATOMS:
        assert hom_ext("Z", P([B])) == (P([B]), ZERO)
    with pytest.raises(OutsideClass):
        hom_ext("Zp", "Z")
    with pytest.raises(OutsideClass):
        hom_ext("Z[1/p]", "Z")


def test_gamma_examples():
    assert pair(gamma_p("Z")) == (ZERO, P(["Zpinf"]))
    for k in (1, 2, 5):
        assert pair(gamma_p(f"Z/p^{k}")) == (P([f"Z/p^{k}"]), ZERO)
    assert pair(gamma_p("Z[1/p]")) == (ZERO, ZERO)


def test_lambda_examples():
    assert pair(lambda_p("Z")) == (P(["Zp"]), ZERO)
    assert pair(lambda_p("Zpinf")) == (ZERO, P(["Zp"]))
    assert pair(lambda_p("Z/p^3")) == (P(["Z/p^3"]), ZERO)
    # Zp is already complete
    assert pair(lambda_p("Zp")) == (P(["Zp"]), ZERO)


def test_cech_examples():
    assert cech_p("Z").cohomology0 == P(["Z[1/p]"])
    assert cech_p("Z/p^2").cohomology0 == ZERO
    ok, steps = certify_exact(cech_homology_sequence("Z"))
    assert ok and steps


def test_law_examples():
    X = {0: P(["Z"])}
    L = apply_derived("lambda", X)
    assert L == {0: P(["Zp"])} and apply_derived("lambda", L) == L
    G = apply_derived("gamma", X)
    assert G == {1: P(["Zpinf"])} and apply_derived("gamma", G) == G
    T = {0: P(["Z/p^2"])}
    assert apply_derived("gamma", T) == T


def test_certify_exact_rejects_nonsense():
    assert not certify_exact([ZERO, P(["Z"]), ZERO])[0]
    assert not certify_exact([ZERO, P(["Z/p"]), P(["Z/p^2"]), ZERO])[0]
    assert certify_exact([ZERO, P(["Z/p"]), P(["Z/p^3"]), P(["Z/p^2"]), ZERO])[0]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("N,ks", [(8, (1, 2)), (12, (1, 2, 3))])
def test_tables_match_truncation_oracle(p, N, ks):
    rep = verify_tables(p, N, ks)
    assert rep.passed, rep.failures


def test_shallow_truncation_cannot_resolve_high_exponents():
    # depth 8 reads towers only up to n = 4, so Z/p^3 is indistinguishable from Zp there
    assert not verify_tables(2, 8, (3,)).passed


@pytest.mark.parametrize("B", ["Z", "Zpinf", "Zp", "Q", "Qp", "Z[1/p]", "Z/p^2"])
def test_depths_8_and_12_agree(B):
    for A in ("Zpinf", "Z/p", "Z/p^2"):
        assert truncation_oracle(A, B, 3, 8) == truncation_oracle(A, B, 3, 12)
    assert pair(gamma_oracle(B, 3, 8)) == pair(gamma_oracle(B, 3, 12))


def test_laws_on_atoms_and_random_sums():
    rep = functor_laws_check(list(ALL_ATOMS) + ["Qp/Zp"] + random_sums(50, seed=0))
    assert rep.passed, rep.failures
    assert rep.checked == 59


def test_uct_for_every_atom():
    for A in ALL_ATOMS:
        for seq in uct_sequences(A):
            assert certify_exact(seq)[0], seq
        assert certify_exact(gamma_sequence(A))[0]


names = st.sampled_from(["Z", "Zpinf", "Z[1/p]", "Zp", "Q", "Qp", "Z/p", "Z/p^2", "Z/p^3"])


@given(st.lists(names, max_size=4), st.lists(names, max_size=4))
def test_functors_are_additive(xs, ys):
    X, Y = P(xs), P(ys)
    for f in (gamma_p, lambda_p):
        a, b, c = f(X), f(Y), f(X + Y)
        assert c.deg0 == a.deg0 + b.deg0 and c.deg1 == a.deg1 + b.deg1
    for A in ("Zpinf", "Z/p^2"):
        h1, e1 = hom_ext(A, X)
        h2, e2 = hom_ext(A, Y)
        assert hom_ext(A, X + Y) == (h1 + h2, e1 + e2)


@given(st.lists(names, min_size=1, max_size=3), st.integers(0, 10 ** 6))
def test_laws_random(xs, seed):
    assert functor_laws_check([P(xs)] + random_sums(2, seed=seed)).passed
