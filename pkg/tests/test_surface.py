import random

import pytest
from hypothesis import given, strategies as st

from surfpi.errors import InvalidKind, InvalidLoopName, IndexOutOfRange, UnsupportedPresentation, WrongAlphabet
from surfpi.plus import plus_expansion_map
from surfpi.surface import (
    abelian_compatible,
    base_alphabet,
    canonical_loop,
    equal_in,
    is_trivial,
    nonorientable,
    orientable,
    orientation_character,
    parse_surface,
    pi1_presentation,
    plus_presentation,
)
from surfpi.words import Word, comm, conj, exponent_vector, format_word, inv, mul, parse_word

from conftest import random_word, words_over


def P(kind):
    return pi1_presentation(kind)


def W(text, kind):
    return parse_word(text, base_alphabet(kind))


# -- descriptors and presentations -------------------------------------------------


def test_parse_surface():
    assert parse_surface("S:2,0") == orientable(2, 0)
    assert parse_surface(" N:3,1 ") == nonorientable(3, 1)
    with pytest.raises(InvalidKind):
        parse_surface("N:0,1")
    with pytest.raises(InvalidKind):
        parse_surface("Q:1,1")


def test_pi1_examples():
    p = P(orientable(2, 0))
    assert len(p.alphabet) == 4
    assert format_word(p.relator) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"
    p = P(nonorientable(3, 1))
    assert [str(s) for s in p.alphabet] == ["x1", "x2", "x3"] and p.relator is None
    p = P(orientable(0, 1))
    assert len(p.alphabet) == 0 and p.relator is None


def test_pi1_alphabets():
    assert [str(s) for s in P(orientable(2, 3)).alphabet] == ["a1", "a2", "b1", "b2", "c1", "c2"]
    assert [str(s) for s in P(nonorientable(2, 3)).alphabet] == ["x1", "x2", "y1", "y2"]
    assert format_word(P(nonorientable(3, 0)).relator) == "x1^2 x2^2 x3^2"


def test_plus_presentation_examples():
    p = plus_presentation(nonorientable(2, 0))
    assert sorted(str(s) for s in p.alphabet) == ["X1_1", "X1_2", "X2_2"]
    assert [format_word(r) for r in p.relators] == ["X1_1 X2_2", "X2_2 X1_2^-1 X1_1 X1_2"]
    p = plus_presentation(nonorientable(2, 1))
    assert len(p.alphabet) == 3 and p.is_free
    p = plus_presentation(nonorientable(3, 2))
    assert len(p.alphabet) == 7 and p.is_free
    with pytest.raises(InvalidKind):
        plus_presentation(orientable(2, 0))


# -- canonical loops ---------------------------------------------------------------


def test_loop_examples():
    kind = orientable(2, 0)
    assert canonical_loop(kind, "delta(1)") == W("b1^-1 a2 b2 a2^-1", kind)
    kind = nonorientable(2, 1)
    assert canonical_loop(kind, "y_n") == W("x2^-1 x2^-1 x1^-1 x1^-1", kind)
    kind = nonorientable(2, 0)
    assert canonical_loop(kind, "sep_nonorientable(d,1,0)") == W("x1 x1", kind)


def test_gamma_n_closes_the_relation():
    kind = orientable(2, 3)
    A = base_alphabet(kind)
    total = mul(mul(comm(W("a1", kind), W("b1", kind)), comm(W("a2", kind), W("b2", kind))),
                mul(W("c1 c2", kind), canonical_loop(kind, "gamma_n")))
    assert total == A.identity()


def test_epsilon_and_z_n():
    kind = orientable(2, 2)
    assert canonical_loop(kind, "epsilon(1)") == W("b2^-1 c1", kind)
    kind = nonorientable(2, 2)
    # z_n = (x_{g1} x_{12} z_1)^-1 over the base alphabet
    z1 = W("x2 y1 x2^-1", kind)
    assert canonical_loop(kind, "z_n") == inv(mul(W("x2 x1 x1 x2", kind), z1))


def test_bad_loop_names():
    with pytest.raises((InvalidLoopName, IndexOutOfRange)):
        canonical_loop(orientable(2, 0), "delta(2)")
    with pytest.raises(InvalidLoopName):
        canonical_loop(orientable(2, 0), "y_n")
    with pytest.raises((InvalidLoopName, IndexOutOfRange)):
        canonical_loop(nonorientable(2, 0), "y_n")


# -- orientation character ------------------------------------------------------------


def test_orientation_examples():
    kind = nonorientable(3, 2)
    assert orientation_character(W("x1", kind)) == 1
    assert orientation_character(W("y1", kind)) == 0
    for w in plus_expansion_map(kind).values():
        assert orientation_character(w) == 0
    with pytest.raises(WrongAlphabet):
        orientation_character(W("a1", orientable(1, 0)))


N42 = base_alphabet(nonorientable(4, 2))


@given(words_over(N42), words_over(N42))
def test_orientation_character_homomorphism(a, b):
    assert orientation_character(mul(a, b)) == (orientation_character(a) + orientation_character(b)) % 2


def test_orientation_vanishes_on_relator():
    for g in range(1, 7):
        assert orientation_character(P(nonorientable(g, 0)).relator) == 0


# -- word problem --------------------------------------------------------------------


CLOSED = [orientable(1, 0), orientable(2, 0), orientable(3, 0), nonorientable(1, 0),
          nonorientable(2, 0), nonorientable(3, 0), nonorientable(4, 0), nonorientable(5, 0)]


def conjugate_product(rng, p, factors=3, conj_len=8):
    """Oracle for trivial words: a product of conjugates of R^{+-1}."""
    A, R = p.alphabet, p.relator
    w = A.identity()
    for _ in range(rng.randint(1, factors)):
        c = random_word(rng, A, conj_len)
        w = mul(w, conj(c, R if rng.random() < 0.5 else inv(R)))
    return w


@pytest.mark.parametrize("kind", CLOSED, ids=str)
def test_relator_is_trivial(kind):
    p = P(kind)
    assert is_trivial(p.relator, p)
    assert is_trivial(inv(p.relator), p)


@pytest.mark.parametrize("kind", CLOSED, ids=str)
def test_conjugate_products_are_trivial(kind, rng):
    p = P(kind)
    for _ in range(400):
        assert is_trivial(conjugate_product(rng, p), p)


@pytest.mark.parametrize("kind", CLOSED, ids=str)
def test_abelian_certificate_is_sound(kind, rng):
    p = P(kind)
    for _ in range(400):
        w = random_word(rng, p.alphabet, 16)
        if not abelian_compatible(w, p):
            assert not is_trivial(w, p)
        if is_trivial(w, p):
            assert abelian_compatible(w, p)


def test_genus_three_nonorientable_dehn_against_oracle(rng):
    # the shortest relator where the small-cancellation bound is not available
    p = P(nonorientable(3, 0))
    for _ in range(2000):
        assert is_trivial(conjugate_product(rng, p, conj_len=10), p)
    # words with one letter changed from a trivial word have odd parity, so are nontrivial
    for _ in range(500):
        w = conjugate_product(rng, p)
        bad = mul(w, W("x2", nonorientable(3, 0)))
        assert not is_trivial(bad, p)


def test_word_problem_examples():
    kind = orientable(2, 0)
    assert not is_trivial(W("a1", kind), P(kind))
    kind = nonorientable(2, 0)
    assert is_trivial(W("x1 x1 x2 x2", kind), P(kind))
    assert equal_in(P(kind), W("x1 x1", kind), inv(W("x2 x2", kind)))


def test_klein_bottle_normal_form():
    kind = nonorientable(2, 0)
    p = P(kind)
    # x2 x1 x2^-1 = x1^-1 in the Klein bottle group (from x1^2 x2^2 = 1 rewritten)
    assert not is_trivial(W("x1", kind), p)
    # the group is not abelian, and the commutator has zero exponent vector
    assert not is_trivial(W("x1 x2 x1^-1 x2^-1", kind), p)
    # x2^2 is central: it equals x1^-2
    assert is_trivial(W("x2^2 x1 x2^-2 x1^-1", kind), p)
    assert is_trivial(W("x2 x2 x1 x1", kind), p)


def test_torus_and_projective_plane():
    t = orientable(1, 0)
    assert is_trivial(W("a1 b1 a1^-1 b1^-1", t), P(t))
    assert not is_trivial(W("a1 b1", t), P(t))
    rp2 = nonorientable(1, 0)
    assert is_trivial(W("x1^4", rp2), P(rp2))
    assert not is_trivial(W("x1^3", rp2), P(rp2))


def test_sphere_and_disk():
    for kind in (orientable(0, 0), orientable(0, 1)):
        p = P(kind)
        assert is_trivial(p.alphabet.identity(), p)


def test_free_case_is_syntactic(rng):
    kind = nonorientable(3, 2)
    p = P(kind)
    for _ in range(300):
        u, v = random_word(rng, p.alphabet), random_word(rng, p.alphabet)
        assert equal_in(p, u, v) == (u == v)


def test_plus_word_problem_flavors():
    closed = plus_presentation(nonorientable(3, 0))
    with pytest.raises(UnsupportedPresentation):
        is_trivial(closed.relators[0], closed)
    free = plus_presentation(nonorientable(3, 1))
    assert is_trivial(free.alphabet.identity(), free)
