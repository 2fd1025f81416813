import pytest
from hypothesis import given, strategies as st

from surfpi import folding
from surfpi.errors import IndexOutOfRange, InvalidKind, InvalidSymbol, RequiresClosed
from surfpi.plus import (
    IsoPair,
    standard_rs_relators,
    expand_plus,
    iso_pair,
    pair_word,
    plus_expansion_map,
    plus_generator_expansion,
    plus_sep_loop,
    plus_y,
    plus_z,
    rs_generators,
    rs_relators,
    rs_rewrite,
    verify_iso,
)
from surfpi.surface import base_alphabet, canonical_loop, nonorientable, orientable, orientation_character, plus_alphabet, plus_presentation
from surfpi.words import conj, format_word, inv, mul, parse_word, sym

from conftest import words_over


def B(text, kind):
    return parse_word(text, base_alphabet(kind))


def test_generator_expansion_examples():
    kind = nonorientable(3, 3)
    assert plus_generator_expansion(sym("X", 1, 2), kind) == B("x1 x2", kind)
    assert plus_generator_expansion(sym("z", 1), kind) == B("x3 y1 x3^-1", kind)
    assert plus_generator_expansion(sym("y", 2), kind) == B("y2", kind)
    with pytest.raises(InvalidSymbol):
        plus_generator_expansion(sym("z", 3), kind)
    with pytest.raises(InvalidKind):
        plus_generator_expansion(sym("X", 1, 1), orientable(2, 0))


def test_rs_generator_examples():
    kind = nonorientable(2, 0)
    rs = rs_generators(kind)
    shown = {str(s): format_word(w) for s, w in rs.expansion.items()}
    assert shown == {"u1": "x1 x2^-1", "v1": "x2 x1", "v2": "x2^2"}
    rs = rs_generators(nonorientable(2, 2))
    assert sorted(str(s) for s in rs.alphabet) == ["u1", "v1", "v2", "y1", "z1"]
    assert folding.index(folding.build(list(rs.expansion.values()))) == 2


def test_rs_relator_examples():
    kind = nonorientable(2, 0)
    A = rs_generators(kind).alphabet
    first, second = rs_relators(kind)
    assert first == parse_word("u1 v1 v2", A) and second == parse_word("v1 u1 v2", A)
    rs = rs_generators(kind)
    assert rs.expand(first) == B("x1 x1 x2 x2", kind)
    assert rs.expand(second) == conj(B("x2", kind), B("x1 x1 x2 x2", kind))
    with pytest.raises(RequiresClosed):
        rs_relators(nonorientable(2, 1))


@pytest.mark.parametrize("g", range(2, 9))
def test_rewritten_relators_match_display(g):
    kind = nonorientable(g, 0)
    assert rs_relators(kind) == standard_rs_relators(kind)


def test_iso_examples():
    kind = nonorientable(4, 0)
    pair = iso_pair(kind)
    P = plus_alphabet(kind)
    for j in range(1, 5):
        x = P.generator(sym("X", j, j))
        assert pair.apply_psi(pair.apply_phi(x)) == x
    R = rs_generators(kind).alphabet
    for j in range(1, 5):
        v = R.generator(sym("v", j))
        assert pair.apply_phi(pair.apply_psi(v)) == v
    k2 = nonorientable(2, 0)
    p2 = iso_pair(k2)
    assert p2.apply_phi(plus_presentation(k2).relators[0]) == rs_relators(k2)[0]
    assert p2.phi[sym("X", 2, 2)] == rs_generators(k2).alphabet.generator(sym("v", 2))


def test_verify_iso_examples():
    rep = verify_iso(nonorientable(4, 0))
    assert rep.passed and not rep.skipped
    rep = verify_iso(nonorientable(2, 3))
    assert rep.passed and rep.skipped == ["(b) no relators when n >= 1"]


def test_verify_iso_corrupted_psi():
    kind = nonorientable(3, 1)
    pair = iso_pair(kind)
    psi = dict(pair.psi)
    P = plus_alphabet(kind)
    psi[sym("u", 1)] = P.generator(sym("X", 1, 2))
    rep = verify_iso(kind, IsoPair(kind, pair.phi, psi))
    assert not rep.passed
    assert any(f.startswith("(a)") and "u1" in f for f in rep.failures)


@pytest.mark.parametrize("g,n", [(g, n) for g in range(2, 7) for n in range(1, 5)])
def test_plus_subgroup_rank_and_index(g, n):
    kind = nonorientable(g, n)
    graph = folding.build(list(plus_expansion_map(kind).values()))
    assert folding.index(graph) == 2
    assert folding.rank(graph) == 2 * g + 2 * n - 3


@pytest.mark.parametrize("g,n", [(g, n) for g in range(1, 7) for n in range(0, 5)])
def test_expansions_are_two_sided(g, n):
    kind = nonorientable(g, n)
    for w in plus_expansion_map(kind).values():
        assert orientation_character(w) == 0
    for w in rs_generators(kind).expansion.values():
        assert orientation_character(w) == 0


B42 = base_alphabet(nonorientable(4, 2))


@given(words_over(B42, 16))
def test_rs_rewrite_round_trip(w):
    kind = nonorientable(4, 2)
    if orientation_character(w):
        with pytest.raises(ValueError):
            rs_rewrite(w, kind)
        return
    assert rs_generators(kind).expand(rs_rewrite(w, kind)) == w


# -- derived plus-level loops ---------------------------------------------------------


@pytest.mark.parametrize("g", range(1, 7))
def test_pair_words_expand(g):
    kind = nonorientable(g, 1)
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            assert expand_plus(pair_word(kind, i, j), kind) == canonical_loop(kind, f"xpair({i},{j})")
    with pytest.raises(IndexOutOfRange):
        pair_word(kind, 0, 1)


@pytest.mark.parametrize("g,n", [(g, n) for g in range(1, 6) for n in range(1, 5)])
def test_boundary_loops_expand(g, n):
    kind = nonorientable(g, n)
    assert expand_plus(plus_y(kind, n), kind) == canonical_loop(kind, "y_n")
    assert expand_plus(plus_z(kind, n), kind) == canonical_loop(kind, "z_n")


@pytest.mark.parametrize("g,n", [(g, n) for g in range(2, 7) for n in range(0, 3)])
def test_separating_loops_expand(g, n):
    kind = nonorientable(g, n)

    def same(case, h=None, m=None):
        name = f"sep_nonorientable({case})" if h is None else f"sep_nonorientable({case},{h},{m})"
        w = plus_sep_loop(kind, case, h or 0, m or 0)
        assert expand_plus(w, kind) == canonical_loop(kind, name)

    same("b")
    if g % 2 == 0:
        same("c")
    for m in range(n + 1):
        for h in range(1, g):
            same("d", h, m)
        for h in range(0, (g - 1) // 2 + 1):
            same("e", h, m)
