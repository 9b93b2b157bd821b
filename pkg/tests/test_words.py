"""Word problem and path-form reduction, checked against independent models.

The BS12 checks lean on the faithful affine model (a is x+1, t is 2x):
a word is trivial exactly when its affine map is the identity.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import a_pow, bs12_affine, presentation, random_word, t_pow
from vgbs.words import (
    StableSyllable,
    VertexSyllable,
    Word,
    commutator,
    concat,
    conjugate,
    express_in_vertex,
    invert_word,
    is_reduced,
    is_trivial,
    letter_word,
    path_form_word,
    reduce_path_form,
    reduced_form,
    to_path_form,
    validate_word,
    vertex_word,
    word_power,
    word_simplify,
    words_equal,
)


@pytest.fixture(scope="module")
def bs12p():
    return presentation("bs12")


@pytest.fixture(scope="module")
def amalgp():
    return presentation("amalg")


def test_identity_and_letters(bs12p):
    assert is_trivial(bs12p, Word.identity())
    assert not is_trivial(bs12p, a_pow(1))
    assert is_trivial(bs12p, concat(t_pow(1), t_pow(-1)))
    assert is_trivial(bs12p, concat(t_pow(-1), t_pow(1)))
    assert not is_trivial(bs12p, t_pow(1))


def test_defining_relation(bs12p):
    # t a t^-1 = a^2
    w = concat(t_pow(1), a_pow(1), t_pow(-1), a_pow(-2))
    assert is_trivial(bs12p, w)
    assert not is_trivial(bs12p, concat(t_pow(1), a_pow(1), t_pow(-1), a_pow(-1)))
    # downward: t^-1 a^2 t = a
    assert is_trivial(bs12p, concat(t_pow(-1), a_pow(2), t_pow(1), a_pow(-1)))


def test_tree_letter_is_identity(amalgp):
    assert is_trivial(amalgp, letter_word("e1"))
    assert is_trivial(amalgp, letter_word("e1bar"))
    # a^2 = b^2 across the tree edge
    rel = concat(vertex_word("v0", (2,)), vertex_word("v1", (-2,)))
    assert is_trivial(amalgp, rel)
    assert not is_trivial(amalgp, concat(vertex_word("v0", (1,)), vertex_word("v1", (-1,))))


def test_express_in_vertex(amalgp, bs12p):
    assert express_in_vertex(amalgp, vertex_word("v0", (2,)), "v1") == (2,)
    assert express_in_vertex(amalgp, vertex_word("v0", (1,)), "v1") is None
    assert express_in_vertex(bs12p, concat(t_pow(1), a_pow(1), t_pow(-1)), "v0") == (2,)
    assert express_in_vertex(bs12p, concat(t_pow(-1), a_pow(1), t_pow(1)), "v0") is None
    assert express_in_vertex(bs12p, t_pow(1), "v0") is None


def test_free_group_letters():
    f2p = presentation("f2")
    comm = concat(
        letter_word("e1"), letter_word("e2"), letter_word("e1bar"), letter_word("e2bar")
    )
    assert not is_trivial(f2p, comm)
    assert is_trivial(f2p, concat(letter_word("e1"), letter_word("e1bar")))
    pf = reduced_form(f2p, comm)
    assert pf.length == 4


def test_rank_two_vertex_words():
    z2p = presentation("z2")
    assert is_trivial(z2p, concat(vertex_word("v0", (1, 2)), vertex_word("v0", (-1, -2))))
    assert not is_trivial(z2p, vertex_word("v0", (0, 1)))
    assert express_in_vertex(z2p, concat(vertex_word("v0", (1, 0)), vertex_word("v0", (0, 1))), "v0") == (1, 1)


def _bs12_words(seed, count, length):
    rng = random.Random(seed)
    pres = presentation("bs12")
    return pres, [random_word(rng, pres, rng.randint(0, length)) for _ in range(count)]


def test_word_problem_against_affine_model():
    pres, words = _bs12_words(101, 150, 14)
    for w in words:
        assert is_trivial(pres, w) == (bs12_affine(w) == (1, 0))


def test_inverse_and_power_against_affine_model(bs12p):
    rng = random.Random(202)
    for _ in range(40):
        w = random_word(rng, bs12p, rng.randint(0, 8))
        assert is_trivial(bs12p, concat(w, invert_word(bs12p, w)))
        p, q = bs12_affine(w)
        w3 = word_power(bs12p, w, 3)
        p3, q3 = bs12_affine(w3)
        assert p3 == p**3
        assert is_trivial(bs12p, w3) == ((p3, q3) == (1, 0))


def test_conjugate_commutator_shapes(bs12p):
    g = a_pow(1)
    h = t_pow(1)
    assert words_equal(bs12p, conjugate(bs12p, g, h), a_pow(2))
    assert words_equal(bs12p, commutator(bs12p, h, g), a_pow(1))


def test_simplify_preserves_element_and_shrinks(bs12p):
    rng = random.Random(303)
    for _ in range(60):
        w = random_word(rng, bs12p, rng.randint(0, 12))
        s = word_simplify(bs12p, w)
        assert len(s) <= len(w)
        assert bs12_affine(s) == bs12_affine(w)
        for x, y in zip(s.syllables, s.syllables[1:]):
            if isinstance(x, VertexSyllable) and isinstance(y, VertexSyllable):
                assert x.vertex != y.vertex
            if isinstance(x, StableSyllable) and isinstance(y, StableSyllable):
                assert bs12p.graph.edge(x.edge).reverse != y.edge


def test_reduced_form_is_reduced_and_stable(bs12p):
    rng = random.Random(404)
    for _ in range(40):
        w = random_word(rng, bs12p, rng.randint(0, 10))
        pf = reduced_form(bs12p, w)
        assert is_reduced(bs12p, pf)
        assert pf.start == pf.end == "v0"
        again = reduce_path_form(bs12p, to_path_form(bs12p, path_form_word(bs12p, pf)))
        assert again == pf


def test_reduction_transports_terms(bs12p):
    # t a^4 t^-1 pinches towards the base: the middle term doubles
    w = concat(t_pow(1), a_pow(4), t_pow(-1))
    pf = reduced_form(bs12p, w)
    assert pf.length == 0 and pf.terms[0] == (8,)
    # t^-1 a^3 t cannot pinch: 3 is odd
    w2 = concat(t_pow(-1), a_pow(3), t_pow(1))
    pf2 = reduced_form(bs12p, w2)
    assert pf2.length == 2


@settings(deadline=None, max_examples=50)
@given(st.integers(-20, 20), st.integers(0, 4))
def test_conjugated_powers_against_affine_model(k, j):
    pres = presentation("bs12")
    # t^j a^k t^-j = a^(k·2^j)
    w = concat(t_pow(j), a_pow(k), t_pow(-j), a_pow(-k * 2**j))
    assert is_trivial(pres, w)


def test_klein_relation():
    kp = presentation("klein")
    assert is_trivial(kp, concat(t_pow(1), a_pow(1), t_pow(-1), a_pow(1)))
    assert not is_trivial(kp, concat(t_pow(1), a_pow(1), t_pow(-1), a_pow(-1)))
    # [t, a] = a^-2 in the Klein bottle group
    assert not is_trivial(kp, commutator(kp, t_pow(1), a_pow(1)))
    assert words_equal(kp, commutator(kp, t_pow(1), a_pow(1)), a_pow(-2))


def test_validate_word(bs12p):
    validate_word(bs12p, concat(a_pow(1), t_pow(1)))
    with pytest.raises(ValueError, match="unknown vertex"):
        validate_word(bs12p, vertex_word("vX", (1,)))
    with pytest.raises(ValueError, match="unknown edge"):
        validate_word(bs12p, letter_word("eX"))
    with pytest.raises(ValueError, match="coordinates"):
        validate_word(bs12p, vertex_word("v0", (1, 2)))
