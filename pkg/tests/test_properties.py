# -*- coding: utf-8 -*-
"""Propiedades generales sobre sustituciones aleatorias de dos letras"""

import random

from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.strategies import permutations

from directive import DirectiveSequence
from example_corpus import random_substitution
from language import SubstitutiveLanguage
from parsing import Window, enumerate_standard_schemes, radius_compose, reassemble
from predecessors import predecessor_table
from substitution import (Substitution, compose, expand, is_q_right_recoverable, is_right_marked, is_right_recoverable,
                          max_right_recoverability)
from words import Alphabet, Word

AB = Alphabet(("a", "b"))

images = st.text(alphabet="ab", min_size=1, max_size=3)
substitutions = st.tuples(images, images).map(lambda pair: Substitution.from_mapping(
    {"a": pair[0], "b": pair[1]}, AB))
words = st.lists(st.sampled_from("ab"), max_size=6).map(tuple)

long_images = st.text(alphabet="ab", min_size=2, max_size=4)
recoverable = st.tuples(long_images, long_images).map(lambda pair: Substitution.from_mapping(
    {"a": pair[0], "b": pair[1]}, AB)).filter(is_right_recoverable)


@st.composite
def right_marked(draw):
    """Prefijo arbitrario seguido de últimas letras distintas: siempre marcada a la derecha"""
    lasts = draw(permutations(["a", "b"]))
    heads = [draw(st.text(alphabet="ab", min_size=1, max_size=2)) for _ in lasts]
    return Substitution.from_mapping({"a": heads[0] + lasts[0], "b": heads[1] + lasts[1]}, AB)


@settings(max_examples=200)
@given(substitutions, substitutions, substitutions)
def test_composition_is_associative(f, g, h):
    assert compose(compose(f, g), h).as_dict() == compose(f, compose(g, h)).as_dict()


@settings(max_examples=200)
@given(substitutions, words, words)
def test_expand_is_a_homomorphism(tau, u, v):
    left = expand(tau, Word(u + v, AB))
    right = expand(tau, Word(u, AB)) + expand(tau, Word(v, AB))
    assert left == right


@settings(max_examples=200)
@given(substitutions, st.lists(st.sampled_from("ab"), min_size=6, max_size=8))
def test_true_parse_is_among_the_schemes(tau, preimage):
    word = tau.expand_letters(preimage)
    win = Window(word, len(word) // 2)
    boundaries, position = [0], 0
    for letter in preimage[:-1]:
        position += len(tau.image_letters(letter))
        boundaries.append(position)
    true_cuts = tuple(c - win.origin for c in boundaries)
    schemes = enumerate_standard_schemes(tau, win)
    assert true_cuts in {s.cuts for s in schemes}
    for scheme in schemes:
        assert scheme.cut_bounds_hold(tau)
        assert reassemble(tau, win, scheme)


@settings(max_examples=200)
@given(substitutions, st.lists(st.sampled_from("ab"), min_size=6, max_size=8), st.data())
def test_moving_the_origin_restandardizes_the_same_tilings(tau, preimage, data):
    word = tau.expand_letters(preimage)
    low = data.draw(st.integers(min_value=tau.max_len, max_value=len(word)))
    high = data.draw(st.integers(min_value=low, max_value=len(word)))
    first = enumerate_standard_schemes(tau, Window(word, low))
    second = enumerate_standard_schemes(tau, Window(word, high))
    assert {tuple(c + low for c in s.cuts) for s in first} == {tuple(c + high for c in s.cuts) for s in second}
    for scheme in second:
        assert scheme.cut(0) <= 0
        assert scheme.cut(1) is None or scheme.cut(1) > 0


@settings(max_examples=200)
@given(right_marked(), right_marked())
def test_right_marked_composition_is_recoverable(tau, sigma):
    square = compose(tau, sigma)
    assert is_right_marked(square)
    assert is_right_recoverable(square)


@settings(max_examples=200)
@given(right_marked(), words, words)
def test_right_marked_expansion_is_injective(tau, u, v):
    if u != v:
        assert expand(tau, Word(u, AB)) != expand(tau, Word(v, AB))


@settings(max_examples=200)
@given(recoverable, recoverable, st.data())
def test_recoverable_composition_scales_q(tau, sigma, data):
    q = data.draw(st.integers(min_value=1, max_value=max_right_recoverability(sigma)))
    assert is_q_right_recoverable(sigma, q)
    assert is_q_right_recoverable(compose(tau, sigma), q * tau.min_len)


@settings(max_examples=200)
@given(recoverable, words, words)
def test_recoverable_expansion_is_injective(tau, u, v):
    if u != v:
        assert expand(tau, Word(u, AB)) != expand(tau, Word(v, AB))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=1, max_value=5))
def test_predecessors_shrink_with_longer_right_context(seed, R_w):
    tau = random_substitution(random.Random(seed), 2)
    language = SubstitutiveLanguage(DirectiveSequence.constant(tau))
    shorter = predecessor_table(language, 2, R_w).max_count
    longer = predecessor_table(language, 2, R_w + 1).max_count
    assert longer <= shorter


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=50), st.integers(min_value=1, max_value=10),
       st.integers(min_value=0, max_value=50))
def test_radius_compose_identities(R, inner, R_inner):
    assert radius_compose(0, inner, R_inner) == R_inner
    assert radius_compose(R, 1, 0) == R
    assert radius_compose(R + 1, inner, R_inner) >= radius_compose(R, inner, R_inner)
