# -*- coding: utf-8 -*-
"""Fixtures compartidas: las sustituciones del corpus construidas a mano"""

import pytest

from directive import DirectiveSequence
from substitution import Substitution


def substitution(mapping):
    return Substitution.from_mapping(mapping)


def constant(mapping):
    return DirectiveSequence.constant(substitution(mapping))


FIBONACCI = {"a": "ab", "b": "a"}
THUE_MORSE = {"a": "ab", "b": "ba"}
TOEPLITZ2 = {"0": "010", "1": "011"}
TOEPLITZ3 = {"0": "0120", "1": "0121", "2": "0122"}
SUFCODE9 = {"a": "abc", "b": "bbc", "c": "aba"}
DOUBLING = {"a": "aa", "b": "bb"}
AA_AB = {"a": "aa", "b": "ab"}


@pytest.fixture
def fibonacci():
    return substitution(FIBONACCI)


@pytest.fixture
def thue_morse():
    return substitution(THUE_MORSE)


@pytest.fixture
def toeplitz2():
    return substitution(TOEPLITZ2)


@pytest.fixture
def doubling():
    return substitution(DOUBLING)


@pytest.fixture
def fib_seq():
    return constant(FIBONACCI)


@pytest.fixture
def tm_seq():
    return constant(THUE_MORSE)


@pytest.fixture
def toeplitz3_seq():
    return constant(TOEPLITZ3)


@pytest.fixture
def sufcode_seq():
    return constant(SUFCODE9)


@pytest.fixture
def doubling_seq():
    return constant(DOUBLING)


@pytest.fixture
def aa_ab_seq():
    return constant(AA_AB)
