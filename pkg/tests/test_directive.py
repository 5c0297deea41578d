# -*- coding: utf-8 -*-
import numpy as np
import pytest

from conftest import FIBONACCI, THUE_MORSE, TOEPLITZ2, constant, substitution
from directive import (DirectiveSequence, block, format_directive, incidence_matrix, is_everywhere_growing,
                       is_strongly_primitive, is_weakly_primitive, min_len_profile, normalize_sequence,
                       parse_directive, primitivity_exponent, rank, telescope_expanding, unary_power_letters)
from errors import AlphabetMismatchError, FormatError, NotGrowingError, PremiseError

FIB_THEN_TM = "[transient]\na -> ab\nb -> a\n[cycle]\na -> ab\nb -> ba\n"


def test_block_lengths(tm_seq):
    tau = block(tm_seq, 0, 3).substitution
    assert tau.min_len == 8
    assert tau.as_dict() == {"a": "abbabaab", "b": "baababba"}


def test_empty_block_is_identity(tm_seq):
    assert block(tm_seq, 2, 2).substitution.as_dict() == {"a": "a", "b": "b"}
    with pytest.raises(ValueError):
        block(tm_seq, 3, 1)


def test_min_len_profile(fib_seq):
    # <Fib^t> sigue la sucesión de Fibonacci
    assert min_len_profile(fib_seq, 6) == [1, 1, 2, 3, 5, 8, 13]


def test_rank(toeplitz3_seq, fib_seq):
    assert rank(toeplitz3_seq) == 3
    assert rank(fib_seq) == 2


def test_everywhere_growing(fib_seq, tm_seq):
    assert is_everywhere_growing(fib_seq)
    assert is_everywhere_growing(tm_seq)
    assert not is_everywhere_growing(constant({"a": "ab", "b": "b"}))
    assert not is_everywhere_growing(constant({"a": "ab", "b": ""}))


def test_telescope_fibonacci(fib_seq):
    telescoped = telescope_expanding(fib_seq)
    assert telescoped.cycle[0].as_dict() == {"a": "aba", "b": "ab"}
    assert telescoped.transient == ()


def test_telescope_keeps_expanding_sequence(tm_seq):
    assert telescope_expanding(tm_seq) is tm_seq


def test_telescope_rejects_stalled_sequence():
    with pytest.raises(NotGrowingError):
        telescope_expanding(constant({"a": "ab", "b": "b"}))


def test_incidence_matrix(fibonacci):
    matrix = incidence_matrix(fibonacci)
    assert np.array_equal(matrix, np.array([[True, True], [True, False]]))


def test_primitivity(fib_seq, doubling_seq, tm_seq):
    assert not is_weakly_primitive(doubling_seq)
    assert is_weakly_primitive(constant(TOEPLITZ2))
    assert is_weakly_primitive(fib_seq)
    assert primitivity_exponent(fib_seq) == 2
    assert primitivity_exponent(tm_seq) == 1
    assert primitivity_exponent(doubling_seq) is None
    assert is_strongly_primitive(tm_seq)


def test_unary_power_letters(doubling_seq, aa_ab_seq, tm_seq):
    assert unary_power_letters(doubling_seq) == [("a", 1), ("b", 1)]
    assert unary_power_letters(aa_ab_seq) == [("a", 1)]
    assert unary_power_letters(tm_seq) == []


def test_levels_and_shift():
    seq = parse_directive(FIB_THEN_TM)
    assert seq.period_start == 1 and seq.period == 1
    assert seq.level(0).as_dict() == FIBONACCI
    assert seq.level(7).as_dict() == THUE_MORSE
    assert seq.shift(1).transient == ()
    assert seq.shift(1).cycle[0].as_dict() == THUE_MORSE
    with pytest.raises(ValueError):
        seq.level(-1)


def test_cycle_of_two_blocks():
    seq = parse_directive("a -> ab\nb -> a\n---\na -> ab\nb -> ba\n")
    assert seq.period == 2
    assert seq.level(3).as_dict() == THUE_MORSE
    assert seq.shift(1).cycle[0].as_dict() == THUE_MORSE


def test_alphabets_must_chain():
    with pytest.raises(AlphabetMismatchError):
        DirectiveSequence((substitution(TOEPLITZ2),), (substitution(THUE_MORSE),))
    with pytest.raises(PremiseError):
        DirectiveSequence((), ())


def test_parse_directive_errors():
    with pytest.raises(FormatError):
        parse_directive("[transient]\na -> ab\nb -> a\n")
    with pytest.raises(FormatError):
        parse_directive("")


def test_format_directive_reads_back():
    seq = parse_directive(FIB_THEN_TM)
    again = parse_directive(format_directive(seq))
    assert again.describe() == seq.describe()


def test_normalize_sequence_merges_letters():
    normalized = normalize_sequence(constant({"a": "ab", "b": "ab"}))
    assert len(normalized.transient) == 1
    assert [tau.as_dict() for tau in normalized.cycle] == [{"a": "aa"}]


def test_normalize_sequence_keeps_clean_sequence(tm_seq):
    assert normalize_sequence(tm_seq).describe()["cycle"] == [THUE_MORSE]
