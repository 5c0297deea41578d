# -*- coding: utf-8 -*-
import pytest

from conftest import FIBONACCI, SUFCODE9, THUE_MORSE, TOEPLITZ2, substitution
from errors import AlphabetMismatchError, EmptyWordError, FormatError, PremiseError, RecoverabilityRangeError
from substitution import (Substitution, compose, expand, format_substitution, identity, is_injective, is_left_proper,
                          is_q_right_recoverable, is_return_substitution, is_right_marked, is_suffix_code_substitution,
                          is_toeplitz, is_uniform, max_right_recoverability, maximal_common_prefix, normalize,
                          parse_substitution, properties)
from words import Alphabet, Word


def test_compose_fibonacci_with_itself(fibonacci):
    square = compose(fibonacci, fibonacci)
    assert square.as_dict() == {"a": "aba", "b": "ab"}
    assert square.min_len == 2 and square.max_len == 3


def test_compose_thue_morse_with_itself(thue_morse):
    assert compose(thue_morse, thue_morse).as_dict() == {"a": "abba", "b": "baab"}


def test_compose_identity_is_neutral(thue_morse):
    ident = identity(thue_morse.domain)
    assert compose(thue_morse, ident).as_dict() == thue_morse.as_dict()
    assert compose(ident, thue_morse).as_dict() == thue_morse.as_dict()


def test_compose_rejects_alphabet_mismatch(thue_morse, toeplitz2):
    with pytest.raises(AlphabetMismatchError):
        compose(thue_morse, toeplitz2)


def test_expand(thue_morse):
    assert expand(thue_morse, Word.parse("ba", thue_morse.domain)).text() == "baab"
    assert expand(thue_morse, Word((), thue_morse.domain)).is_empty()


def test_injective_and_uniform(thue_morse, fibonacci):
    assert is_injective(thue_morse)
    assert not is_injective(substitution({"a": "ab", "b": "ab"}))
    assert is_uniform(thue_morse)
    assert not is_uniform(fibonacci)


def test_left_proper():
    assert is_left_proper(substitution({"a": "ab", "b": "ac", "c": "a"}))
    assert not is_left_proper(substitution(THUE_MORSE))
    assert not is_left_proper(substitution({"a": "ab", "b": ""}))


def test_right_marked(thue_morse, fibonacci):
    assert is_right_marked(thue_morse)
    assert is_right_marked(fibonacci)
    assert not is_right_marked(substitution({"a": "aa", "b": "ba"}))
    assert not is_right_marked(substitution(SUFCODE9))


def test_q_right_recoverable(thue_morse):
    assert is_q_right_recoverable(thue_morse, 1)
    assert max_right_recoverability(thue_morse) == 1


def test_q_out_of_range(thue_morse):
    with pytest.raises(RecoverabilityRangeError):
        is_q_right_recoverable(thue_morse, 2)
    with pytest.raises(RecoverabilityRangeError):
        is_q_right_recoverable(thue_morse, 0)


def test_fibonacci_has_no_recoverability_range(fibonacci):
    assert max_right_recoverability(fibonacci) is None


def test_left_proper_injective_is_not_always_recoverable():
    tau = substitution({"a": "ab", "b": "aab"})
    assert is_left_proper(tau) and is_injective(tau)
    assert not is_q_right_recoverable(tau, 1)
    assert max_right_recoverability(tau) is None


def test_maximal_common_prefix(toeplitz2, fibonacci):
    assert maximal_common_prefix(toeplitz2).text() == "01"
    assert maximal_common_prefix(fibonacci).text() == "a"


def test_maximal_common_prefix_requires_left_proper(thue_morse):
    with pytest.raises(PremiseError):
        maximal_common_prefix(thue_morse)


def test_return_substitution(fibonacci):
    tau = substitution({"a": "ab", "b": "abb"})
    assert is_return_substitution(tau, Word.parse("ab", tau.codomain))
    assert is_return_substitution(fibonacci, Word.parse("a", fibonacci.codomain))
    assert not is_return_substitution(substitution({"a": "aa", "b": "ab"}), Word.parse("a", fibonacci.codomain))


def test_return_substitution_rejects_empty_word(fibonacci):
    with pytest.raises(EmptyWordError):
        is_return_substitution(fibonacci, Word((), fibonacci.codomain))


def test_toeplitz(toeplitz2, thue_morse):
    assert is_toeplitz(toeplitz2)
    assert not is_toeplitz(thue_morse)


def test_suffix_code_images():
    assert is_suffix_code_substitution(substitution(SUFCODE9))
    assert not is_suffix_code_substitution(substitution({"a": "ab", "b": "b"}))


def test_properties_report(thue_morse):
    report = properties(thue_morse, q=5)
    assert report["injective"] and report["right_marked"]
    assert report["max_right_recoverability"] == 1
    assert report["common_prefix"] is None
    assert report["q_right_recoverable"]["value"] is None
    assert "error" in report["q_right_recoverable"]


def test_normalize_merges_and_drops():
    tau = substitution({"a": "ab", "b": "ab", "c": ""})
    normalized = normalize(tau)
    assert normalized.substitution.domain.symbols == ("a",)
    assert normalized.representative("b") == "a"
    assert normalized.representative("c") is None
    assert normalized.dropped == ("c",)


def test_normalize_everything_erased():
    with pytest.raises(PremiseError):
        normalize(substitution({"a": "", "b": ""}))


def test_parse_substitution_with_comments():
    tau = parse_substitution("# Fibonacci\na -> ab\n\nb -> a  # fin\n")
    assert tau.as_dict() == FIBONACCI


def test_parse_substitution_multi_character_letters():
    tau = parse_substitution("a0 -> a0.a1\na1 -> a0\n")
    assert tau.image_letters("a0") == ("a0", "a1")
    assert tau.domain == Alphabet(("a0", "a1"))


def test_parse_substitution_errors():
    with pytest.raises(FormatError) as excinfo:
        parse_substitution("a -> ab\nb = a\n")
    assert excinfo.value.line_number == 2
    with pytest.raises(FormatError):
        parse_substitution("a -> ab\na -> b\n")
    with pytest.raises(FormatError):
        parse_substitution("# vacío\n")


def test_format_substitution_reads_back(toeplitz2):
    assert parse_substitution(format_substitution(toeplitz2)).as_dict() == TOEPLITZ2


def test_format_keeps_an_explicit_codomain():
    tau = substitution(FIBONACCI)
    assert not format_substitution(tau).startswith("codomain:")
    wider = Substitution.from_mapping(FIBONACCI, Alphabet(("b", "a", "c")))
    text = format_substitution(wider)
    assert text.splitlines()[0] == "codomain: b a c"
    assert parse_substitution(text) == wider
    assert parse_substitution(text) != tau


def test_codomain_declaration_errors():
    with pytest.raises(FormatError) as excinfo:
        parse_substitution("a -> ab\ncodomain: a b\nb -> a\n")
    assert excinfo.value.line_number == 2
    with pytest.raises(FormatError):
        parse_substitution("codomain:\na -> a\n")
    with pytest.raises(AlphabetMismatchError):
        parse_substitution("codomain: a\na -> ab\nb -> a\n")
