# -*- coding: utf-8 -*-
import pytest

from errors import BudgetExceededError, PremiseError
from language import FullShiftLanguage, PeriodicLanguage, SubstitutiveLanguage
from predecessors import (default_right_length, degree_profile, is_plateau, persistence_witness, predecessor_table,
                          rkrad_sum_bound, verify_hgenrad_bound, verify_rkrad_bound)
from words import Alphabet


def test_thue_morse_has_two_predecessors(tm_seq):
    table = predecessor_table(SubstitutiveLanguage(tm_seq), 3, 32)
    assert table.max_count == 2
    assert table.count(table.argmax) == 2
    assert table.summary()["max"] == 2


def test_toeplitz3_has_three_predecessors(toeplitz3_seq):
    assert predecessor_table(SubstitutiveLanguage(toeplitz3_seq), 4, 27).max_count == 3


def test_full_shift_predecessors():
    table = predecessor_table(FullShiftLanguage(Alphabet(("a", "b"))), 3, 8)
    assert table.max_count == 8
    assert table.argmax == ("a",) * 8
    assert len(table.counts) == 256


def test_csv_rows(fib_seq):
    table = predecessor_table(SubstitutiveLanguage(fib_seq), 1, 2)
    assert table.csv_rows() == [("aa", 1, 1), ("ab", 1, 2), ("ba", 1, 1)]
    assert table.count(("b", "b")) == 0


def test_window_lengths_must_be_positive(fib_seq):
    with pytest.raises(PremiseError):
        predecessor_table(SubstitutiveLanguage(fib_seq), 0, 4)


def test_default_right_length(fib_seq):
    assert default_right_length(SubstitutiveLanguage(fib_seq), 3) == 61
    with pytest.raises(BudgetExceededError):
        default_right_length(SubstitutiveLanguage(fib_seq, budget=4), 4)


def test_fibonacci_profile_reaches_a_plateau(fib_seq):
    report = degree_profile(SubstitutiveLanguage(fib_seq), 8, 34)
    assert report["profile"] == [2] * 8
    assert report["plateau"]
    assert not report["strictly_increasing"]


def test_periodic_orbit_has_one_predecessor():
    report = degree_profile(PeriodicLanguage(("a", "b")), 4, 4)
    assert report["profile"] == [1, 1, 1, 1]


@pytest.mark.parametrize("profile,expected", [
    ([2, 2, 2, 2], True),
    ([1, 2, 3, 4, 4, 4], True),
    ([1, 2, 3, 3, 4, 4], False),
    ([1, 2, 3], False),
    ([], False)
])
def test_plateau_needs_a_constant_second_half(profile, expected):
    assert is_plateau(profile) == expected


def test_persistence(tm_seq):
    language = SubstitutiveLanguage(tm_seq)
    witness = persistence_witness(language, 1, 16)
    assert witness["count"] == 2
    assert witness["persistent"] is True
    unchecked = persistence_witness(language, 1, 40)
    assert unchecked["persistent"] is None
    assert unchecked["doubled_count"] is None


def test_hgenrad_bound_for_thue_morse(tm_seq):
    report = verify_hgenrad_bound(tm_seq, 3, 1, 1)
    assert report["h"] == 8
    assert report["right"] == 4
    assert report["left"] == 2
    assert report["holds"]


def test_hgenrad_needs_radius(tm_seq):
    with pytest.raises(PremiseError):
        verify_hgenrad_bound(tm_seq, 1, 1, None)


def test_rkrad_bounds(tm_seq):
    assert rkrad_sum_bound(2, 1) == 6
    report = verify_rkrad_bound(SubstitutiveLanguage(tm_seq), 2, 1, 3, 16)
    assert report == {"observed": 2, "power_bound": 4, "sum_bound": 6, "holds_power": True, "holds_sum": True}
