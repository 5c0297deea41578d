# -*- coding: utf-8 -*-
import pytest

from errors import EmptyWordError, FormatError
from predecessors import degree_profile
from sofic import (SoficLanguage, SoficPresentation, determinize, format_graph, is_finite_shift, parse_graph,
                   predecessor_set_family, sft_from_forbidden, sofic_degree_profile, subset_name)
from words import Alphabet

BINARY = Alphabet(("0", "1"))
EVEN_SHIFT = "A 0 B\nB 0 A\nA 1 A  # lazo\n"


@pytest.fixture
def golden_mean():
    return sft_from_forbidden(BINARY, [("1", "1")])


@pytest.fixture
def even_shift():
    return parse_graph(EVEN_SHIFT)


@pytest.fixture
def three_cycle():
    return SoficPresentation.from_edges([("A", "a", "B"), ("B", "b", "C"), ("C", "c", "A")])


def test_make_essential_trims_dead_ends():
    pres = SoficPresentation.from_edges([("A", "0", "A"), ("A", "1", "B"), ("C", "0", "A")])
    assert pres.vertices == ["A"]
    assert pres.removed == ("B", "C")


def test_golden_mean_presentation(golden_mean):
    assert golden_mean.vertices == ["0", "1"]
    assert ("1", "1", "1") not in golden_mean.edges()
    assert golden_mean.is_deterministic()


def test_determinize(even_shift):
    deterministic = determinize(even_shift)
    assert deterministic.is_deterministic()
    assert subset_name(["B", "A"]) == "{A,B}"
    assert "{A,B}" in deterministic.vertices


def test_golden_mean_language(golden_mean):
    assert SoficLanguage(golden_mean).words(2) == frozenset({("0", "0"), ("0", "1"), ("1", "0")})


def test_golden_mean_family(golden_mean):
    family = predecessor_set_family(golden_mean)
    assert family.size == 2
    assert len(family.core) == 2
    assert family.to_dict()["core_size"] == 2


def test_even_shift_family(even_shift):
    family = predecessor_set_family(even_shift)
    assert family.size == 3
    assert len(family.core) == 2
    top = family.members[0]
    assert len(top) == 3
    assert family.transition(top, "0") == top
    assert top not in family.core


def test_three_cycle(three_cycle):
    assert is_finite_shift(three_cycle)
    family = predecessor_set_family(three_cycle)
    assert family.size == 3 and len(family.core) == 3
    report = sofic_degree_profile(three_cycle, 3)
    assert report["profile"] == [1, 1, 1]
    assert report["plateau"]


def test_full_shift_family():
    full = sft_from_forbidden(BINARY, [])
    assert full.vertices == ["*"]
    assert predecessor_set_family(full).size == 1
    assert not is_finite_shift(full)


def test_golden_mean_is_infinite(golden_mean, even_shift):
    assert not is_finite_shift(golden_mean)
    assert not is_finite_shift(even_shift)


def test_forbidding_every_letter_empties_the_shift():
    pres = sft_from_forbidden(BINARY, [("0",), ("1",)])
    assert pres.is_empty()
    assert predecessor_set_family(pres).size == 0
    assert is_finite_shift(pres)


def test_forbidden_words_are_checked():
    with pytest.raises(EmptyWordError):
        sft_from_forbidden(BINARY, [()])
    with pytest.raises(FormatError):
        sft_from_forbidden(BINARY, [("2",)])


def test_golden_mean_degree_grows(golden_mean):
    report = sofic_degree_profile(golden_mean, 4)
    assert report["profile"] == [2, 3, 5, 8]
    assert not report["plateau"]
    assert report["strictly_increasing"]
    assert report["family_size"] == 2
    oracle = degree_profile(SoficLanguage(golden_mean), 4, 4)
    assert oracle["profile"] == report["profile"]


def test_parse_graph_errors():
    with pytest.raises(FormatError) as excinfo:
        parse_graph("A 0 B\nA 0\n")
    assert excinfo.value.line_number == 2
    with pytest.raises(FormatError):
        parse_graph("A a.b B\n")
    with pytest.raises(FormatError):
        parse_graph("# nada\n")


def test_format_graph_reads_back(even_shift):
    assert parse_graph(format_graph(even_shift)).edges() == even_shift.edges()
