#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Alfabetos, palabras finitas y predicados elementales sobre palabras
(sufijos, periodos, palabras sin solapamiento)
"""

from dataclasses import dataclass
from typing import Collection, Iterable, Iterator, Optional, Sequence, Tuple, Union

from errors import AlphabetMismatchError, EmptyWordError, FormatError

Letters = Tuple[str, ...]

LETTER_SEPARATOR = "."


@dataclass(frozen=True)
class Alphabet:
    """Conjunto finito ordenado de letras (tokens opacos)"""

    symbols: Tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise EmptyWordError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise FormatError(f"duplicate letters in alphabet {self.symbols}")
        for letter in self.symbols:
            if not letter or any(ch.isspace() for ch in letter) or LETTER_SEPARATOR in letter:
                raise FormatError(f"invalid letter token {letter!r}")

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        """Alfabeto con las letras en orden de primera aparición"""
        seen = []
        for letter in letters:
            if letter not in seen:
                seen.append(letter)
        return cls(tuple(seen))

    def __contains__(self, letter: object) -> bool:
        return letter in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, letter: str) -> int:
        return self.symbols.index(letter)

    def same_letters(self, other: "Alphabet") -> bool:
        return frozenset(self.symbols) == frozenset(other.symbols)

    def words(self, length: int) -> Iterator[Letters]:
        """Todas las tuplas de letras de longitud dada, en orden lexicográfico del alfabeto"""
        if length == 0:
            yield ()
            return
        for head in self.words(length - 1):
            for letter in self.symbols:
                yield head + (letter,)

    def text(self) -> str:
        return " ".join(self.symbols)


@dataclass(frozen=True)
class Word:
    """Palabra finita sobre un alfabeto (posiblemente vacía)"""

    letters: Letters
    alphabet: Alphabet

    def __post_init__(self):
        for letter in self.letters:
            if letter not in self.alphabet:
                raise AlphabetMismatchError(f"letter {letter!r} not in alphabet {self.alphabet.symbols}")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        return cls(parse_letters(text, alphabet.symbols), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __getitem__(self, index: Union[int, slice]) -> Union[str, "Word"]:
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet)
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        _check_same_alphabet(self, other)
        return Word(self.letters + other.letters, self.alphabet)

    def is_empty(self) -> bool:
        return not self.letters

    def first(self) -> str:
        if not self.letters:
            raise EmptyWordError("empty word has no first letter")
        return self.letters[0]

    def last(self) -> str:
        if not self.letters:
            raise EmptyWordError("empty word has no last letter")
        return self.letters[-1]

    def text(self) -> str:
        return format_letters(self.letters)

    def __str__(self) -> str:
        return self.text()


# ---------------------------------------------------------------------------
# Formato de texto
# ---------------------------------------------------------------------------

def parse_letters(text: str, known: Optional[Collection[str]] = None) -> Letters:
    """Leer una palabra: tokens concatenados, o separados por '.' si hay letras de varios caracteres"""
    text = text.strip()
    if not text:
        return ()
    if known is not None and text in known:
        return (text,)
    if LETTER_SEPARATOR in text:
        tokens = text.split(LETTER_SEPARATOR)
        if any(not token for token in tokens):
            raise FormatError(f"empty letter token in {text!r}")
        return tuple(tokens)
    return tuple(text)


def format_letters(letters: Sequence[str]) -> str:
    if all(len(letter) == 1 for letter in letters):
        return "".join(letters)
    return LETTER_SEPARATOR.join(letters)


# ---------------------------------------------------------------------------
# Predicados sobre tuplas de letras (usados en los bucles internos)
# ---------------------------------------------------------------------------

def letters_is_suffix(u: Sequence[str], v: Sequence[str]) -> bool:
    if len(u) > len(v):
        return False
    return len(u) == 0 or tuple(v[len(v) - len(u):]) == tuple(u)


def letters_is_suffix_code(words: Iterable[Sequence[str]]) -> bool:
    """Ninguna palabra es sufijo estricto de otra (se comparan las inversas ordenadas)"""
    reversed_words = sorted({tuple(reversed(w)) for w in words})
    for word in reversed_words:
        if not word:
            raise EmptyWordError("suffix code members must be nonempty")
    # si x es prefijo de y, x es prefijo de su vecino inmediato en el orden
    for shorter, longer in zip(reversed_words, reversed_words[1:]):
        if longer[:len(shorter)] == shorter:
            return False
    return True


def letters_smallest_period(u: Sequence[str]) -> int:
    if not u:
        raise EmptyWordError("period of the empty word is undefined")
    n = len(u)
    # función de fallo (bordes) de Knuth-Morris-Pratt
    failure = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and u[i] != u[k]:
            k = failure[k - 1]
        if u[i] == u[k]:
            k += 1
        failure[i] = k
    return n - failure[-1]


def letters_borders(u: Sequence[str]) -> Tuple[int, ...]:
    """Longitudes de los bordes propios no vacíos"""
    return tuple(length for length in range(1, len(u))
                 if tuple(u[:length]) == tuple(u[len(u) - length:]))


def letters_is_nonoverlapping(w: Sequence[str]) -> bool:
    if not w:
        raise EmptyWordError("nonoverlapping is undefined for the empty word")
    # sin borde propio no vacío equivale a que el menor periodo sea |w|
    return letters_smallest_period(w) == len(w)


def count_occurrences(pattern: Sequence[str], text: Sequence[str]) -> int:
    """Ocurrencias con solapamiento (ventana deslizante)"""
    pattern = tuple(pattern)
    text = tuple(text)
    m = len(pattern)
    return sum(1 for i in range(len(text) - m + 1) if text[i:i + m] == pattern)


# ---------------------------------------------------------------------------
# Operaciones públicas sobre Word
# ---------------------------------------------------------------------------

def _check_same_alphabet(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: {u.alphabet.symbols} vs {v.alphabet.symbols}")


def is_suffix(u: Word, v: Word) -> bool:
    _check_same_alphabet(u, v)
    return letters_is_suffix(u.letters, v.letters)


def is_suffix_code(words: Iterable[Word]) -> bool:
    words = list(words)
    for word in words[1:]:
        _check_same_alphabet(words[0], word)
    return letters_is_suffix_code(w.letters for w in words)


def smallest_period(u: Word) -> int:
    return letters_smallest_period(u.letters)


def is_nonoverlapping(w: Word) -> bool:
    return letters_is_nonoverlapping(w.letters)
