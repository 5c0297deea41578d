#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sustituciones: composición, longitudes mínima/máxima y los predicados
que consumen las reglas de certificación
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from errors import AlphabetMismatchError, EmptyWordError, FormatError, PremiseError, RecoverabilityRangeError
from words import (Alphabet, Letters, Word, count_occurrences, format_letters, letters_is_suffix_code,
                   parse_letters)

logger = logging.getLogger(__name__)

RULE_ARROW = "->"
CODOMAIN_PREFIX = "codomain:"


@dataclass(frozen=True)
class Substitution:
    """Aplicación letra -> palabra de domain (B) en codomain (A)"""

    domain: Alphabet
    codomain: Alphabet
    images: Tuple[Tuple[str, Letters], ...]
    _table: Dict[str, Letters] = field(init=False, repr=False, compare=False, hash=False)
    min_len: int = field(init=False, compare=False)
    max_len: int = field(init=False, compare=False)

    def __post_init__(self):
        table = dict(self.images)
        if tuple(letter for letter, _ in self.images) != self.domain.symbols:
            raise AlphabetMismatchError(f"images must list the domain {self.domain.symbols} in order")
        for letter, image in self.images:
            for b in image:
                if b not in self.codomain:
                    raise AlphabetMismatchError(f"image of {letter!r} uses {b!r} outside codomain")
        lengths = [len(image) for _, image in self.images]
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "min_len", min(lengths))
        object.__setattr__(self, "max_len", max(lengths))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Union[str, Sequence[str]]],
                     codomain: Optional[Alphabet] = None) -> "Substitution":
        """Construir desde {letra: palabra}; las palabras pueden ser texto o secuencias de letras"""
        domain = Alphabet(tuple(mapping))
        known = set(mapping)
        images = []
        for letter, image in mapping.items():
            letters = parse_letters(image, known) if isinstance(image, str) else tuple(image)
            images.append((letter, letters))
        if codomain is None:
            codomain = _infer_codomain(domain, [image for _, image in images])
        return cls(domain, codomain, tuple(images))

    def image_letters(self, letter: str) -> Letters:
        try:
            return self._table[letter]
        except KeyError:
            raise AlphabetMismatchError(f"letter {letter!r} outside domain {self.domain.symbols}") from None

    def image(self, letter: str) -> Word:
        return Word(self.image_letters(letter), self.codomain)

    def expand_letters(self, letters: Sequence[str]) -> Letters:
        out: List[str] = []
        for letter in letters:
            out.extend(self.image_letters(letter))
        return tuple(out)

    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def is_erasing(self) -> bool:
        return self.min_len == 0

    def is_expanding(self) -> bool:
        return self.min_len >= 2

    def as_dict(self) -> Dict[str, str]:
        return {letter: format_letters(image) for letter, image in self.images}

    def __str__(self) -> str:
        return ", ".join(f"{letter}->{format_letters(image)}" for letter, image in self.images)


def _infer_codomain(domain: Alphabet, images: Sequence[Letters]) -> Alphabet:
    used = [b for image in images for b in image]
    if all(b in domain for b in used):
        return domain
    return Alphabet.of(used)


# ---------------------------------------------------------------------------
# Construcción y composición
# ---------------------------------------------------------------------------

def identity(alphabet: Alphabet) -> Substitution:
    return Substitution(alphabet, alphabet, tuple((a, (a,)) for a in alphabet))


def compose(tau: Substitution, tau2: Substitution) -> Substitution:
    """tau ∘ tau2: primero tau2 (C -> B), luego tau (B -> A)"""
    if not tau2.codomain.same_letters(tau.domain):
        raise AlphabetMismatchError(
            f"cannot compose: codomain {tau2.codomain.symbols} differs from domain {tau.domain.symbols}")
    images = tuple((letter, tau.expand_letters(image)) for letter, image in tau2.images)
    return Substitution(tau2.domain, tau.codomain, images)


def expand(tau: Substitution, u: Word) -> Word:
    return Word(tau.expand_letters(u.letters), tau.codomain)


# ---------------------------------------------------------------------------
# Predicados
# ---------------------------------------------------------------------------

def is_injective(tau: Substitution) -> bool:
    return len({image for _, image in tau.images}) == len(tau.images)


def is_uniform(tau: Substitution) -> bool:
    return tau.min_len == tau.max_len


def is_left_proper(tau: Substitution) -> bool:
    if tau.is_erasing():
        return False
    return len({image[0] for _, image in tau.images}) == 1


def last_letter_map(tau: Substitution) -> Dict[str, str]:
    if tau.is_erasing():
        raise EmptyWordError("erased letter has no last image letter")
    return {letter: image[-1] for letter, image in tau.images}


def is_right_marked(tau: Substitution) -> bool:
    """La aplicación a -> última letra de tau(a) es inyectiva"""
    if tau.is_erasing():
        return False
    lasts = last_letter_map(tau)
    return len(set(lasts.values())) == len(lasts)


def image_suffixes(tau: Substitution, q: int) -> Dict[str, Letters]:
    return {letter: image[q:] for letter, image in tau.images}


def is_q_right_recoverable(tau: Substitution, q: int) -> bool:
    """Inyectiva y los sufijos desde q, distintos dos a dos, forman un código de sufijos"""
    if q < 1 or q >= tau.min_len:
        raise RecoverabilityRangeError(f"q={q} outside [1, {tau.min_len})")
    if not is_injective(tau):
        return False
    suffixes = list(image_suffixes(tau, q).values())
    if len(set(suffixes)) != len(suffixes):
        return False
    return letters_is_suffix_code(suffixes)


def max_right_recoverability(tau: Substitution) -> Optional[int]:
    # el conjunto de q válidos es un intervalo cerrado hacia abajo
    for q in range(tau.min_len - 1, 0, -1):
        if is_q_right_recoverable(tau, q):
            return q
    return None


def is_right_recoverable(tau: Substitution) -> bool:
    return max_right_recoverability(tau) is not None


def maximal_common_prefix(tau: Substitution) -> Word:
    if not is_left_proper(tau):
        raise PremiseError(f"substitution {tau} is not left-proper")
    images = [image for _, image in tau.images]
    length = 0
    shortest = min(len(image) for image in images)
    while length < shortest and len({image[length] for image in images}) == 1:
        length += 1
    return Word(images[0][:length], tau.codomain)


def is_return_substitution(tau: Substitution, w: Word) -> bool:
    """w aparece exactamente dos veces en tau(a)w, una como prefijo, para toda letra a"""
    if w.is_empty():
        raise EmptyWordError("return word must be nonempty")
    if not is_injective(tau):
        return False
    for _, image in tau.images:
        text = image + w.letters
        if text[:len(w)] != w.letters or count_occurrences(w.letters, text) != 2:
            return False
    return True


def is_toeplitz(tau: Substitution) -> bool:
    return is_left_proper(tau) and is_uniform(tau) and is_injective(tau) and tau.is_expanding()


def is_suffix_code_substitution(tau: Substitution) -> bool:
    """Las imágenes forman un código de sufijos"""
    if tau.is_erasing():
        return False
    return letters_is_suffix_code(image for _, image in tau.images)


def properties(tau: Substitution, q: Optional[int] = None) -> Dict:
    """Resumen de todos los predicados (para reportes)"""
    report = {
        "substitution": tau.as_dict(),
        "domain": list(tau.domain.symbols),
        "codomain": list(tau.codomain.symbols),
        "min_len": tau.min_len,
        "max_len": tau.max_len,
        "erasing": tau.is_erasing(),
        "injective": is_injective(tau),
        "uniform": is_uniform(tau),
        "left_proper": is_left_proper(tau),
        "right_marked": is_right_marked(tau),
        "expanding": tau.is_expanding(),
        "suffix_code_images": is_suffix_code_substitution(tau),
        "max_right_recoverability": max_right_recoverability(tau),
        "toeplitz": is_toeplitz(tau),
        "common_prefix": None
    }
    if report["left_proper"]:
        report["common_prefix"] = maximal_common_prefix(tau).text()
    if q is not None:
        try:
            report["q_right_recoverable"] = {"q": q, "value": is_q_right_recoverable(tau, q)}
        except RecoverabilityRangeError as e:
            report["q_right_recoverable"] = {"q": q, "value": None, "error": str(e)}
    return report


# ---------------------------------------------------------------------------
# Normalización (nunca se aplica implícitamente)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedSubstitution:
    substitution: Substitution
    representatives: Tuple[Tuple[str, str], ...]
    dropped: Tuple[str, ...]

    def representative(self, letter: str) -> Optional[str]:
        return dict(self.representatives).get(letter)


def normalize(tau: Substitution) -> NormalizedSubstitution:
    """Fusionar letras con la misma imagen y eliminar las letras borradas"""
    first_with_image: Dict[Letters, str] = {}
    representatives = []
    dropped = []
    for letter, image in tau.images:
        if not image:
            dropped.append(letter)
            continue
        rep = first_with_image.setdefault(image, letter)
        representatives.append((letter, rep))
    kept = tuple(letter for letter, rep in representatives if letter == rep)
    if not kept:
        raise PremiseError("every letter is erased")
    domain = Alphabet(kept)
    images = tuple((letter, tau.image_letters(letter)) for letter in kept)
    if dropped or len(kept) < len(tau.domain):
        logger.info(f"🔧 Normalized substitution: merged {len(tau.domain) - len(kept) - len(dropped)}, "
                    f"dropped {len(dropped)}")
    return NormalizedSubstitution(Substitution(domain, tau.codomain, images), tuple(representatives),
                                  tuple(dropped))


def rewrite_images(tau: Substitution, normalized_codomain: NormalizedSubstitution) -> Substitution:
    """Reescribir las imágenes de tau tras normalizar el nivel que lee su codominio"""
    reps = dict(normalized_codomain.representatives)
    images = tuple((letter, tuple(reps[b] for b in image if b in reps)) for letter, image in tau.images)
    return Substitution(tau.domain, normalized_codomain.substitution.domain, images)


# ---------------------------------------------------------------------------
# Formato de texto: "<letra> -> <palabra>" por línea
# ---------------------------------------------------------------------------

def parse_substitution(text: str, codomain: Optional[Alphabet] = None) -> Substitution:
    rules: List[Tuple[int, str, str]] = []
    declared: Optional[Alphabet] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(CODOMAIN_PREFIX):
            if declared is not None or rules:
                raise FormatError("codomain must be declared once, before the rules", number)
            try:
                declared = Alphabet(tuple(line[len(CODOMAIN_PREFIX):].split()))
            except (EmptyWordError, FormatError) as e:
                raise FormatError(str(e), number) from None
            continue
        if RULE_ARROW not in line:
            raise FormatError(f"expected '<letter> {RULE_ARROW} <word>', got {raw.strip()!r}", number)
        left, right = line.split(RULE_ARROW, 1)
        letter = left.strip()
        if not letter or " " in letter:
            raise FormatError(f"invalid letter {left.strip()!r}", number)
        if any(letter == seen for _, seen, _ in rules):
            raise FormatError(f"duplicate rule for letter {letter!r}", number)
        rules.append((number, letter, right.strip()))
    if not rules:
        raise FormatError("substitution has no rules")
    if codomain is None:
        codomain = declared

    known = {letter for _, letter, _ in rules}
    for _, _, image in rules:
        if "." in image:
            known.update(token for token in image.split(".") if token)
    if codomain is not None:
        known.update(codomain.symbols)
    mapping = {}
    for number, letter, image in rules:
        try:
            mapping[letter] = parse_letters(image, known)
        except FormatError as e:
            raise FormatError(str(e), number) from None
    return Substitution.from_mapping(mapping, codomain)


def format_substitution(tau: Substitution) -> str:
    """Texto .sub; la línea de codominio solo aparece si no se deduce de las reglas"""
    lines = [f"{letter} {RULE_ARROW} {format_letters(image)}" for letter, image in tau.images]
    if tau.codomain != _infer_codomain(tau.domain, [image for _, image in tau.images]):
        lines.insert(0, f"{CODOMAIN_PREFIX} {' '.join(tau.codomain.symbols)}")
    return "\n".join(lines) + "\n"
