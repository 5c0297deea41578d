#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sucesiones directivas preperiódicas (transitorio + ciclo): bloques compuestos,
rango, crecimiento, telescopado y primitividad
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from errors import AlphabetMismatchError, FormatError, NotGrowingError, PremiseError
from substitution import (NormalizedSubstitution, Substitution, compose, format_substitution, identity,
                          normalize, parse_substitution, rewrite_images)
from words import Alphabet

logger = logging.getLogger(__name__)

TRANSIENT_HEADER = "[transient]"
CYCLE_HEADER = "[cycle]"
BLOCK_SEPARATOR = "---"

# tope de vueltas al ciclo al normalizar una sucesión
NORMALIZE_MAX_ROUNDS = 64


@dataclass(frozen=True)
class DirectiveSequence:
    """tau_t para todo t: primero el transitorio, luego el ciclo repetido"""

    transient: Tuple[Substitution, ...]
    cycle: Tuple[Substitution, ...]

    def __post_init__(self):
        if not self.cycle:
            raise PremiseError("directive sequence needs a nonempty cycle")
        chain = self.transient + self.cycle
        for t in range(1, len(chain)):
            if not chain[t].codomain.same_letters(chain[t - 1].domain):
                raise AlphabetMismatchError(
                    f"level {t} codomain {chain[t].codomain.symbols} != level {t - 1} domain "
                    f"{chain[t - 1].domain.symbols}")
        if not self.cycle[0].codomain.same_letters(self.cycle[-1].domain):
            raise AlphabetMismatchError("cycle does not close: last domain differs from first codomain")

    @classmethod
    def constant(cls, tau: Substitution) -> "DirectiveSequence":
        return cls((), (tau,))

    @property
    def period_start(self) -> int:
        return len(self.transient)

    @property
    def period(self) -> int:
        return len(self.cycle)

    @property
    def described_levels(self) -> int:
        return len(self.transient) + len(self.cycle)

    def level(self, t: int) -> Substitution:
        if t < 0:
            raise ValueError(f"negative level {t}")
        if t < len(self.transient):
            return self.transient[t]
        return self.cycle[(t - len(self.transient)) % len(self.cycle)]

    def alphabet(self, t: int) -> Alphabet:
        """A_t, codominio de tau_t"""
        return self.level(t).codomain

    def shift(self, t: int) -> "DirectiveSequence":
        """La sucesión (tau_{t+s})_s"""
        if t < len(self.transient):
            return DirectiveSequence(self.transient[t:], self.cycle)
        offset = (t - len(self.transient)) % len(self.cycle)
        return DirectiveSequence((), self.cycle[offset:] + self.cycle[:offset])

    def describe(self) -> Dict:
        return {
            "transient": [tau.as_dict() for tau in self.transient],
            "cycle": [tau.as_dict() for tau in self.cycle]
        }


@dataclass(frozen=True)
class ComposedBlock:
    t_from: int
    t_to: int
    substitution: Substitution


# ---------------------------------------------------------------------------
# Bloques
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _block_substitution(seq: DirectiveSequence, t_from: int, t_to: int) -> Substitution:
    if t_to == t_from:
        return identity(seq.alphabet(t_from))
    if t_to == t_from + 1:
        return seq.level(t_from)
    # se extiende el bloque [t_from, t_to - 1) por la derecha
    return compose(_block_substitution(seq, t_from, t_to - 1), seq.level(t_to - 1))


def block(seq: DirectiveSequence, t_from: int, t_to: int) -> ComposedBlock:
    if t_from > t_to:
        raise ValueError(f"block({t_from}, {t_to}) with t_from > t_to")
    # llenar la caché de forma incremental (evita recursión profunda)
    for t in range(t_from, t_to + 1):
        _block_substitution(seq, t_from, t)
    return ComposedBlock(t_from, t_to, _block_substitution(seq, t_from, t_to))


def min_len_profile(seq: DirectiveSequence, t_max: int) -> List[int]:
    """<tau_[0,t)> para t = 0..t_max, con vectores de longitudes (sin construir las imágenes)"""
    lengths = {a: 1 for a in seq.alphabet(0)}
    profile = [1]
    for t in range(t_max):
        tau = seq.level(t)
        lengths = {letter: sum(lengths[b] for b in image) for letter, image in tau.images}
        profile.append(min(lengths.values()))
    return profile


def cycle_composition(seq: DirectiveSequence, rounds: int = 1) -> Substitution:
    start = seq.period_start
    return block(seq, start, start + rounds * seq.period).substitution


def rank(seq: DirectiveSequence) -> int:
    return min(len(tau.codomain) for tau in seq.cycle)


# ---------------------------------------------------------------------------
# Crecimiento
# ---------------------------------------------------------------------------

def is_everywhere_growing(seq: DirectiveSequence) -> bool:
    """Criterio del digrafo funcional sobre las letras con |pi(a)| = 1"""
    if any(tau.is_erasing() for tau in seq.transient + seq.cycle):
        logger.warning("⚠️ Erasing levels are never treated as growing; normalize the sequence first")
        return False
    pi = cycle_composition(seq)
    stalled = nx.DiGraph()
    for letter, image in pi.images:
        if len(image) == 1:
            stalled.add_edge(letter, image[0])
    return nx.is_directed_acyclic_graph(stalled)


def telescope_expanding(seq: DirectiveSequence) -> DirectiveSequence:
    if all(tau.is_expanding() for tau in seq.transient + seq.cycle):
        return seq
    if not is_everywhere_growing(seq):
        raise NotGrowingError("cannot telescope a sequence that is not everywhere-growing")
    start = seq.period_start
    rounds = 1
    while cycle_composition(seq, rounds).min_len < 2:
        rounds += 1
    width = rounds * seq.period
    cycle = (block(seq, start + width, start + 2 * width).substitution,)
    if start == 0:
        return DirectiveSequence((), cycle)
    return DirectiveSequence((block(seq, 0, start + width).substitution,), cycle)


# ---------------------------------------------------------------------------
# Primitividad (matrices booleanas de incidencia)
# ---------------------------------------------------------------------------

def incidence_matrix(tau: Substitution, row_order: Optional[Alphabet] = None) -> np.ndarray:
    """M[b, a] = la letra b aparece en tau(a)"""
    rows = row_order if row_order is not None else tau.codomain
    matrix = np.zeros((len(rows), len(tau.domain)), dtype=bool)
    for column, (letter, image) in enumerate(tau.images):
        for b in set(image):
            matrix[rows.index(b), column] = True
    return matrix


def _level_matrix(seq: DirectiveSequence, t: int) -> np.ndarray:
    # filas en el orden del dominio del nivel anterior para que los productos encajen
    rows = seq.level(t - 1).domain if t > 0 else seq.level(0).codomain
    return incidence_matrix(seq.level(t), rows)


def _boolean_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return (left.astype(np.int64) @ right.astype(np.int64)) > 0


def _positivity_horizon(seq: DirectiveSequence) -> int:
    size = max(len(tau.domain) for tau in seq.transient + seq.cycle)
    return seq.period_start + seq.period * (size * size + 1)


def is_weakly_primitive(seq: DirectiveSequence) -> bool:
    horizon = _positivity_horizon(seq)
    for t in range(seq.described_levels):
        product = _level_matrix(seq, t)
        reached = bool(product.all())
        for t_next in range(t + 1, t + horizon):
            if reached:
                break
            product = _boolean_product(product, _level_matrix(seq, t_next))
            reached = bool(product.all())
        if not reached:
            return False
    return True


def primitivity_exponent(seq: DirectiveSequence) -> Optional[int]:
    """Menor j con tau_[t, t+j) positivo para todo t, o None"""
    horizon = _positivity_horizon(seq)
    exponents = []
    for t in range(seq.described_levels):
        product = _level_matrix(seq, t)
        j = 1
        while not product.all() and j < horizon:
            product = _boolean_product(product, _level_matrix(seq, t + j))
            j += 1
        if not product.all():
            return None
        exponents.append(j)
    # componer por la derecha con niveles no borradores conserva la positividad
    return max(exponents)


def is_strongly_primitive(seq: DirectiveSequence) -> bool:
    """En sucesiones preperiódicas no borradoras coincide con la primitividad débil"""
    if any(tau.is_erasing() for tau in seq.transient + seq.cycle):
        return False
    return primitivity_exponent(seq) is not None


def unary_power_letters(seq: DirectiveSequence) -> List[Tuple[str, int]]:
    """Letras a del ciclo con pi^j(a) potencia de a (punto fijo a^Z en el límite)"""
    found = []
    alphabet = seq.alphabet(seq.period_start)
    for j in range(1, len(alphabet) + 1):
        pi_j = cycle_composition(seq, j)
        for letter, image in pi_j.images:
            if image and set(image) == {letter} and letter not in [a for a, _ in found]:
                found.append((letter, j))
    return found


# ---------------------------------------------------------------------------
# Normalización de sucesiones
# ---------------------------------------------------------------------------

def _state_key(previous: Optional[NormalizedSubstitution], codomain: Alphabet) -> Tuple[FrozenSet, FrozenSet]:
    if previous is None:
        return frozenset((b, b) for b in codomain), frozenset()
    return frozenset(previous.representatives), frozenset(previous.dropped)


def normalize_sequence(seq: DirectiveSequence) -> DirectiveSequence:
    """Propagar fusiones y borrados nivel a nivel hasta que la frontera del ciclo se repita"""
    previous: Optional[NormalizedSubstitution] = None
    transient: List[Substitution] = []
    for tau in seq.transient:
        if previous is not None:
            tau = rewrite_images(tau, previous)
        previous = normalize(tau)
        transient.append(previous.substitution)

    copies: List[List[Substitution]] = []
    seen: Dict[Tuple[FrozenSet, FrozenSet], int] = {}
    for _ in range(NORMALIZE_MAX_ROUNDS):
        key = _state_key(previous, seq.cycle[0].codomain)
        if key in seen:
            first = seen[key]
            new_transient = transient + [tau for copy in copies[:first] for tau in copy]
            new_cycle = [tau for copy in copies[first:] for tau in copy]
            logger.info(f"✅ Normalized sequence: transient {len(new_transient)}, cycle {len(new_cycle)}")
            return DirectiveSequence(tuple(new_transient), tuple(new_cycle))
        seen[key] = len(copies)
        copy = []
        for tau in seq.cycle:
            if previous is not None:
                tau = rewrite_images(tau, previous)
            previous = normalize(tau)
            copy.append(previous.substitution)
        copies.append(copy)
    raise PremiseError(f"normalization did not stabilize within {NORMALIZE_MAX_ROUNDS} cycle rounds")


# ---------------------------------------------------------------------------
# Formato de texto: secciones [transient] / [cycle], bloques separados por ---
# ---------------------------------------------------------------------------

def _split_blocks(lines: List[str]) -> List[str]:
    blocks, current = [], []
    for line in lines:
        if line.strip() == BLOCK_SEPARATOR:
            blocks.append("\n".join(current))
            current = []
        else:
            current.append(line)
    blocks.append("\n".join(current))
    return [text for text in blocks if any(l.split("#", 1)[0].strip() for l in text.splitlines())]


def parse_directive(text: str) -> DirectiveSequence:
    """Leer una sucesión directiva; un archivo sin secciones es una sucesión constante"""
    sections: Dict[str, List[str]] = {TRANSIENT_HEADER: [], CYCLE_HEADER: []}
    current = CYCLE_HEADER
    headers_seen = False
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip().lower()
        if stripped in sections:
            current = stripped
            headers_seen = True
            continue
        sections[current].append(raw)
    transient_raw = [parse_substitution(t) for t in _split_blocks(sections[TRANSIENT_HEADER])]
    cycle_raw = [parse_substitution(t) for t in _split_blocks(sections[CYCLE_HEADER])]
    if not cycle_raw:
        raise FormatError("directive sequence has no cycle block" if headers_seen else "empty input")

    chain = transient_raw + cycle_raw
    fixed: List[Substitution] = []
    for t, tau in enumerate(chain):
        if t > 0:
            codomain = fixed[t - 1].domain
        elif not transient_raw and all(b in cycle_raw[-1].domain for _, image in tau.images for b in image):
            codomain = cycle_raw[-1].domain
        else:
            codomain = tau.codomain
        fixed.append(Substitution(tau.domain, codomain, tau.images))
    return DirectiveSequence(tuple(fixed[:len(transient_raw)]), tuple(fixed[len(transient_raw):]))


def format_directive(seq: DirectiveSequence) -> str:
    parts = []
    if seq.transient:
        parts.append(TRANSIENT_HEADER + "\n" + (BLOCK_SEPARATOR + "\n").join(
            format_substitution(tau) for tau in seq.transient))
    parts.append(CYCLE_HEADER + "\n" + (BLOCK_SEPARATOR + "\n").join(
        format_substitution(tau) for tau in seq.cycle))
    return "\n".join(parts)
