#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Lenguaje exacto de longitud r del conjunto límite, complejidad por palabras,
estimación de entropía y testigos de periodicidad asintótica
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

import config
from directive import DirectiveSequence, block, is_everywhere_growing
from errors import BudgetExceededError, EmptyWordError, NotGrowingError
from substitution import Substitution
from words import Alphabet, Letters, format_letters, letters_smallest_period

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]

# tope de niveles recorridos buscando <tau_[0,t)> >= r
MAX_LEVEL_SEARCH = 10000


@dataclass(frozen=True)
class LanguageTable:
    length: int
    words: FrozenSet[Letters]
    source: Dict = field(compare=False, hash=False)
    level: Optional[int] = None

    def sorted_words(self) -> List[Letters]:
        return sorted(self.words)

    def text(self) -> str:
        """Una palabra por línea, en orden"""
        return "".join(format_letters(w) + "\n" for w in self.sorted_words())

    def __contains__(self, word: object) -> bool:
        return tuple(word) in self.words

    def __len__(self) -> int:
        return len(self.words)


# ---------------------------------------------------------------------------
# Fuentes de lenguaje (interfaz común words(r))
# ---------------------------------------------------------------------------

class LanguageSource:
    """Fuente de lenguajes factoriales bilaterales"""

    alphabet: Alphabet
    budget: int

    def words(self, r: int) -> FrozenSet[Letters]:
        raise NotImplementedError

    def describe(self) -> Dict:
        raise NotImplementedError

    def table(self, r: int) -> LanguageTable:
        return LanguageTable(r, self.words(r), self.describe())

    def _check_budget(self, r: int):
        if r < 1:
            raise ValueError(f"language length must be positive, got {r}")
        if r > self.budget:
            raise BudgetExceededError("language length", r, self.budget)


class SubstitutiveLanguage(LanguageSource):
    """Lenguaje del conjunto límite de una sucesión directiva"""

    def __init__(self, seq: DirectiveSequence, budget: Optional[int] = None):
        self.seq = seq
        self.budget = budget if budget is not None else config.LANG_BUDGET
        self.alphabet = seq.alphabet(0)
        if not is_everywhere_growing(seq):
            raise NotGrowingError("the language of the limit set needs an everywhere-growing sequence")

    def words(self, r: int) -> FrozenSet[Letters]:
        self._check_budget(r)
        return _limit_language(self.seq, r, language_level(self.seq, r))

    def table(self, r: int) -> LanguageTable:
        self._check_budget(r)
        t = language_level(self.seq, r)
        return LanguageTable(r, _limit_language(self.seq, r, t), self.describe(), t)

    def describe(self) -> Dict:
        return {"kind": "limit-set", "sequence": self.seq.describe()}


class FullShiftLanguage(LanguageSource):

    def __init__(self, alphabet: Alphabet, budget: Optional[int] = None):
        self.alphabet = alphabet
        self.budget = budget if budget is not None else config.LANG_BUDGET

    def words(self, r: int) -> FrozenSet[Letters]:
        self._check_budget(r)
        if len(self.alphabet) ** r > config.PATH_CAP:
            raise BudgetExceededError("full-shift word count", len(self.alphabet) ** r, config.PATH_CAP)
        return frozenset(self.alphabet.words(r))

    def describe(self) -> Dict:
        return {"kind": "full-shift", "alphabet": list(self.alphabet.symbols)}


class PeriodicLanguage(LanguageSource):
    """Lenguaje de una única órbita periódica ...uuu..."""

    def __init__(self, period_word: Sequence[str], budget: Optional[int] = None):
        if not period_word:
            raise EmptyWordError("periodic orbit needs a nonempty period word")
        self.period_word = tuple(period_word)
        self.alphabet = Alphabet.of(self.period_word)
        self.budget = budget if budget is not None else config.LANG_BUDGET

    def words(self, r: int) -> FrozenSet[Letters]:
        self._check_budget(r)
        p = len(self.period_word)
        unrolled = self.period_word * (r // p + 2)
        return frozenset(unrolled[i:i + r] for i in range(p))

    def describe(self) -> Dict:
        return {"kind": "periodic-orbit", "period": format_letters(self.period_word)}


# ---------------------------------------------------------------------------
# Lenguaje de dos letras (punto fijo exacto por nivel)
# ---------------------------------------------------------------------------

def _pair_image(tau: Substitution, pairs: Iterable[Pair]) -> FrozenSet[Pair]:
    """Factores de longitud 2 de tau(c) y tau(d), más la frontera último(tau(c)) primero(tau(d))"""
    out: Set[Pair] = set()
    for c, d in pairs:
        left, right = tau.image_letters(c), tau.image_letters(d)
        for image in (left, right):
            out.update(zip(image, image[1:]))
        out.add((left[-1], right[0]))
    return frozenset(out)


@lru_cache(maxsize=256)
def _two_letter_table(seq: DirectiveSequence) -> Tuple[FrozenSet[Pair], ...]:
    start, period = seq.period_start, seq.period
    top = seq.cycle[-1].domain
    pairs = frozenset(product(top.symbols, repeat=2))
    rounds = 0
    while True:
        current = pairs
        for tau in reversed(seq.cycle):
            current = _pair_image(tau, current)
        rounds += 1
        if current == pairs:
            break
        pairs = current
    table: List[FrozenSet[Pair]] = [frozenset()] * (start + period)
    current = pairs
    for i in range(period - 1, -1, -1):
        current = _pair_image(seq.cycle[i], current)
        table[start + i] = current
    current = table[start]
    for t in range(start - 1, -1, -1):
        current = _pair_image(seq.transient[t], current)
        table[t] = current
    logger.debug(f"two-letter fixpoint reached after {rounds} cycle rounds")
    return tuple(table)


def two_letter_language(seq: DirectiveSequence, t: int) -> FrozenSet[Pair]:
    """P_t: pares ab del nivel t que aparecen en configuraciones desustituibles a todo nivel"""
    table = _two_letter_table(seq)
    if t < len(table):
        return table[t]
    return table[seq.period_start + (t - seq.period_start) % seq.period]


def language_level(seq: DirectiveSequence, r: int) -> int:
    """Menor nivel t con <tau_[0,t)> >= r"""
    t = 0
    while block(seq, 0, t).substitution.min_len < r:
        t += 1
        if t > MAX_LEVEL_SEARCH:
            raise NotGrowingError(f"no level reaches minimal length {r}")
    return t


def _factors_of_pairs(tau: Substitution, pairs: Sequence[Pair], r: int) -> Set[Letters]:
    found: Set[Letters] = set()
    for c, d in pairs:
        left = tau.image_letters(c)
        text = left + tau.image_letters(d)
        for i in range(len(left)):
            found.add(text[i:i + r])
    return found


@lru_cache(maxsize=1024)
def _limit_language(seq: DirectiveSequence, r: int, t: int) -> FrozenSet[Letters]:
    tau = block(seq, 0, t).substitution
    pairs = sorted(two_letter_language(seq, t))
    threads = config.EXPANSE_THREADS
    if threads <= 1 or len(pairs) < 2 * threads:
        return frozenset(_factors_of_pairs(tau, pairs, r))
    chunks = [pairs[i::threads] for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda chunk: _factors_of_pairs(tau, chunk, r), chunks)
        return frozenset().union(*parts)


def language_at_level(seq: DirectiveSequence, r: int, t: int) -> FrozenSet[Letters]:
    """Lenguaje calculado en un nivel dado (cualquier t con <tau_[0,t)> >= r da el mismo conjunto)"""
    if block(seq, 0, t).substitution.min_len < r:
        raise NotGrowingError(f"level {t} images are shorter than {r}")
    return _limit_language(seq, r, t)


# ---------------------------------------------------------------------------
# Operaciones públicas
# ---------------------------------------------------------------------------

def language(seq: DirectiveSequence, r: int, budget: Optional[int] = None) -> LanguageTable:
    return SubstitutiveLanguage(seq, budget).table(r)


def complexity(seq: DirectiveSequence, r_max: int, budget: Optional[int] = None) -> List[int]:
    source = SubstitutiveLanguage(seq, budget)
    top = source.words(r_max)
    # factorial y extensible a la derecha: L_r son los prefijos de L_{r_max}
    return [len({w[:r] for w in top}) for r in range(1, r_max + 1)]


def entropy_estimate(p: Sequence[int]) -> Dict:
    """
    log p(r_max)/r_max y pendiente h del modelo log p(r) = h r + d log r + c

    El modelo se ajusta en r_max/4, r_max/2 y r_max: ahí el término d log r + c
    se cancela y la complejidad polinomial no aporta pendiente.
    """
    r_max = len(p)
    if r_max == 0 or min(p) < 1:
        raise ValueError("complexity sequence must be nonempty and positive")
    estimate = math.log(p[-1]) / r_max
    lengths = np.arange(max(1, (r_max + 1) // 2), r_max + 1, dtype=float)
    counts = np.array([p[int(r) - 1] for r in lengths], dtype=float)
    raw_slope = float(np.polyfit(lengths, np.log(counts), 1)[0]) if len(lengths) >= 2 else 0.0
    if r_max >= 4:
        k = r_max // 4
        points = np.array([k, 2 * k, 4 * k], dtype=float)
        design = np.column_stack([points, np.log(points), np.ones_like(points)])
        values = np.log(np.array([p[int(r) - 1] for r in points], dtype=float))
        slope = float(np.linalg.lstsq(design, values, rcond=None)[0][0])
    else:
        slope = raw_slope
    return {
        "r_max": r_max,
        "estimate": estimate,
        "slope": max(0.0, slope),
        "raw_slope": raw_slope
    }


def asymptotic_periodic_witness(seq: DirectiveSequence, m_max: Optional[int] = None,
                                budget: Optional[int] = None) -> Optional[Dict]:
    """Buscar a^m b^m o a^m b a^m en el lenguaje para todo m <= m_max"""
    m_max = m_max if m_max is not None else config.M_MAX
    source = SubstitutiveLanguage(seq, budget)
    letters = sorted(source.words(1))
    for pattern in ("a^m b^m", "a^m b a^m"):
        needed = 2 * m_max if pattern == "a^m b^m" else 2 * m_max + 1
        if needed > source.budget:
            raise BudgetExceededError("periodicity witness length", needed, source.budget)
        for (a,), (b,) in product(letters, repeat=2):
            if a == b:
                continue
            if all(_pattern_word(pattern, a, b, m) in source.words(len(_pattern_word(pattern, a, b, m)))
                   for m in range(1, m_max + 1)):
                logger.info(f"🔍 Asymptotic periodicity witness {pattern} with a={a}, b={b} up to m={m_max}")
                return {"pattern": pattern, "letters": [a, b], "m_max": m_max}
    return None


def _pattern_word(pattern: str, a: str, b: str, m: int) -> Letters:
    if pattern == "a^m b^m":
        return (a,) * m + (b,) * m
    return (a,) * m + (b,) + (a,) * m


def periodic_words(source: LanguageSource, r: int, max_period: int) -> List[Letters]:
    """Palabras de L_r con periodo <= max_period (evidencia de puntos periódicos)"""
    return sorted(w for w in source.words(r) if letters_smallest_period(w) <= max_period)
