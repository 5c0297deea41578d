#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Oráculo empírico: conteo exhaustivo de predecesores sobre ventanas finitas,
perfiles de grado y verificación numérica de las cotas de cardinalidad
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from directive import DirectiveSequence, block
from errors import BudgetExceededError, PremiseError
from language import LanguageSource, SubstitutiveLanguage
from words import Letters, format_letters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PredecessorTable:
    """Para cada w en L_{R_w}: número de u en A^ell con uw en L_{ell + R_w}"""

    right_length: int
    left_length: int
    counts: Tuple[Tuple[Letters, int], ...]
    max_count: int
    argmax: Letters
    source: Dict = field(compare=False, hash=False)

    def count(self, right_word: Letters) -> int:
        return dict(self.counts).get(tuple(right_word), 0)

    def csv_rows(self) -> List[Tuple[str, int, int]]:
        return [(format_letters(w), self.left_length, c) for w, c in self.counts]

    def summary(self) -> Dict:
        return {
            "ell": self.left_length,
            "right_length": self.right_length,
            "right_words": len(self.counts),
            "max": self.max_count,
            "argmax": format_letters(self.argmax)
        }


def predecessor_table(L: LanguageSource, ell: int, R_w: int) -> PredecessorTable:
    if ell < 1 or R_w < 1:
        raise PremiseError(f"ell and R_w must be positive (got ell={ell}, R_w={R_w})")
    extended = L.words(ell + R_w)
    # palabras distintas con el mismo sufijo = predecesores distintos
    counter = Counter(w[ell:] for w in extended)
    rights = L.words(R_w)
    missing = [w for w in rights if w not in counter]
    if missing:
        raise PremiseError(f"language is not left-extendable: {format_letters(sorted(missing)[0])} has no predecessor")
    counts = tuple(sorted(counter.items()))
    max_count = max(c for _, c in counts)
    argmax = min(w for w, c in counts if c == max_count)
    return PredecessorTable(R_w, ell, counts, max_count, argmax, L.describe())


def default_right_length(L: LanguageSource, ell: int) -> int:
    """Mayor R_w dentro del presupuesto del lenguaje"""
    R_w = L.budget - ell
    if R_w < 1:
        raise BudgetExceededError("predecessor window", ell + 1, L.budget)
    return R_w


def is_plateau(profile: Sequence[int]) -> bool:
    """La segunda mitad del perfil es constante"""
    if not profile:
        return False
    return len(set(profile[len(profile) // 2:])) == 1


def degree_profile(L: LanguageSource, ell_max: int, R_w: int) -> Dict:
    profile = [predecessor_table(L, ell, R_w).max_count for ell in range(1, ell_max + 1)]
    report = {
        "right_length": R_w,
        "profile": profile,
        "max": max(profile),
        "plateau": is_plateau(profile),
        "strictly_increasing": all(a < b for a, b in zip(profile, profile[1:]))
    }
    logger.info(f"📊 Degree profile (R_w={R_w}): {profile}")
    return report


def persistence_witness(L: LanguageSource, ell: int, R_w: int) -> Dict:
    """Testigo de cota inferior: el máximo en R_w se mantiene al duplicar R_w"""
    table = predecessor_table(L, ell, R_w)
    witness = {
        "ell": ell,
        "right_length": R_w,
        "count": table.max_count,
        "right_word": format_letters(table.argmax),
        "doubled_count": None,
        "persistent": None
    }
    if ell + 2 * R_w > L.budget:
        logger.warning(f"⚠️ Persistence unchecked: ell + 2R_w = {ell + 2 * R_w} exceeds budget {L.budget}")
        return witness
    doubled = predecessor_table(L, ell, 2 * R_w)
    witness["doubled_count"] = doubled.max_count
    witness["persistent"] = doubled.max_count == table.max_count
    return witness


def verify_hgenrad_bound(seq: DirectiveSequence, t: int, ell: int, R: Optional[int],
                         x_window: Optional[int] = None, budget: Optional[int] = None) -> Dict:
    """|P^h(x)| <= sum_{j'} |B|^{j'+ell} con h la menor longitud de tau_[0,t)(u), u en L_ell(Y)"""
    if R is None:
        raise PremiseError("a right-quasi-recognizability radius is required")
    tau = block(seq, 0, t).substitution
    level_language = SubstitutiveLanguage(seq.shift(t), budget)
    h = min(len(tau.expand_letters(u)) for u in level_language.words(ell))
    X = SubstitutiveLanguage(seq, budget)
    R_w = x_window if x_window is not None else X.budget - h
    if R_w < 1:
        raise BudgetExceededError("predecessor length h", h + 1, X.budget)
    left = predecessor_table(X, h, R_w).max_count
    low = -(-R * tau.min_len // tau.max_len)
    size = len(seq.alphabet(t))
    right = sum(size ** (j + ell) for j in range(low, R + 1))
    return {"t": t, "ell": ell, "h": h, "radius": R, "right_length": R_w,
            "left": left, "right": right, "holds": left <= right}


def rkrad_sum_bound(rk: int, R: int) -> int:
    return sum(rk ** (j + 1) for j in range(R + 1))


def verify_rkrad_bound(L: LanguageSource, rk: int, R: int, ell: int, R_w: int) -> Dict:
    """Compara el oráculo con rk^(R+1) y con la suma sum_{j'<=R} rk^(j'+1)"""
    observed = predecessor_table(L, ell, R_w).max_count
    simple = rk ** (R + 1)
    summed = rkrad_sum_bound(rk, R)
    return {"observed": observed, "power_bound": simple, "sum_bound": summed,
            "holds_power": observed <= simple, "holds_sum": observed <= summed}
