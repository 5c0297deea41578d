#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Esquemas de desustitución sobre ventanas finitas, refutación de la
cuasi-reconocibilidad, sondeo del radio derecho y aritmética de radios
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from directive import DirectiveSequence, min_len_profile
from errors import AlphabetMismatchError, PremiseError, WindowTooNarrowError
from language import LanguageSource
from substitution import Substitution
from words import Letters, Word, format_letters

logger = logging.getLogger(__name__)

OUTCOME_REFUTED = "refuted"
OUTCOME_NO_COUNTEREXAMPLE = "no-counterexample"


@dataclass(frozen=True)
class Window:
    """Ventana finita: cubre las posiciones [-origin, len(word) - origin)"""

    word: Letters
    origin: int

    def __post_init__(self):
        if not 0 <= self.origin <= len(self.word):
            raise ValueError(f"origin {self.origin} outside [0, {len(self.word)}]")

    @classmethod
    def of(cls, word: Word, origin: int) -> "Window":
        return cls(word.letters, origin)

    @property
    def end(self) -> int:
        return len(self.word) - self.origin

    def text(self) -> str:
        return format_letters(self.word)


@dataclass(frozen=True)
class DesubstitutionScheme:
    """Cortes relativos al origen; k_0 es el mayor corte <= 0"""

    cuts: Tuple[int, ...]
    zero_position: int
    segments: Tuple[Tuple[str, ...], ...]
    left_partial: bool
    right_partial: bool

    def cut(self, i: int) -> Optional[int]:
        position = self.zero_position + i
        if 0 <= position < len(self.cuts):
            return self.cuts[position]
        return None

    def indexed_cuts(self) -> List[Tuple[int, int]]:
        return [(position - self.zero_position, c) for position, c in enumerate(self.cuts)]

    def cut_bounds_hold(self, tau: Substitution) -> bool:
        """i<tau> - ||tau|| < k_i <= i||tau|| para todo i >= 0 visible"""
        return all(i * tau.min_len - tau.max_len < k <= i * tau.max_len
                   for i, k in self.indexed_cuts() if i >= 0)

    def to_dict(self) -> Dict:
        return {
            "cuts": list(self.cuts),
            "k0_index": self.zero_position,
            "letters": ["|".join(choices) for choices in self.segments],
            "left_partial": self.left_partial,
            "right_partial": self.right_partial
        }


@dataclass(frozen=True)
class RadiusReport:
    label: str
    window: int
    radius: Optional[int]
    outcome: str
    windows_checked: int
    counterexample: Optional[Tuple[Tuple[Window, DesubstitutionScheme], Tuple[Window, DesubstitutionScheme]]] = None

    @property
    def refuted(self) -> bool:
        return self.outcome == OUTCOME_REFUTED

    def to_dict(self) -> Dict:
        report = {
            "substitution": self.label,
            "window": self.window,
            "radius": self.radius,
            "outcome": self.outcome,
            "conclusive": self.refuted,
            "windows_checked": self.windows_checked,
            "counterexample": None
        }
        if self.counterexample:
            report["counterexample"] = [
                {"window": win.text(), "origin": win.origin, "scheme": scheme.to_dict()}
                for win, scheme in self.counterexample
            ]
        return report


# ---------------------------------------------------------------------------
# Enumeración de esquemas
# ---------------------------------------------------------------------------

class SchemeEnumerator:
    """Teselados de una ventana por imágenes de tau, con segmentos parciales en los bordes"""

    def __init__(self, tau: Substitution):
        if tau.is_erasing():
            raise PremiseError("desubstitution needs a non-erasing substitution")
        self.tau = tau
        self.images: Dict[Letters, List[str]] = {}
        for letter, image in tau.images:
            self.images.setdefault(image, []).append(letter)
        self.distinct_images = sorted(self.images, key=lambda image: (len(image), image))

    def suffix_letters(self, piece: Letters) -> Tuple[str, ...]:
        return tuple(letter for letter, image in self.tau.images
                     if len(image) > len(piece) and image[len(image) - len(piece):] == piece)

    def prefix_letters(self, piece: Letters) -> Tuple[str, ...]:
        return tuple(letter for letter, image in self.tau.images
                     if len(image) >= len(piece) and image[:len(piece)] == piece)

    def tilings(self, word: Letters) -> List[Tuple[int, ...]]:
        """Conjuntos de cortes (coordenadas de la palabra) que teselan la ventana"""
        n = len(word)
        found: List[Tuple[int, ...]] = []

        def extend(position: int, cuts: Tuple[int, ...]):
            if self.prefix_letters(word[position:]):
                found.append(cuts)
            for image in self.distinct_images:
                following = position + len(image)
                if following < n and word[position:following] == image:
                    extend(following, cuts + (following,))

        starts = [0] + [p for p in range(1, min(self.tau.max_len, n)) if self.suffix_letters(word[:p])]
        for start in starts:
            extend(start, (start,))
        return sorted(set(found))

    def schemes(self, window: Window) -> List[DesubstitutionScheme]:
        if len(window.word) < 2 * self.tau.max_len:
            raise WindowTooNarrowError(
                f"window width {len(window.word)} below 2*||tau|| = {2 * self.tau.max_len}")
        for letter in window.word:
            if letter not in self.tau.codomain:
                raise AlphabetMismatchError(f"window letter {letter!r} outside codomain")
        word, origin = window.word, window.origin
        result = []
        for cuts in self.tilings(word):
            relative = tuple(c - origin for c in cuts)
            at_or_before = [i for i, c in enumerate(relative) if c <= 0]
            if not at_or_before:
                continue
            segments: List[Tuple[str, ...]] = []
            if cuts[0] > 0:
                segments.append(self.suffix_letters(word[:cuts[0]]))
            for left, right in zip(cuts, cuts[1:]):
                segments.append(tuple(self.images[word[left:right]]))
            tail = word[cuts[-1]:]
            segments.append(self.prefix_letters(tail))
            result.append(DesubstitutionScheme(
                cuts=relative,
                zero_position=at_or_before[-1],
                segments=tuple(segments),
                left_partial=cuts[0] > 0,
                right_partial=tail not in self.images
            ))
        return result


def enumerate_standard_schemes(tau: Substitution, win: Window) -> List[DesubstitutionScheme]:
    return SchemeEnumerator(tau).schemes(win)


def reassemble(tau: Substitution, win: Window, scheme: DesubstitutionScheme) -> bool:
    """Los segmentos del esquema reproducen la palabra de la ventana"""
    cuts = [c + win.origin for c in scheme.cuts]
    pieces = []
    if cuts[0] > 0:
        pieces.append(win.word[:cuts[0]])
    for _ in cuts[1:]:
        pieces.append(tau.image_letters(scheme.segments[len(pieces)][0]))
    pieces.append(win.word[cuts[-1]:])
    return tuple(letter for piece in pieces for letter in piece) == win.word


def lift_check(scheme: DesubstitutionScheme, preimages: Optional[LanguageSource]) -> bool:
    """Alguna lectura de las letras del esquema está en el lenguaje de preimágenes"""
    if preimages is None:
        return True
    cap = min(len(scheme.segments), preimages.budget)
    languages = {}

    def allowed(word: Letters) -> bool:
        length = min(len(word), cap)
        if length not in languages:
            languages[length] = preimages.words(length)
        return word[len(word) - length:] in languages[length]

    viable: Dict[Letters, Letters] = {(): ()}
    for choices in scheme.segments:
        extended: Dict[Letters, Letters] = {}
        for candidate in viable.values():
            for letter in choices:
                word = candidate + (letter,)
                if allowed(word):
                    # dos lecturas con la misma cola de longitud cap - 1 son intercambiables
                    extended.setdefault(word[max(0, len(word) - cap + 1):], word)
        if not extended:
            return False
        viable = extended
    return True


# ---------------------------------------------------------------------------
# Sondeos
# ---------------------------------------------------------------------------

def _admissible_schemes(enumerator: SchemeEnumerator, window: Window,
                        preimages: Optional[LanguageSource]) -> List[DesubstitutionScheme]:
    return [s for s in enumerator.schemes(window) if lift_check(s, preimages)]


def probe_quasi_recognizability(tau: Substitution, M: int, over: LanguageSource,
                                preimages: Optional[LanguageSource] = None,
                                label: Optional[str] = None) -> RadiusReport:
    """Buscar una ventana de ancho 2M con dos esquemas estándar de k_0 distinto"""
    if M < 2 * tau.max_len:
        raise WindowTooNarrowError(f"probe window M={M} below 2*||tau|| = {2 * tau.max_len}")
    label = label or str(tau)
    enumerator = SchemeEnumerator(tau)
    windows = sorted(over.words(2 * M))
    for word in windows:
        window = Window(word, M)
        by_phase: Dict[int, DesubstitutionScheme] = {}
        for scheme in _admissible_schemes(enumerator, window, preimages):
            by_phase.setdefault(scheme.cut(0), scheme)
        if len(by_phase) >= 2:
            first, second = [by_phase[k] for k in sorted(by_phase)[:2]]
            logger.info(f"🔍 Quasi-recognizability refuted for {label} at window {window.text()}")
            return RadiusReport(label, M, None, OUTCOME_REFUTED, len(windows),
                                ((window, first), (window, second)))
    logger.info(f"🔍 No quasi-recognizability counterexample for {label} at M={M} ({len(windows)} windows)")
    return RadiusReport(label, M, None, OUTCOME_NO_COUNTEREXAMPLE, len(windows))


def _tail(scheme: DesubstitutionScheme, j: int, horizon: int) -> Optional[Tuple[int, ...]]:
    start = scheme.cut(j)
    if start is None or start >= horizon:
        return None
    return tuple(k for i, k in scheme.indexed_cuts() if i >= j and k < horizon)


def _merge_within_radius(first: Tuple[Window, DesubstitutionScheme], second: Tuple[Window, DesubstitutionScheme],
                         R: int, horizon: int) -> bool:
    (win1, s1), (win2, s2) = first, second
    for j in range(R + 1):
        tail1 = _tail(s1, j, horizon)
        if tail1 is None:
            continue
        for j2 in range(R + 1):
            if _tail(s2, j2, horizon) != tail1:
                continue
            start = tail1[0]
            if win1.word[win1.origin + start:] == win2.word[win2.origin + start:]:
                return True
    return False


def probe_right_radius(tau: Substitution, R: int, M: int, over: LanguageSource,
                       preimages: Optional[LanguageSource] = None,
                       label: Optional[str] = None) -> RadiusReport:
    """Pares de ventanas que coinciden en [0, M) cuyos esquemas no se funden con j, j' <= R"""
    if R < 0:
        raise PremiseError(f"radius must be nonnegative, got {R}")
    if M < (R + 2) * tau.max_len:
        raise WindowTooNarrowError(f"probe window M={M} below (R+2)*||tau|| = {(R + 2) * tau.max_len}")
    label = label or str(tau)
    enumerator = SchemeEnumerator(tau)
    horizon = M - tau.max_len
    windows = sorted(over.words(2 * M))
    groups: Dict[Letters, List[Tuple[Window, DesubstitutionScheme]]] = {}
    for word in windows:
        window = Window(word, M)
        for scheme in _admissible_schemes(enumerator, window, preimages):
            groups.setdefault(word[M:], []).append((window, scheme))
    for right_half in sorted(groups):
        for first, second in combinations(groups[right_half], 2):
            if not _merge_within_radius(first, second, R, horizon):
                logger.info(f"🔍 Radius {R} refuted for {label} at M={M}")
                return RadiusReport(label, M, R, OUTCOME_REFUTED, len(windows), (first, second))
    return RadiusReport(label, M, R, OUTCOME_NO_COUNTEREXAMPLE, len(windows))


def least_probed_radius(tau: Substitution, M: int, over: LanguageSource, radius_cap: int,
                        preimages: Optional[LanguageSource] = None) -> Tuple[Optional[int], List[RadiusReport]]:
    """Menor R <= radius_cap sin contraejemplo (evidencia, no prueba)"""
    reports = []
    for R in range(radius_cap + 1):
        if M < (R + 2) * tau.max_len:
            break
        report = probe_right_radius(tau, R, M, over, preimages)
        reports.append(report)
        if not report.refuted:
            return R, reports
    return None, reports


# ---------------------------------------------------------------------------
# Aritmética de radios
# ---------------------------------------------------------------------------

def radius_compose(R: int, min_len_inner: int, R_inner: int) -> int:
    """ceil(R / <tau~> + R~)"""
    if min_len_inner < 1:
        raise PremiseError("inner minimal length must be at least 1")
    return R_inner + -(-R // min_len_inner)


def _level_radius(seq: DirectiveSequence, radii: Sequence[int], i: int) -> int:
    if i < len(radii) and len(radii) != seq.described_levels:
        return radii[i]
    if i < seq.described_levels:
        return radii[i]
    return radii[seq.period_start + (i - seq.period_start) % seq.period]


def radius_series_bound(seq: DirectiveSequence, per_level_radii: Sequence[int], t_max: int) -> Optional[int]:
    """Menor m con sum_{i<t} R_i <tau_[0,i]> <= <tau_[0,t)> m para todo t <= t_max"""
    if len(per_level_radii) != seq.described_levels and len(per_level_radii) < t_max:
        raise PremiseError(
            f"{len(per_level_radii)} radii for {seq.described_levels} described levels and t_max={t_max}")
    lengths = min_len_profile(seq, t_max + 1)
    partial, best, ratios = 0, 0, []
    for t in range(1, t_max + 1):
        partial += _level_radius(seq, per_level_radii, t - 1) * lengths[t]
        best = max(best, -(-partial // lengths[t]))
        ratios.append(partial / lengths[t])
    # cociente que sigue creciendo sin acotarse: la premisa no se cumple para ningún m
    if t_max >= 4 and ratios[-1] > 2 * ratios[(t_max - 1) // 2] + 1:
        logger.warning(f"⚠️ Radius series unbounded up to t={t_max}")
        return None
    return best


def geometric_radius_bound(seq: DirectiveSequence, R: int) -> Dict:
    """Cota geométrica beta R/(rho - 1) para un radio constante sobre una sucesión expansiva"""
    rho = min(tau.min_len for tau in seq.transient + seq.cycle)
    if rho < 2:
        raise PremiseError("geometric radius bound needs an expanding sequence (telescope first)")
    beta = rho
    return {"beta": beta, "rho": rho, "radius": R, "bound": math.ceil(beta * R / (rho - 1))}
