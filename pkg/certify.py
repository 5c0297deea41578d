#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Motor de certificados de expansividad positiva.

Evalúa las reglas de la más ajustada a la más floja (rk, rk^2, rk^(R+1),
finitud) y devuelve la primera que se cumple. Cada premisa comprobada queda
registrada con su resultado y su evidencia; las premisas obtenidas por sondeo
(no demostradas) aparecen como advertencias en el certificado.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import config
from directive import (DirectiveSequence, is_everywhere_growing, is_weakly_primitive, rank, telescope_expanding,
                       unary_power_letters)
from errors import NotGrowingError, PremiseError, WindowTooNarrowError
from language import SubstitutiveLanguage, asymptotic_periodic_witness, complexity, periodic_words
from parsing import least_probed_radius, probe_quasi_recognizability, radius_series_bound
from substitution import (Substitution, is_return_substitution, is_right_marked, is_suffix_code_substitution,
                          is_toeplitz, is_uniform, max_right_recoverability, maximal_common_prefix)
from words import Alphabet, Letters, Word, format_letters, letters_is_nonoverlapping

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence"
UNCHECKED = "unchecked"

VERDICT_BOUND = "bound"
VERDICT_FINITE = "finite"
VERDICT_NEGATIVE = "negative"
VERDICT_INCONCLUSIVE = "inconclusive"

# niveles sumados al acotar la serie de radios
RADIUS_SERIES_LEVELS = 24


@dataclass(frozen=True)
class PremiseRecord:
    name: str
    outcome: str
    evidence: str = ""
    conclusive: bool = True

    @property
    def holds(self) -> bool:
        return self.outcome in (PASS, EVIDENCE)

    def to_dict(self) -> Dict:
        return {"name": self.name, "outcome": self.outcome, "evidence": self.evidence,
                "conclusive": self.conclusive}


@dataclass(frozen=True)
class ExpansivenessCertificate:
    verdict: str
    bound: Optional[int] = None
    rule: Optional[str] = None
    premises: Tuple[PremiseRecord, ...] = ()
    caveats: Tuple[str, ...] = ()
    lower_bound: Optional[int] = None
    metadata: Dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def conclusive(self) -> bool:
        return not self.caveats

    def premise(self, name: str) -> Optional[PremiseRecord]:
        for record in self.premises:
            if record.name == name:
                return record
        return None

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict,
            "bound": self.bound,
            "rule": self.rule,
            "rule_name": config.RULE_NAMES.get(self.rule) if self.rule else None,
            "lower_bound": self.lower_bound,
            "premises": [p.to_dict() for p in self.premises],
            "caveats": list(self.caveats),
            "metadata": self.metadata
        }

    def render_text(self) -> str:
        return render_certificate(self.to_dict())


def render_certificate(report: Dict) -> str:
    """Texto legible de un certificado serializado con to_dict"""
    verdict, bound = report["verdict"], report["bound"]
    if verdict == VERDICT_BOUND:
        headline = f"positively {bound}-expansive"
    elif verdict == VERDICT_FINITE:
        headline = "finitely positively expansive"
        if bound is not None:
            headline += f" (bound {bound})"
    elif verdict == VERDICT_NEGATIVE:
        headline = "not finitely positively expansive"
    else:
        headline = "inconclusive"
    lines = [f"Verdict: {headline}"]
    if report["rule"]:
        lines.append(f"Rule: {report['rule']} ({report['rule_name']})")
    if report["lower_bound"] is not None:
        lines.append(f"Lower bound: not positively {report['lower_bound'] - 1}-expansive")
    lines.append("Premises:")
    for p in report["premises"]:
        tag = p["outcome"] if p["conclusive"] else f"{p['outcome']}, probe"
        lines.append(f"  [{tag}] {p['name']}: {p['evidence']}")
    if report["caveats"]:
        lines.append("Caveats:")
        lines.extend(f"  - {c}" for c in report["caveats"])
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _RuleOutcome:
    rule: str
    verdict: str
    bound: Optional[int]
    used: Tuple[str, ...]
    lower_bound: Optional[int] = None


# ---------------------------------------------------------------------------
# Arnoux-Rauzy
# ---------------------------------------------------------------------------

def arnoux_rauzy_alphabet(rk: int) -> Alphabet:
    return Alphabet(tuple(f"a{j}" for j in range(rk)))


def arnoux_rauzy_substitution(rk: int, i: int) -> Substitution:
    """a_j -> a_i a_j, a_i -> a_i"""
    if not 0 <= i < rk:
        raise PremiseError(f"Arnoux-Rauzy index {i} outside [0, {rk})")
    alphabet = arnoux_rauzy_alphabet(rk)
    a_i = alphabet.symbols[i]
    images = tuple((a, (a_i,) if a == a_i else (a_i, a)) for a in alphabet)
    return Substitution(alphabet, alphabet, images)


def arnoux_rauzy_sequence(rk: int, cycle_indices: Sequence[int],
                          transient_indices: Sequence[int] = ()) -> DirectiveSequence:
    if rk < 2:
        raise PremiseError(f"Arnoux-Rauzy rank must be at least 2, got {rk}")
    if not cycle_indices:
        raise PremiseError("Arnoux-Rauzy cycle needs at least one index")
    return DirectiveSequence(tuple(arnoux_rauzy_substitution(rk, i) for i in transient_indices),
                             tuple(arnoux_rauzy_substitution(rk, i) for i in cycle_indices))


def arnoux_rauzy_index(tau: Substitution) -> Optional[str]:
    """La letra a_i si tau tiene la forma de un generador de Arnoux-Rauzy"""
    if not tau.is_endomorphism() or len(tau.domain) < 2:
        return None
    fixed = [letter for letter, image in tau.images if image == (letter,)]
    if len(fixed) != 1:
        return None
    a_i = fixed[0]
    if all(image == (a_i, letter) for letter, image in tau.images if letter != a_i):
        return a_i
    return None


def _return_word(tau: Substitution) -> Optional[Letters]:
    """Palabra sin solapamiento más corta respecto de la cual tau es de retorno"""
    candidates = sorted({image[:k] for _, image in tau.images for k in range(1, len(image) + 1)},
                        key=lambda w: (len(w), w))
    for w in candidates:
        if letters_is_nonoverlapping(w) and is_return_substitution(tau, Word(w, tau.codomain)):
            return w
    return None


# ---------------------------------------------------------------------------
# Motor
# ---------------------------------------------------------------------------

class CertificationEngine:
    """Comprueba premisas (con caché por nombre) y recorre la escalera de reglas"""

    def __init__(self, seq: DirectiveSequence, probe_window: Optional[int] = None, budget: Optional[int] = None,
                 m_max: Optional[int] = None, radius_cap: Optional[int] = None):
        self.seq = seq
        self.probe_window = probe_window if probe_window is not None else config.PROBE_WINDOW
        self.budget = budget if budget is not None else config.LANG_BUDGET
        self.m_max = m_max if m_max is not None else config.M_MAX
        self.radius_cap = radius_cap if radius_cap is not None else config.RADIUS_CAP
        self.levels: List[Substitution] = list(seq.transient + seq.cycle)
        self.rk = rank(seq)
        self.premises: Dict[str, PremiseRecord] = {}
        self._complexity: Optional[List[int]] = None
        self._radii: Optional[List[Optional[int]]] = None

    # -- registro ----------------------------------------------------------

    def record_premise(self, name: str, outcome: str, evidence: str = "", conclusive: bool = True) -> PremiseRecord:
        record = PremiseRecord(name, outcome, evidence, conclusive)
        self.premises[name] = record
        return record

    def _every_level(self, name: str, predicate: Callable[[Substitution], bool], what: str) -> PremiseRecord:
        if name in self.premises:
            return self.premises[name]
        failing = [t for t, tau in enumerate(self.levels) if not predicate(tau)]
        if failing:
            return self.record_premise(name, FAIL, f"level {failing[0]} is not {what}")
        return self.record_premise(name, PASS, f"all {len(self.levels)} described levels are {what}")

    # -- premisas ----------------------------------------------------------

    def non_erasing(self) -> PremiseRecord:
        return self._every_level("non-erasing", lambda tau: not tau.is_erasing(), "non-erasing")

    def everywhere_growing(self) -> PremiseRecord:
        if "everywhere-growing" not in self.premises:
            if is_everywhere_growing(self.seq):
                self.record_premise("everywhere-growing", PASS, "no stalled letter cycle in the cycle composition")
            else:
                self.record_premise("everywhere-growing", FAIL, "some letter has bounded image length")
        return self.premises["everywhere-growing"]

    def complexity_profile(self) -> List[int]:
        if self._complexity is None:
            r_max = min(config.PERIODIC_SCREEN_LENGTH, self.budget)
            self._complexity = complexity(self.seq, r_max, self.budget)
        return self._complexity

    def complexity_stalls(self) -> PremiseRecord:
        if "complexity-stalls" not in self.premises:
            p = self.complexity_profile()
            stall = next((r for r in range(1, len(p)) if p[r] == p[r - 1]), None)
            if stall is None:
                self.record_premise("complexity-stalls", FAIL, f"p(r) strictly increasing up to r={len(p)}")
            else:
                self.record_premise("complexity-stalls", PASS, f"p({stall + 1}) = p({stall}) = {p[stall]}")
        return self.premises["complexity-stalls"]

    def asymptotic_witness(self) -> PremiseRecord:
        if "asymptotic-periodic-witness" not in self.premises:
            witness = asymptotic_periodic_witness(self.seq, self.m_max, self.budget)
            if witness is None:
                self.record_premise("asymptotic-periodic-witness", FAIL, f"no witness up to m={self.m_max}", False)
            else:
                a, b = witness["letters"]
                self.record_premise("asymptotic-periodic-witness", PASS,
                             f"{witness['pattern']} with a={a}, b={b} for all m <= {witness['m_max']}")
        return self.premises["asymptotic-periodic-witness"]

    def quasi_recognizability_probe(self) -> PremiseRecord:
        name = "quasi-recognizability-probe"
        if name in self.premises:
            return self.premises[name]
        checked = 0
        for t, tau in enumerate(self.levels):
            over = SubstitutiveLanguage(self.seq.shift(t), self.budget)
            preimages = SubstitutiveLanguage(self.seq.shift(t + 1), self.budget)
            try:
                report = probe_quasi_recognizability(tau, self.probe_window, over, preimages, label=f"level {t}")
            except WindowTooNarrowError as e:
                return self.record_premise(name, UNCHECKED, str(e), False)
            checked += report.windows_checked
            if report.refuted:
                win, _ = report.counterexample[0]
                return self.record_premise(name, FAIL, f"level {t}: two phases at window {win.text()}")
        return self.record_premise(name, EVIDENCE, f"no counterexample at M={self.probe_window} ({checked} windows)", False)

    def aperiodicity(self) -> PremiseRecord:
        if "aperiodicity" in self.premises:
            return self.premises["aperiodicity"]
        unary = unary_power_letters(self.seq)
        if unary:
            letter, j = unary[0]
            return self.record_premise("aperiodicity", FAIL, f"letter {letter} is a unary power after {j} cycle rounds")
        r = min(config.PERIODIC_SCREEN_LENGTH, self.budget)
        periodic = periodic_words(SubstitutiveLanguage(self.seq, self.budget), r, r // config.PERIODIC_SCREEN_RATIO)
        if periodic:
            return self.record_premise("aperiodicity", FAIL, f"periodic word {format_letters(periodic[0])} in L_{r}")
        p = self.complexity_profile()
        if any(b <= a for a, b in zip(p, p[1:])):
            return self.record_premise("aperiodicity", FAIL, "complexity is not strictly increasing")
        return self.record_premise("aperiodicity", PASS,
                            f"no unary power letter, no word of period <= {r // config.PERIODIC_SCREEN_RATIO} in L_{r}")

    def return_words(self) -> PremiseRecord:
        if "return-words" in self.premises:
            return self.premises["return-words"]
        found = []
        for t, tau in enumerate(self.levels):
            w = _return_word(tau)
            if w is None:
                return self.record_premise("return-words", FAIL, f"level {t} is not a return substitution")
            found.append(format_letters(w))
        return self.record_premise("return-words", PASS, "return substitutions w.r.t. nonoverlapping " + ", ".join(found))

    def toeplitz_prefix(self) -> PremiseRecord:
        if "toeplitz-prefix" in self.premises:
            return self.premises["toeplitz-prefix"]
        prefixes = []
        for t, tau in enumerate(self.levels):
            if not is_toeplitz(tau):
                return self.record_premise("toeplitz-prefix", FAIL, f"level {t} is not Toeplitz")
            u = maximal_common_prefix(tau)
            if not letters_is_nonoverlapping(u.letters):
                return self.record_premise("toeplitz-prefix", FAIL, f"level {t}: common prefix {u.text()} overlaps itself")
            if 2 * len(u) < tau.min_len:
                return self.record_premise("toeplitz-prefix", FAIL, f"level {t}: common prefix {u.text()} too short")
            prefixes.append(u.text())
        if not self.aperiodicity().holds:
            return self.record_premise("toeplitz-prefix", FAIL, "aperiodicity screen failed")
        return self.record_premise("toeplitz-prefix", PASS, "nonoverlapping common prefixes " + ", ".join(prefixes))

    def recognizability(self) -> PremiseRecord:
        if "recognizability" in self.premises:
            return self.premises["recognizability"]
        if self.return_words().holds:
            return self.record_premise("recognizability", PASS, "return substitutions w.r.t. nonoverlapping words")
        if self.toeplitz_prefix().holds:
            return self.record_premise("recognizability", PASS, "Toeplitz with nonoverlapping long common prefix")
        probe = self.quasi_recognizability_probe()
        if probe.outcome == FAIL:
            return self.record_premise("recognizability", FAIL, probe.evidence)
        if probe.outcome == UNCHECKED:
            return self.record_premise("recognizability", UNCHECKED, probe.evidence, False)
        return self.record_premise("recognizability", EVIDENCE, f"quasi-recognizability by probe: {probe.evidence}", False)

    def right_recoverable_blocks(self) -> PremiseRecord:
        name = "right-recoverable-blocks"
        if name in self.premises:
            return self.premises[name]
        try:
            telescoped = telescope_expanding(self.seq)
        except NotGrowingError as e:
            return self.record_premise(name, FAIL, str(e))
        qs = []
        for t, tau in enumerate(telescoped.transient + telescoped.cycle):
            q = max_right_recoverability(tau)
            if q is None:
                return self.record_premise(name, FAIL, f"telescoped block {t} is not right-recoverable")
            qs.append(q)
        return self.record_premise(name, PASS, "telescoped blocks recoverable with q = " + ", ".join(map(str, qs)))

    def probed_radii(self) -> List[Optional[int]]:
        if self._radii is None:
            radii: List[Optional[int]] = []
            for t, tau in enumerate(self.levels):
                over = SubstitutiveLanguage(self.seq.shift(t), self.budget)
                preimages = SubstitutiveLanguage(self.seq.shift(t + 1), self.budget)
                R, _ = least_probed_radius(tau, self.probe_window, over, self.radius_cap, preimages)
                radii.append(R)
            self._radii = radii
            found = [R for R in radii if R is not None]
            if len(found) == len(radii):
                self.record_premise("radius-probe", EVIDENCE, f"per-level probed radii {radii}", False)
            else:
                self.record_premise("radius-probe", FAIL, f"no radius <= {self.radius_cap} survives the probe at some level")
        return self._radii

    # -- reglas ------------------------------------------------------------

    def rule_finite_shift(self) -> Optional[_RuleOutcome]:
        if self.complexity_stalls().holds:
            return _RuleOutcome("finite-shift", VERDICT_BOUND, 1, ("complexity-stalls",))
        return None

    def rule_arnoux_rauzy(self) -> Optional[_RuleOutcome]:
        indices = [arnoux_rauzy_index(tau) for tau in self.levels]
        if any(i is None for i in indices):
            self.record_premise("arnoux-rauzy-shape", FAIL, "some level is not an Arnoux-Rauzy generator")
            return None
        self.record_premise("arnoux-rauzy-shape", PASS, "levels a_j -> a_i a_j with i = " + ", ".join(indices))
        cycle_letters = sorted(set(indices[self.seq.period_start:]))
        if len(cycle_letters) < 2:
            self.record_premise("distinct-indices", FAIL, f"cycle uses only {cycle_letters}")
            return None
        self.record_premise("distinct-indices", PASS, f"cycle uses {cycle_letters}")
        missing = [a for a in self.levels[self.seq.period_start].domain if a not in cycle_letters]
        if missing:
            # la cota supone que todos los índices aparecen infinitas veces
            self.record_premise("index-coverage", EVIDENCE, f"indices {missing} never occur in the cycle", False)
        else:
            self.record_premise("index-coverage", PASS, "every index occurs in the cycle")
        if not self.everywhere_growing().holds:
            return None
        return _RuleOutcome("arnoux-rauzy", VERDICT_BOUND, self.rk,
                            ("arnoux-rauzy-shape", "distinct-indices", "index-coverage", "everywhere-growing"))

    def rule_right_marked(self) -> Optional[_RuleOutcome]:
        if not self._every_level("right-marked", is_right_marked, "right-marked").holds:
            return None
        if not self.recognizability().holds:
            return None
        return _RuleOutcome("right-marked", VERDICT_BOUND, self.rk,
                            ("right-marked", "everywhere-growing", "recognizability"), lower_bound=self.rk)

    def rule_return_words(self) -> Optional[_RuleOutcome]:
        if not self.return_words().holds or not self.right_recoverable_blocks().holds:
            return None
        return _RuleOutcome("return-words", VERDICT_BOUND, self.rk,
                            ("return-words", "right-recoverable-blocks", "everywhere-growing"))

    def rule_toeplitz_prefix(self) -> Optional[_RuleOutcome]:
        if not self.toeplitz_prefix().holds:
            return None
        return _RuleOutcome("toeplitz-prefix", VERDICT_BOUND, self.rk,
                            ("toeplitz-prefix", "aperiodicity", "everywhere-growing"))

    def rule_right_recoverable(self) -> Optional[_RuleOutcome]:
        if not self.right_recoverable_blocks().holds or not self.recognizability().holds:
            return None
        return _RuleOutcome("right-recoverable", VERDICT_BOUND, self.rk,
                            ("right-recoverable-blocks", "recognizability"))

    def rule_suffix_code(self) -> Optional[_RuleOutcome]:
        if not self._every_level("suffix-code", is_suffix_code_substitution, "suffix-code").holds:
            return None
        if not self.recognizability().holds:
            return None
        return _RuleOutcome("suffix-code", VERDICT_BOUND, self.rk ** 2,
                            ("suffix-code", "everywhere-growing", "recognizability"))

    def rule_uniform(self) -> Optional[_RuleOutcome]:
        if not self._every_level("uniform", is_uniform, "uniform").holds:
            return None
        if not self.recognizability().holds:
            return None
        return _RuleOutcome("uniform", VERDICT_BOUND, self.rk ** 2, ("uniform", "recognizability"))

    def rule_radius_power(self) -> Optional[_RuleOutcome]:
        if self.recognizability().outcome == FAIL:
            return None
        radii = self.probed_radii()
        if any(R is None for R in radii):
            return None
        R = max(radii)
        return _RuleOutcome("radius-power", VERDICT_BOUND, self.rk ** (R + 1), ("radius-probe", "everywhere-growing"))

    def rule_radius_series(self) -> Optional[_RuleOutcome]:
        if not self.aperiodicity().holds or self.recognizability().outcome == FAIL:
            return None
        used = ("everywhere-growing", "aperiodicity")
        radii = self._radii
        if radii is None or any(R is None for R in radii):
            return _RuleOutcome("radius-series", VERDICT_FINITE, None, used)
        m = radius_series_bound(self.seq, radii, RADIUS_SERIES_LEVELS)
        if m is None:
            self.record_premise("radius-series", FAIL, f"radius series unbounded up to t={RADIUS_SERIES_LEVELS}", False)
            return _RuleOutcome("radius-series", VERDICT_FINITE, None, used)
        self.record_premise("radius-series", EVIDENCE, f"series bounded with m={m}", False)
        return _RuleOutcome("radius-series", VERDICT_FINITE, self.rk ** (m + 2), used + ("radius-probe", "radius-series"))

    # -- escalera ----------------------------------------------------------

    def _certificate(self, outcome: Optional[_RuleOutcome]) -> ExpansivenessCertificate:
        caveats: List[str] = []
        if outcome is not None:
            for name in outcome.used:
                record = self.premises.get(name)
                if record is not None and not record.conclusive:
                    caveats.append(f"{name}: {record.evidence}")
        metadata = {"rank": self.rk, "levels": len(self.levels), "probe_window": self.probe_window,
                    "language_budget": self.budget}
        if "non-erasing" in self.premises and self.premises["non-erasing"].holds:
            metadata["weakly_primitive"] = is_weakly_primitive(self.seq)
        if outcome is None:
            return ExpansivenessCertificate(VERDICT_INCONCLUSIVE, premises=tuple(self.premises.values()),
                                            metadata=metadata)
        logger.info(f"✅ Certificate: {outcome.verdict} {outcome.bound} via {outcome.rule}")
        return ExpansivenessCertificate(outcome.verdict, outcome.bound, outcome.rule, tuple(self.premises.values()),
                                        tuple(caveats), outcome.lower_bound, metadata)

    def _best(self, candidates: List[_RuleOutcome]) -> _RuleOutcome:
        def key(outcome: _RuleOutcome) -> Tuple[bool, int]:
            evidential = any(name in self.premises and not self.premises[name].conclusive for name in outcome.used)
            return evidential, config.RULE_PRIORITY.index(outcome.rule)
        return min(candidates, key=key)

    def run(self) -> ExpansivenessCertificate:
        if not self.non_erasing().holds or not self.everywhere_growing().holds:
            logger.warning("⚠️ Premises for the language computation fail; certificate is inconclusive")
            return self._certificate(None)

        finite = self.rule_finite_shift()
        if finite is not None:
            return self._certificate(finite)

        if self.asymptotic_witness().holds:
            self.quasi_recognizability_probe()
            return self._certificate(_RuleOutcome("asymptotic-periodic", VERDICT_NEGATIVE, None,
                                                  ("asymptotic-periodic-witness",)))

        if self.quasi_recognizability_probe().outcome == FAIL:
            logger.warning("⚠️ Quasi-recognizability refuted; recognizability-premised rules are refused")

        ladder = [
            [self.rule_arnoux_rauzy, self.rule_right_marked, self.rule_return_words, self.rule_toeplitz_prefix,
             self.rule_right_recoverable],
            [self.rule_suffix_code, self.rule_uniform],
            [self.rule_radius_power],
            [self.rule_radius_series]
        ]
        for group in ladder:
            candidates = [outcome for outcome in (rule() for rule in group) if outcome is not None]
            if candidates:
                return self._certificate(self._best(candidates))
        return self._certificate(None)

    def run_arnoux_rauzy(self) -> ExpansivenessCertificate:
        """Solo la regla de Arnoux-Rauzy; las premisas que fallan son errores"""
        outcome = self.rule_arnoux_rauzy()
        if outcome is None or not self.return_words().holds:
            raise PremiseError("Arnoux-Rauzy premises failed")
        self.record_premise("recognizability", PASS, "return substitutions w.r.t. single letters")
        return self._certificate(_RuleOutcome(outcome.rule, outcome.verdict, outcome.bound,
                                              outcome.used + ("return-words", "recognizability")))


def certify(seq: DirectiveSequence, probe_budget: Optional[int] = None, budget: Optional[int] = None,
            m_max: Optional[int] = None, radius_cap: Optional[int] = None) -> ExpansivenessCertificate:
    """Mejor certificado para la sucesión; probe_budget es la semiventana M de los sondeos"""
    return CertificationEngine(seq, probe_budget, budget, m_max, radius_cap).run()


def certify_arnoux_rauzy(rk: int, cycle_indices: Sequence[int],
                         transient_indices: Sequence[int] = ()) -> ExpansivenessCertificate:
    seq = arnoux_rauzy_sequence(rk, cycle_indices, transient_indices)
    if len(set(cycle_indices)) < 2:
        raise NotGrowingError(f"constant Arnoux-Rauzy index {cycle_indices[0]} is not everywhere-growing")
    engine = CertificationEngine(seq)
    engine.record_premise("indices", PASS, f"indices in [0, {rk})")
    return engine.run_arnoux_rauzy()
