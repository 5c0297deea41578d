#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Presentaciones sóficas y shifts de tipo finito.

Una presentación es un grafo dirigido con aristas etiquetadas
(networkx.MultiDiGraph con el atributo ``label``). Al construirla se recorta
a su parte esencial: cada vértice que queda tiene al menos una arista de
entrada y una de salida, y los vértices eliminados quedan registrados.

Sobre la presentación determinizada se calcula la familia de conjuntos
supervivientes S(z) = {q : z se lee desde q}. Dos palabras infinitas a la
derecha con el mismo S(z) tienen el mismo conjunto de predecesores, así que el
tamaño de la familia acota el número de conjuntos de predecesores.
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

import config
from errors import BudgetExceededError, EmptyWordError, FormatError
from language import LanguageSource
from predecessors import is_plateau
from words import LETTER_SEPARATOR, Alphabet, Letters, format_letters

logger = logging.getLogger(__name__)

Edge = Tuple[str, str, str]
Survivor = FrozenSet[str]

# vértice de memoria vacía en las presentaciones de De Bruijn
EMPTY_STATE = "*"


class SoficPresentation:
    """Grafo etiquetado esencial que presenta un shift sófico"""

    def __init__(self, graph: nx.MultiDiGraph, alphabet: Alphabet, removed: Sequence[str] = ()):
        self.graph = graph
        self.alphabet = alphabet
        self.removed = tuple(sorted(removed))

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], alphabet: Optional[Alphabet] = None,
                   vertices: Iterable[str] = ()) -> "SoficPresentation":
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(vertices)
        for src, label, dst in edges:
            graph.add_edge(src, dst, label=label)
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted({label for _, _, label in graph.edges(data="label")})))
        for _, _, label in graph.edges(data="label"):
            if label not in alphabet:
                raise FormatError(f"edge label {label!r} outside alphabet {alphabet.symbols}")
        removed = make_essential(graph)
        if removed:
            logger.info(f"🔧 Trimmed {len(removed)} inessential vertices")
        return cls(graph, alphabet, removed)

    @property
    def vertices(self) -> List[str]:
        return sorted(self.graph.nodes)

    def edges(self) -> List[Edge]:
        return sorted((src, label, dst) for src, dst, label in self.graph.edges(data="label"))

    def is_empty(self) -> bool:
        return self.graph.number_of_nodes() == 0

    def out_labels(self, q: str) -> List[str]:
        return [label for _, _, label in self.graph.out_edges(q, data="label")]

    def is_deterministic(self) -> bool:
        """Ningún vértice tiene dos aristas de salida con la misma etiqueta"""
        return all(len(labels) == len(set(labels)) for labels in map(self.out_labels, self.graph))

    def targets(self, sources: Iterable[str], letter: str) -> Survivor:
        return frozenset(dst for _, dst, label in self.graph.out_edges(sources, data="label") if label == letter)

    def back(self, survivors: Iterable[str], letter: str) -> Survivor:
        """Vértices con una arista etiquetada ``letter`` que entra en ``survivors``"""
        return frozenset(src for src, _, label in self.graph.in_edges(survivors, data="label") if label == letter)

    def describe(self) -> Dict:
        return {
            "kind": "sofic",
            "vertices": len(self.graph),
            "edges": self.graph.number_of_edges(),
            "alphabet": list(self.alphabet.symbols),
            "removed": list(self.removed)
        }


def make_essential(graph: nx.MultiDiGraph) -> List[str]:
    """Eliminar en el sitio los vértices que no están en caminos biinfinitos; devuelve los eliminados"""
    removed: List[str] = []
    stranded = [q for q in graph if graph.out_degree(q) == 0 or graph.in_degree(q) == 0]
    while stranded:
        frontier = {q for q, _ in graph.in_edges(stranded)} | {q for _, q in graph.out_edges(stranded)}
        graph.remove_nodes_from(stranded)
        removed.extend(stranded)
        stranded = [q for q in frontier if q in graph and (graph.out_degree(q) == 0 or graph.in_degree(q) == 0)]
    return removed


def subset_name(members: Iterable[str]) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def determinize(pres: SoficPresentation) -> SoficPresentation:
    """Construcción de subconjuntos desde el conjunto de todos los vértices, recortada"""
    if pres.is_empty():
        return pres
    start = frozenset(pres.graph)
    edges: List[Edge] = []
    stack = [start]
    seen: Set[Survivor] = {start}
    while stack:
        current = stack.pop()
        for letter in pres.alphabet:
            target = pres.targets(current, letter)
            if not target:
                continue
            edges.append((subset_name(current), letter, subset_name(target)))
            if target not in seen:
                seen.add(target)
                stack.append(target)
    logger.debug(f"subset construction reached {len(seen)} subsets")
    return SoficPresentation.from_edges(edges, pres.alphabet)


# ---------------------------------------------------------------------------
# Shifts de tipo finito
# ---------------------------------------------------------------------------

def _avoids(word: Letters, forbidden: FrozenSet[Letters]) -> bool:
    return not any(word[i:j] in forbidden for i in range(len(word)) for j in range(i + 1, len(word) + 1))


def sft_from_forbidden(alphabet: Alphabet, forbidden: Iterable[Sequence[str]]) -> SoficPresentation:
    """Presentación de De Bruijn sobre palabras de longitud (máxima prohibida - 1)"""
    blocked = frozenset(tuple(w) for w in forbidden)
    if any(not w for w in blocked):
        raise EmptyWordError("forbidden words must be nonempty")
    for w in blocked:
        for letter in w:
            if letter not in alphabet:
                raise FormatError(f"forbidden word uses {letter!r} outside alphabet")
    memory = max((len(w) for w in blocked), default=1) - 1
    if len(alphabet) ** (memory + 1) > config.PATH_CAP:
        raise BudgetExceededError("de Bruijn edges", len(alphabet) ** (memory + 1), config.PATH_CAP)

    def name(u: Letters) -> str:
        return format_letters(u) if u else EMPTY_STATE

    states = [u for u in alphabet.words(memory) if _avoids(u, blocked)]
    edges = []
    for u in states:
        for letter in alphabet:
            extended = u + (letter,)
            if _avoids(extended, blocked):
                edges.append((name(u), letter, name(extended[1:])))
    return SoficPresentation.from_edges(edges, alphabet, vertices=[name(u) for u in states])


# ---------------------------------------------------------------------------
# Familia de conjuntos supervivientes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurvivorFamily:
    members: Tuple[Survivor, ...]
    transitions: Tuple[Tuple[int, str, int], ...]
    core: Tuple[Survivor, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def transition(self, member: Survivor, letter: str) -> Optional[Survivor]:
        index = self.members.index(member)
        for src, label, dst in self.transitions:
            if src == index and label == letter:
                return self.members[dst]
        return None

    def to_dict(self) -> Dict:
        return {
            "size": self.size,
            "members": [subset_name(m) for m in self.members],
            "transitions": [[subset_name(self.members[s]), a, subset_name(self.members[d])]
                            for s, a, d in self.transitions],
            "core_size": len(self.core),
            "core": [subset_name(m) for m in self.core]
        }


def _member_key(member: Survivor) -> Tuple[int, str]:
    return (-len(member), subset_name(member))


def predecessor_set_family(pres: SoficPresentation) -> SurvivorFamily:
    deterministic = determinize(pres)
    if deterministic.is_empty():
        return SurvivorFamily((), (), ())
    top = frozenset(deterministic.graph)
    family: Set[Survivor] = {top}
    queue = deque([top])
    while queue:
        current = queue.popleft()
        for letter in deterministic.alphabet:
            previous = deterministic.back(current, letter)
            if previous and previous not in family:
                family.add(previous)
                queue.append(previous)

    # solo sobreviven los conjuntos con una cadena infinita de transiciones hacia atrás
    while True:
        realized = {deterministic.back(member, letter) for member in family for letter in deterministic.alphabet}
        kept = {member for member in family if member in realized}
        if kept == family:
            break
        family = kept

    members = tuple(sorted(family, key=_member_key))
    index = {member: i for i, member in enumerate(members)}
    transitions = []
    for member in members:
        for letter in deterministic.alphabet:
            previous = deterministic.back(member, letter)
            if previous in index:
                transitions.append((index[member], letter, index[previous]))

    family_graph = nx.DiGraph()
    family_graph.add_nodes_from(range(len(members)))
    family_graph.add_edges_from((s, d) for s, _, d in transitions)
    condensed = nx.condensation(family_graph)
    terminal = [n for n in condensed if condensed.out_degree(n) == 0]
    core_indices = sorted(i for n in terminal for i in condensed.nodes[n]["members"])
    core = tuple(members[i] for i in core_indices)
    logger.info(f"📊 Survivor family: {len(members)} members, recurrent core {len(core)}")
    return SurvivorFamily(members, tuple(transitions), core)


# ---------------------------------------------------------------------------
# Finitud y perfil de grado
# ---------------------------------------------------------------------------

class SoficLanguage(LanguageSource):
    """Lenguaje de etiquetas de caminos de una presentación esencial"""

    def __init__(self, pres: SoficPresentation, budget: Optional[int] = None):
        self.pres = determinize(pres)
        self.alphabet = pres.alphabet
        self.budget = budget if budget is not None else config.LANG_BUDGET

    def words(self, r: int) -> FrozenSet[Letters]:
        self._check_budget(r)
        frontier: Set[Tuple[Letters, str]] = {((), q) for q in self.pres.graph}
        for _ in range(r):
            frontier = {(word + (label,), dst) for word, q in frontier
                        for _, dst, label in self.pres.graph.out_edges(q, data="label")}
            if len(frontier) > config.PATH_CAP:
                raise BudgetExceededError("sofic path count", len(frontier), config.PATH_CAP)
        return frozenset(word for word, _ in frontier)

    def describe(self) -> Dict:
        return self.pres.describe()


def is_finite_shift(pres: SoficPresentation) -> bool:
    """Finito si la presentación determinizada recortada es unión disjunta de ciclos"""
    deterministic = determinize(pres)
    graph = deterministic.graph
    structural = all(graph.in_degree(q) == 1 and graph.out_degree(q) == 1 for q in graph)
    if deterministic.is_empty():
        return True
    r = len(graph)
    try:
        source = SoficLanguage(deterministic, budget=r + 1)
        stalled = len(source.words(r + 1)) == len(source.words(r))
    except BudgetExceededError:
        logger.warning("⚠️ Complexity cross-check skipped: path budget exceeded")
        return structural
    if stalled != structural:
        logger.warning(f"⚠️ Finiteness mismatch: structural={structural}, complexity stalled={stalled}")
    return structural


def _count_left_words(pres: SoficPresentation, survivors: Survivor, ell: int) -> Tuple[int, bool]:
    """Palabras distintas de longitud ell que etiquetan un camino que termina en survivors"""
    counts: Dict[Survivor, int] = {survivors: 1}
    capped = False
    for _ in range(ell):
        following: Dict[Survivor, int] = defaultdict(int)
        for current, count in counts.items():
            for letter in pres.alphabet:
                previous = pres.back(current, letter)
                if previous:
                    following[previous] = min(following[previous] + count, config.PATH_CAP)
        counts = following
    total = sum(counts.values())
    if total >= config.PATH_CAP:
        total, capped = config.PATH_CAP, True
    return total, capped


def sofic_degree_profile(pres: SoficPresentation, ell_max: int) -> Dict:
    deterministic = determinize(pres)
    family = predecessor_set_family(pres)
    profile: List[int] = []
    capped = False
    for ell in range(1, ell_max + 1):
        best = 0
        for member in family.members:
            count, overflow = _count_left_words(deterministic, member, ell)
            best = max(best, count)
            capped = capped or overflow
        profile.append(best)
    report = {
        "profile": profile,
        "max": max(profile, default=0),
        "capped": capped,
        "plateau": is_plateau(profile),
        "strictly_increasing": all(a < b for a, b in zip(profile, profile[1:])),
        "family_size": family.size
    }
    logger.info(f"📊 Sofic degree profile: {profile}")
    return report


# ---------------------------------------------------------------------------
# Formato de texto: "<origen> <etiqueta> <destino>" por línea
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> SoficPresentation:
    edges: List[Edge] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"expected '<src> <label> <dst>', got {raw.strip()!r}", number)
        src, label, dst = parts
        if LETTER_SEPARATOR in label:
            raise FormatError(f"edge label {label!r} is not a single letter", number)
        edges.append((src, label, dst))
    if not edges:
        raise FormatError("graph has no edges")
    return SoficPresentation.from_edges(edges)


def format_graph(pres: SoficPresentation) -> str:
    return "".join(f"{src} {label} {dst}\n" for src, label, dst in pres.edges())
