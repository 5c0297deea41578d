#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Corpus de ejemplos: sustituciones, sucesiones de Arnoux-Rauzy y grafos
sóficos, cada uno con su resultado esperado
"""

import json
import logging
import os
import random
from typing import Dict, List, Optional

import config
from certify import arnoux_rauzy_sequence
from directive import DirectiveSequence, format_directive, is_everywhere_growing
from errors import FormatError, PremiseError
from sofic import SoficPresentation, format_graph, sft_from_forbidden
from substitution import Substitution, format_substitution
from words import Alphabet, parse_letters

logger = logging.getLogger(__name__)

CORPUS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), config.CORPUS_FILE)

RANDOM_LETTERS = ("a", "b", "c")
RANDOM_MAX_LEN = 3
RANDOM_MAX_TRIES = 1000


def toeplitz_substitution(n: int) -> Substitution:
    """k -> 0 1 ... (n-1) k sobre las letras 0..n-1"""
    if n < 2:
        raise PremiseError(f"Toeplitz order must be at least 2, got {n}")
    letters = tuple(str(k) for k in range(n))
    return Substitution(Alphabet(letters), Alphabet(letters), tuple((k, letters + (k,)) for k in letters))


class ExampleCorpus:
    """Lee corpus.json y construye los objetos de cada ejemplo"""

    def __init__(self, corpus_file: Optional[str] = None):
        self.corpus_file = corpus_file or CORPUS_PATH
        self.data = self.load_data()

    def load_data(self) -> Dict:
        try:
            with open(self.corpus_file, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"❌ Error al leer {self.corpus_file}")
            raise FormatError(f"corpus file is not valid JSON: {e}") from None

    def sequence_names(self) -> List[str]:
        names = list(self.data["substitutions"])
        names += [f"toeplitz_{n}" for n in self.data["toeplitz"]["orders"]]
        names += list(self.data["arnoux_rauzy"])
        return names

    def graph_names(self) -> List[str]:
        return list(self.data["graphs"])

    def substitution(self, name: str) -> Substitution:
        if name.startswith("toeplitz_"):
            return toeplitz_substitution(int(name.split("_", 1)[1]))
        entry = self.data["substitutions"].get(name)
        if entry is None:
            raise KeyError(f"unknown substitution {name!r}")
        rules = entry["rules"]
        return Substitution.from_mapping({letter: parse_letters(image, rules) for letter, image in rules.items()})

    def sequence(self, name: str) -> DirectiveSequence:
        entry = self.data["arnoux_rauzy"].get(name)
        if entry is not None:
            return arnoux_rauzy_sequence(entry["rk"], entry["cycle"], entry.get("transient", ()))
        return DirectiveSequence.constant(self.substitution(name))

    def graph(self, name: str) -> SoficPresentation:
        entry = self.data["graphs"].get(name)
        if entry is None:
            raise KeyError(f"unknown graph {name!r}")
        if "edges" in entry:
            return SoficPresentation.from_edges(tuple(edge) for edge in entry["edges"])
        alphabet = Alphabet(tuple(entry["alphabet"]))
        known = set(alphabet.symbols)
        return sft_from_forbidden(alphabet, [parse_letters(w, known) for w in entry["forbidden"]])

    def expected(self, name: str) -> Dict:
        if name.startswith("toeplitz_"):
            n = int(name.split("_", 1)[1])
            return {"verdict": "bound", "bound": n, "rule": "right-marked"}
        for section in ("substitutions", "arnoux_rauzy", "graphs"):
            if name in self.data[section]:
                return self.data[section][name].get("expected", {})
        raise KeyError(f"unknown example {name!r}")

    def export(self, directory: str) -> List[str]:
        """Escribir cada ejemplo en su formato de texto (.sub, .dir, .graph)"""
        os.makedirs(directory, exist_ok=True)
        written = []
        for name in self.sequence_names():
            seq = self.sequence(name)
            if name in self.data["arnoux_rauzy"]:
                path, text = os.path.join(directory, f"{name}.dir"), format_directive(seq)
            else:
                path, text = os.path.join(directory, f"{name}.sub"), format_substitution(seq.cycle[0])
            with open(path, 'w', encoding='utf-8') as f:
                f.write(text)
            written.append(path)
        for name in self.graph_names():
            path = os.path.join(directory, f"{name}.graph")
            with open(path, 'w', encoding='utf-8') as f:
                f.write(format_graph(self.graph(name)))
            written.append(path)
        logger.info(f"✅ Exported {len(written)} examples to {directory}")
        return written


def random_substitution(rng: random.Random, size: int, max_len: int = RANDOM_MAX_LEN) -> Substitution:
    letters = RANDOM_LETTERS[:size]
    for _ in range(RANDOM_MAX_TRIES):
        mapping = {a: tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len))) for a in letters}
        tau = Substitution(Alphabet(letters), Alphabet(letters), tuple(mapping.items()))
        if is_everywhere_growing(DirectiveSequence.constant(tau)):
            return tau
    raise PremiseError(f"no everywhere-growing substitution found in {RANDOM_MAX_TRIES} tries")


def random_substitutions(count: int, seed: int) -> List[Substitution]:
    """Sustituciones aleatorias reproducibles (misma semilla, misma lista)"""
    rng = random.Random(seed)
    return [random_substitution(rng, rng.choice((2, 3))) for _ in range(count)]
