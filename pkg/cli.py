#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
expanse - interfaz de línea de comandos por lotes.

Subcomandos: props, lang, parse, pred, certify, sofic, examples.
Los reportes son deterministas (sin marcas de tiempo) y llevan la
configuración usada y la versión del esquema.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import config
from certify import certify, certify_arnoux_rauzy, render_certificate
from directive import (DirectiveSequence, is_everywhere_growing, is_strongly_primitive, is_weakly_primitive,
                       min_len_profile, parse_directive, primitivity_exponent, rank)
from errors import BudgetExceededError, ExpanseError, FormatError, PremiseError
from example_corpus import ExampleCorpus, random_substitutions
from language import LanguageSource, SubstitutiveLanguage, complexity, entropy_estimate, language
from parsing import (Window, enumerate_standard_schemes, geometric_radius_bound, least_probed_radius,
                     probe_quasi_recognizability, radius_series_bound)
from predecessors import default_right_length, degree_profile, persistence_witness, predecessor_table
from sofic import (SoficLanguage, SoficPresentation, determinize, is_finite_shift, parse_graph,
                   predecessor_set_family, sofic_degree_profile)
from substitution import format_substitution, parse_substitution, properties
from words import parse_letters

logger = logging.getLogger(__name__)

Analysed = Union[DirectiveSequence, SoficPresentation]

COMMANDS = ["props", "lang", "parse", "pred", "certify", "sofic", "examples"]

# niveles mostrados del perfil de longitudes mínimas
PROFILE_LEVELS = 8


@dataclass(frozen=True)
class AnalysisConfig:
    command: str
    inputs: Tuple[str, ...] = ()
    example: Optional[str] = None
    budget_lang: int = config.LANG_BUDGET
    probe_window: int = config.PROBE_WINDOW
    m_max: int = config.M_MAX
    radius_cap: int = config.RADIUS_CAP
    r: Optional[int] = None
    ell: int = 1
    right: Optional[int] = None
    profile: Optional[int] = None
    q: Optional[int] = None
    word: Optional[str] = None
    origin: Optional[int] = None
    ar_rank: Optional[int] = None
    ar_indices: Tuple[int, ...] = ()
    random_count: Optional[int] = None
    seed: int = 0
    export: Optional[str] = None
    fmt: str = config.DEFAULT_FORMAT
    output: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PremiseError(f"unknown command {self.command!r}")
        if self.fmt not in config.SUPPORTED_FORMATS:
            raise PremiseError(f"format must be one of {config.SUPPORTED_FORMATS}")
        for name in ("budget_lang", "probe_window", "m_max", "ell"):
            if getattr(self, name) < 1:
                raise PremiseError(f"{name} must be positive")
        for name in ("r", "right", "profile", "q", "random_count"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise PremiseError(f"{name} must be positive")
        if self.radius_cap < 0:
            raise PremiseError("radius cap must be nonnegative")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "AnalysisConfig":
        indices = tuple(int(i) for i in args.ar_indices.split(",")) if args.ar_indices else ()
        return cls(
            command=args.command,
            inputs=tuple(args.input or ()),
            example=args.example,
            budget_lang=args.budget_lang,
            probe_window=args.probe_window,
            m_max=args.m_max,
            radius_cap=args.radius_cap,
            r=args.r,
            ell=args.ell,
            right=args.right,
            profile=args.profile,
            q=args.q,
            word=args.word,
            origin=args.origin,
            ar_rank=args.ar_rank,
            ar_indices=indices,
            random_count=args.random,
            seed=args.seed,
            export=args.export,
            fmt=args.format,
            output=args.output
        )

    def describe(self) -> Dict:
        report = asdict(self)
        report["inputs"] = list(self.inputs)
        report["ar_indices"] = list(self.ar_indices)
        return report


# ---------------------------------------------------------------------------
# Entrada
# ---------------------------------------------------------------------------

def read_input(path: str) -> Tuple[str, Analysed]:
    """Tipo de entrada según la extensión: .sub, .dir o .graph"""
    kind = config.INPUT_KINDS.get(os.path.splitext(path)[1].lower())
    if kind is None:
        raise FormatError(f"unknown input extension for {path} (expected {', '.join(config.INPUT_KINDS)})")
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    if kind == "substitution":
        return kind, DirectiveSequence.constant(parse_substitution(text))
    if kind == "directive":
        return kind, parse_directive(text)
    return kind, parse_graph(text)


def load_inputs(cfg: AnalysisConfig) -> List[Tuple[str, str, Analysed]]:
    loaded = []
    if cfg.example:
        corpus = ExampleCorpus()
        if cfg.example in corpus.graph_names():
            loaded.append((cfg.example, "graph", corpus.graph(cfg.example)))
        else:
            loaded.append((cfg.example, "directive", corpus.sequence(cfg.example)))
    for path in cfg.inputs:
        kind, obj = read_input(path)
        loaded.append((path, kind, obj))
    if not loaded:
        raise FormatError(f"command {cfg.command} needs --input or --example")
    return loaded


def _require_sequence(name: str, obj: Analysed) -> DirectiveSequence:
    if not isinstance(obj, DirectiveSequence):
        raise FormatError(f"{name}: this command needs a substitution or directive input")
    return obj


def _source(obj: Analysed, budget: int) -> LanguageSource:
    if isinstance(obj, SoficPresentation):
        return SoficLanguage(obj, budget)
    return SubstitutiveLanguage(obj, budget)


# ---------------------------------------------------------------------------
# Subcomandos
# ---------------------------------------------------------------------------

def command_props(cfg: AnalysisConfig, name: str, obj: Analysed) -> Dict:
    seq = _require_sequence(name, obj)
    levels = [properties(tau, cfg.q) for tau in seq.transient + seq.cycle]
    growing = is_everywhere_growing(seq)
    summary = {
        "rank": rank(seq),
        "everywhere_growing": growing,
        "weakly_primitive": is_weakly_primitive(seq),
        "strongly_primitive": is_strongly_primitive(seq),
        "primitivity_exponent": primitivity_exponent(seq),
        "min_len_profile": min_len_profile(seq, PROFILE_LEVELS)
    }
    return {"levels": levels, "sequence": summary}


def command_lang(cfg: AnalysisConfig, name: str, obj: Analysed) -> Dict:
    seq = _require_sequence(name, obj)
    r = cfg.r or min(16, cfg.budget_lang)
    table = language(seq, r, cfg.budget_lang)
    p = complexity(seq, r, cfg.budget_lang)
    return {
        "r": r,
        "level": table.level,
        "words": [w for w in table.text().splitlines()],
        "complexity": p,
        "entropy": entropy_estimate(p)
    }


def command_parse(cfg: AnalysisConfig, name: str, obj: Analysed) -> Dict:
    seq = _require_sequence(name, obj)
    if cfg.word is not None:
        tau = seq.level(0)
        letters = parse_letters(cfg.word, tau.codomain.symbols)
        origin = cfg.origin if cfg.origin is not None else len(letters) // 2
        schemes = enumerate_standard_schemes(tau, Window(letters, origin))
        return {"window": cfg.word, "origin": origin, "schemes": [s.to_dict() for s in schemes]}

    qr, radii = [], []
    for t in range(seq.described_levels):
        tau = seq.level(t)
        over = SubstitutiveLanguage(seq.shift(t), cfg.budget_lang)
        preimages = SubstitutiveLanguage(seq.shift(t + 1), cfg.budget_lang)
        qr.append(probe_quasi_recognizability(tau, cfg.probe_window, over, preimages, f"level {t}").to_dict())
        R, _ = least_probed_radius(tau, cfg.probe_window, over, cfg.radius_cap, preimages)
        radii.append(R)
    result = {"quasi_recognizability": qr, "radii": radii, "radius_series_bound": None, "geometric": None}
    if all(R is not None for R in radii):
        result["radius_series_bound"] = radius_series_bound(seq, radii, 16)
        if all(tau.is_expanding() for tau in seq.transient + seq.cycle):
            result["geometric"] = geometric_radius_bound(seq, max(radii))
    return result


def command_pred(cfg: AnalysisConfig, name: str, obj: Analysed) -> Dict:
    source = _source(obj, cfg.budget_lang)
    R_w = cfg.right or default_right_length(source, cfg.ell)
    table = predecessor_table(source, cfg.ell, R_w)
    result = {"table": table.summary(), "rows": table.csv_rows(),
              "persistence": persistence_witness(source, cfg.ell, max(1, R_w // 2))}
    if cfg.profile:
        profile_right = cfg.right or default_right_length(source, cfg.profile)
        result["profile"] = degree_profile(source, cfg.profile, profile_right)
    return result


def command_certify(cfg: AnalysisConfig, name: str, obj: Optional[Analysed]) -> Dict:
    if cfg.ar_rank is not None:
        return certify_arnoux_rauzy(cfg.ar_rank, cfg.ar_indices).to_dict()
    seq = _require_sequence(name, obj)
    return certify(seq, cfg.probe_window, cfg.budget_lang, cfg.m_max, cfg.radius_cap).to_dict()


def command_sofic(cfg: AnalysisConfig, name: str, obj: Analysed) -> Dict:
    if not isinstance(obj, SoficPresentation):
        raise FormatError(f"{name}: sofic needs a .graph input")
    result = {
        "presentation": obj.describe(),
        "deterministic": determinize(obj).describe(),
        "family": predecessor_set_family(obj).to_dict(),
        "finite": is_finite_shift(obj)
    }
    if cfg.profile:
        result["profile"] = sofic_degree_profile(obj, cfg.profile)
    return result


def command_examples(cfg: AnalysisConfig) -> Dict:
    if cfg.random_count:
        subs = random_substitutions(cfg.random_count, cfg.seed)
        return {"seed": cfg.seed, "random": [format_substitution(tau) for tau in subs]}
    corpus = ExampleCorpus()
    result = {
        "sequences": {n: corpus.expected(n) for n in corpus.sequence_names()},
        "graphs": {n: corpus.expected(n) for n in corpus.graph_names()}
    }
    if cfg.export:
        result["exported"] = [os.path.basename(p) for p in corpus.export(cfg.export)]
    return result


HANDLERS: Dict[str, Callable[[AnalysisConfig, str, Analysed], Dict]] = {
    "props": command_props,
    "lang": command_lang,
    "parse": command_parse,
    "pred": command_pred,
    "certify": command_certify,
    "sofic": command_sofic
}


def build_report(cfg: AnalysisConfig) -> Dict:
    report = {"schema": config.REPORT_SCHEMA_VERSION, "command": cfg.command, "config": cfg.describe()}
    if cfg.command == "examples":
        report["results"] = [{"input": "corpus", "result": command_examples(cfg)}]
    elif cfg.command == "certify" and cfg.ar_rank is not None:
        report["results"] = [{"input": f"arnoux-rauzy rk={cfg.ar_rank}", "result": command_certify(cfg, "", None)}]
    else:
        handler = HANDLERS[cfg.command]
        report["results"] = [{"input": name, "kind": kind, "result": handler(cfg, name, obj)}
                             for name, kind, obj in load_inputs(cfg)]
    return report


# ---------------------------------------------------------------------------
# Salida
# ---------------------------------------------------------------------------

def _csv_rows(command: str, result: Dict) -> Tuple[List[str], List[Sequence]]:
    if command == "pred":
        return ["right_word", "ell", "count"], result["rows"]
    if command == "lang":
        return ["r", "complexity"], [(r, p) for r, p in enumerate(result["complexity"], start=1)]
    if command == "sofic":
        profile = result.get("profile", {}).get("profile", [])
        return ["ell", "max_count"], [(ell, c) for ell, c in enumerate(profile, start=1)]
    if command == "certify":
        return ["premise", "outcome", "conclusive", "evidence"], [
            (p["name"], p["outcome"], p["conclusive"], p["evidence"]) for p in result["premises"]]
    return ["key", "value"], [(k, json.dumps(v, sort_keys=True)) for k, v in sorted(result.items())]


def _text_lines(value, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            nested = isinstance(item, dict) or (isinstance(item, list) and any(isinstance(v, (dict, list))
                                                                                for v in item))
            if nested and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(value) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_scalar(v) for v in value)
    if isinstance(value, dict):
        return "{}"
    return "null" if value is None else str(value)


def render(cfg: AnalysisConfig, report: Dict) -> str:
    if cfg.fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if cfg.fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for entry in report["results"]:
            header, rows = _csv_rows(cfg.command, entry["result"])
            writer.writerow(["input"] + header)
            for row in rows:
                writer.writerow([entry["input"]] + list(row))
        return buffer.getvalue()
    lines = [f"expanse {cfg.command} (schema {report['schema']})"]
    for entry in report["results"]:
        lines.append(f"== {entry['input']}")
        if cfg.command == "certify":
            lines.append(render_certificate(entry["result"]).rstrip("\n"))
        else:
            lines.extend(_text_lines(entry["result"]))
    return "\n".join(lines) + "\n"


def write_output(cfg: AnalysisConfig, text: str):
    if cfg.output:
        with open(cfg.output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"✅ Report written to {cfg.output}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Punto de entrada
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="expanse", description="Positive expansiveness certificates for Z-shifts")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", action="append", help="input file (.sub, .dir, .graph); repeatable")
    parser.add_argument("--example", help="built-in corpus example name")
    parser.add_argument("--budget-lang", type=int, default=config.LANG_BUDGET)
    parser.add_argument("--probe-window", type=int, default=config.PROBE_WINDOW)
    parser.add_argument("--m-max", type=int, default=config.M_MAX)
    parser.add_argument("--radius-cap", type=int, default=config.RADIUS_CAP)
    parser.add_argument("--r", type=int, help="language length")
    parser.add_argument("--ell", type=int, default=1, help="predecessor length")
    parser.add_argument("--right", type=int, help="right window length R_w")
    parser.add_argument("--profile", type=int, help="largest ell of the degree profile")
    parser.add_argument("--q", type=int, help="recoverability parameter for props")
    parser.add_argument("--word", help="window word for parse")
    parser.add_argument("--origin", type=int, help="window origin for parse")
    parser.add_argument("--ar-rank", type=int, help="certify an Arnoux-Rauzy sequence of this rank")
    parser.add_argument("--ar-indices", help="comma-separated Arnoux-Rauzy cycle indices")
    parser.add_argument("--random", type=int, help="emit this many random substitutions")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--export", help="directory to write the corpus files to")
    parser.add_argument("--format", choices=config.SUPPORTED_FORMATS, default=config.DEFAULT_FORMAT)
    parser.add_argument("--output", help="report file (default stdout)")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=getattr(logging, config.LOG_LEVEL, logging.INFO), format=config.LOG_FORMAT)
    args = build_parser().parse_args(argv)
    try:
        cfg = AnalysisConfig.from_args(args)
        write_output(cfg, render(cfg, build_report(cfg)))
    except BudgetExceededError as e:
        logger.error(f"❌ Budget exceeded: {e}")
        return config.EXIT_CODES["budget"]
    except ExpanseError as e:
        logger.error(f"❌ {e}")
        return config.EXIT_CODES["premise"]
    except (OSError, KeyError, ValueError) as e:
        logger.error(f"❌ Cannot process input: {e}")
        return config.EXIT_CODES["premise"]
    return config.EXIT_CODES["ok"]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
