# Configuration file for expanse
import os
from dotenv import load_dotenv

# Load environment variables from .env file (for local development)
load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


# Paralelismo interno (hilos para enumeraciones independientes)
EXPANSE_THREADS = max(1, _int_env('EXPANSE_THREADS', 1))

# Presupuestos de análisis
LANG_BUDGET = _int_env('EXPANSE_LANG_BUDGET', 64)       # longitud máxima r del lenguaje
PROBE_WINDOW = _int_env('EXPANSE_PROBE_WINDOW', 32)     # semiventana M de los sondeos
M_MAX = _int_env('EXPANSE_M_MAX', 16)                   # tope del testigo asintóticamente periódico
RADIUS_CAP = _int_env('EXPANSE_RADIUS_CAP', 3)          # mayor radio probado
PATH_CAP = _int_env('EXPANSE_PATH_CAP', 10 ** 6)        # tope de conteo de caminos (sofic)

LOG_LEVEL = os.getenv('EXPANSE_LOG_LEVEL', 'INFO').upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Reportes
REPORT_SCHEMA_VERSION = 1
SUPPORTED_FORMATS = ["text", "json", "csv"]
DEFAULT_FORMAT = "text"

EXIT_CODES = {
    "ok": 0,
    "premise": 2,
    "budget": 3
}

# Extensiones de archivo reconocidas por la CLI
INPUT_KINDS = {
    ".sub": "substitution",
    ".dir": "directive",
    ".graph": "graph"
}

CORPUS_FILE = "corpus.json"

# Reglas del motor de certificados: identificador -> descripción
RULE_NAMES = {
    "finite-shift": "finite shift (complexity stalls), positively 1-expansive",
    "asymptotic-periodic": "asymptotically periodic configuration, not finitely positively expansive",
    "right-marked": "right-marked everywhere-growing sequence, positively rk-expansive and not (rk-1)",
    "return-words": "return substitutions w.r.t. nonoverlapping words, positively rk-expansive",
    "toeplitz-prefix": "recognizable Toeplitz sequence, positively rk-expansive",
    "right-recoverable": "right-recoverable telescoped blocks, positively rk-expansive",
    "suffix-code": "suffix-code images at every level, positively rk^2-expansive",
    "uniform": "uniform substitutions with finite rank, positively rk^2-expansive",
    "radius-power": "common right-quasi-recognizability radius R, positively rk^(R+1)-expansive",
    "radius-series": "preperiodic everywhere-growing aperiodic sequence, finitely positively expansive",
    "arnoux-rauzy": "Arnoux-Rauzy directive sequence, positively rk-expansive"
}

# Orden de prioridad (más ajustada primero)
RULE_PRIORITY = [
    "finite-shift",
    "arnoux-rauzy",
    "right-marked",
    "return-words",
    "toeplitz-prefix",
    "right-recoverable",
    "suffix-code",
    "uniform",
    "radius-power",
    "radius-series"
]

# Sondeo de periodicidad en el lenguaje
PERIODIC_SCREEN_LENGTH = 32
PERIODIC_SCREEN_RATIO = 4     # periodo <= r / ratio cuenta como evidencia periódica
