# -*- coding: utf-8 -*-
"""
config.py
---------
Configurazione base del progetto SV-set:
- percorsi (BASE_DIR, STATIC_DIR, DATA_DIR),
- costanti regolabili da variabili d'ambiente (mai obbligatorie),
- config runtime da `static/data/config.runtime.json`,
- log su stderr con tag, nello stile "[TAG][LIVELLO] messaggio".
"""

from __future__ import annotations

import os
import sys
from typing import Any, Dict

import orjson

# ============================================================
# CONFIG BASE
# ============================================================

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
STATIC_DIR = os.path.join(BASE_DIR, "static")
DATA_DIR = os.path.join(STATIC_DIR, "data")
TESTS_DATA_DIR = os.path.join(DATA_DIR, "tests")

RUNTIME_CONFIG_PATH = os.path.join(DATA_DIR, "config.runtime.json")

CLOSURE_CAP = int(os.getenv("SVSET_CLOSURE_CAP", "4096"))
RANDOM_SAMPLES = int(os.getenv("SVSET_RANDOM_SAMPLES", "1000"))
DEFAULT_SEED = os.getenv("SVSET_SEED", "").strip() or None
DEBUG = os.getenv("SVSET_DEBUG", "0") == "1"

_DEFAULT_RUNTIME: Dict[str, Any] = {
    "name": "svset",
    "version": "1.0.0",
    "schema": "svset-report/1",
}


# ============================================================
# LOG
# ============================================================

def log(tag: str, message: str, level: str = "INFO") -> None:
    """
    Riga di log su stderr: stdout resta riservato ai report
    (output JSON identico a parità di input).
    """
    if level == "DEBUG" and not DEBUG:
        return
    prefix = f"[{tag}]" if level == "INFO" else f"[{tag}][{level}]"
    print(f"{prefix} {message}", file=sys.stderr, flush=True)


# ============================================================
# CONFIG RUNTIME
# ============================================================

def load_runtime_config(path: str = RUNTIME_CONFIG_PATH) -> Dict[str, Any]:
    cfg = dict(_DEFAULT_RUNTIME)
    if not os.path.exists(path):
        log("CONFIG", f"config runtime non trovata: {path}", "WARN")
        return cfg
    try:
        with open(path, "rb") as f:
            data = orjson.loads(f.read())
        if isinstance(data, dict):
            cfg.update({k: v for k, v in data.items() if k in _DEFAULT_RUNTIME})
    except orjson.JSONDecodeError as e:
        log("CONFIG", f"config runtime illeggibile ({e}), uso i default", "WARN")
    return cfg


RUNTIME = load_runtime_config()
APP_VERSION = str(RUNTIME["version"])
REPORT_SCHEMA = str(RUNTIME["schema"])
