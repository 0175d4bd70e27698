# -*- coding: utf-8 -*-
"""
Fixture condivise. Il conftest sta nella radice così i moduli piatti
(scale.py, svset.py, ...) sono importabili dai test.
"""

from __future__ import annotations

import os
from typing import Any, Dict

import orjson
import pytest
from hypothesis import HealthCheck, settings

from config import DATA_DIR, TESTS_DATA_DIR

settings.register_profile(
    "svset",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "svset"))


def data_file(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def data_path():
    return data_file


@pytest.fixture(scope="session")
def golden_decision() -> Dict[str, Any]:
    with open(os.path.join(TESTS_DATA_DIR, "golden_decision.json"), "rb") as f:
        return orjson.loads(f.read())
