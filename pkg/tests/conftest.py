#tests/conftest.py

import sys
from pathlib import Path

import pytest

# Add the project root to the Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.core.geometry import SpanObject
from app.models.equicore import Config


@pytest.fixture
def cfg_224():
    return Config(2, 2, 4)


@pytest.fixture
def cfg_235():
    return Config(2, 3, 5)


@pytest.fixture
def cfg_336():
    return Config(3, 3, 6)


@pytest.fixture(autouse=True)
def no_worker_override(monkeypatch):
    monkeypatch.delenv("SODCHECK_WORKERS", raising=False)


@pytest.fixture
def listed_decompositions():
    """Component lists written out by hand, keyed by (m, n, d)."""
    pf, pg, line, lb = SpanObject.point_f, SpanObject.point_g, SpanObject.line, SpanObject.line_bundle
    return {
        (2, 2, 4): {
            "D_g1": [pg(-2), pg(-1)],
            "D_fg": [line(-2, -2)],
            "D_g2": [],
            "D_f": [pf(2), pf(1)],
            "A": [lb(-2, -1), lb(-1, -1), lb(-1, 0), lb(0, 0)],
        },
        (2, 3, 5): {
            "D_g1": [pg(-3), pg(-2)],
            "D_fg": [line(-2, -3)],
            "D_g2": [pg(-1)],
            "D_f": [pf(2), pf(1)],
            "A": [lb(-3, -2), lb(-2, -2), lb(-2, -1), lb(-1, -1), lb(-1, 0), lb(0, 0)],
        },
        (3, 3, 6): {
            "D_g1": [pg(-3), pg(-2), pg(-1)],
            "D_fg": [line(-3, -3)],
            "D_g2": [],
            "D_f": [pf(3), pf(2), pf(1)],
            "A": [
                lb(-4, -2),
                lb(-3, -2), lb(-3, -1),
                lb(-2, -2), lb(-2, -1), lb(-2, 0),
                lb(-1, -1), lb(-1, 0),
                lb(0, 0),
            ],
        },
    }
