"""Bundled case studies: lattice, array-sum, and Fermat decomposition.

Each study module exposes ``run()`` returning a JSON-ready report and
``check(report)`` returning a list of failed expectations (empty when the
study reproduces its expected facts, which live as data files next to the
fixtures).
"""

import json
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture_json(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def load_fixture_text(name: str) -> str:
    return fixture_path(name).read_text()
