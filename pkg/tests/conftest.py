import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spacefill import build_cell, make_serpentine_path, meander_path  # noqa: E402


def _bundled():
    cells = {
        "hilbert2": build_cell(make_serpentine_path(2, 2)),
        "hilbert3": build_cell(make_serpentine_path(3, 2)),
        "hilbert4": build_cell(make_serpentine_path(4, 2)),
        "meander": build_cell(meander_path()),
    }
    for variant in ("peano", "precess", "precess1"):
        cells[f"peano2-{variant}"] = build_cell(make_serpentine_path(2, 3), variant)
        cells[f"peano3-{variant}"] = build_cell(make_serpentine_path(3, 3), variant)
    return cells


BUNDLED = _bundled()
DIAGONAL = {k: c for k, c in BUNDLED.items() if c.is_diagonal}


@pytest.fixture(scope="session")
def bundled():
    return BUNDLED


@pytest.fixture(params=sorted(BUNDLED))
def any_cell(request):
    return BUNDLED[request.param]


@pytest.fixture(params=sorted(DIAGONAL))
def diagonal_cell(request):
    return DIAGONAL[request.param]


@pytest.fixture(scope="session")
def hilbert():
    return BUNDLED["hilbert2"]


@pytest.fixture(scope="session")
def peano():
    return BUNDLED["peano2-peano"]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
