from __future__ import annotations

from pathlib import Path

import pytest

from flatlie.catalog import BUILTIN

FIXTURES = Path(__file__).parent / "fixtures"


def builtin_cells():
    """(entry, sample, algebra) for every built-in entry at every default sample."""
    return [(e, s, e.build(s)) for e in BUILTIN for s in e.samples()]


CELLS = builtin_cells()


def cell_id(cell):
    e, s, _ = cell
    return e.name + ("[" + ",".join(f"{k}={v}" for k, v in sorted(s.items())) + "]" if s else "")


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES
