import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).parent.parent / "codim3"))
sys.path.append(str(Path(__file__).parent.parent))

from fields import FieldSpec

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def gf3():
    return FieldSpec(3)


@pytest.fixture
def gf2():
    return FieldSpec(2)


@pytest.fixture
def qq():
    return FieldSpec(0)


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    """An empty working directory"""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def load_corpus():
    """The classified example ideals: [(m, n, class, p, q, r, generator text)]"""
    rows = []
    for line in (DATA_DIR / "appendix_classes.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        m, n, name, p, q, r, gens = line.split()
        rows.append((int(m), int(n), name, int(p), int(q), int(r), gens))
    return rows
