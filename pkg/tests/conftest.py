import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from routeway.dsl import parse  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name: str):
    return parse((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def group_doc():
    return load("group.rwy")


@pytest.fixture
def inequality_doc():
    return load("inequality.rwy")


@pytest.fixture
def school_doc():
    return load("school.rwy")
