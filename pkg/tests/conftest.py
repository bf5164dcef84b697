from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from patmine.demo import (
    demo_dataset,
    demo_negative,
    demo_positive,
    demo_template,
)

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def template():
    return demo_template()


@pytest.fixture
def positive():
    return demo_positive()


@pytest.fixture
def negative():
    return demo_negative()


@pytest.fixture
def dataset():
    return demo_dataset()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN
