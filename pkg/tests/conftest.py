from __future__ import annotations

import os
from pathlib import Path

import pytest

from amortrs import parse_trs

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def queue_trs():
    return parse_trs(fixture_text("queue.trs"))


@pytest.fixture(scope="session")
def trs_342():
    return parse_trs(fixture_text("3_42.trs"))


@pytest.fixture(scope="session")
def isort_trs():
    return parse_trs(fixture_text("insertionsort.trs"))


@pytest.fixture(scope="session")
def append_trs():
    return parse_trs(fixture_text("append.trs"))


@pytest.fixture(scope="session")
def queue_path() -> str:
    return str(FIXTURES / "queue.trs")


@pytest.fixture(scope="session")
def path_342() -> str:
    return str(FIXTURES / "3_42.trs")


@pytest.fixture(scope="session")
def isort_path() -> str:
    return str(FIXTURES / "insertionsort.trs")
