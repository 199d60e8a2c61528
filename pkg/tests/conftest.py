from __future__ import annotations

import shutil
import sys
import uuid
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.ops import SeparationSystem, build_system  # noqa: E402
from generators.registry import named_fixture  # noqa: E402
from treesets.config import set_limits  # noqa: E402


@pytest.fixture
def tmp_path() -> Path:
    base = ROOT / "scratch" / "pytest_tmp"
    base.mkdir(parents=True, exist_ok=True)
    path = base / f"case-{uuid.uuid4().hex}"
    path.mkdir(parents=True, exist_ok=True)
    try:
        yield path
    finally:
        shutil.rmtree(path, ignore_errors=True)


@pytest.fixture(autouse=True)
def _reset_limits() -> None:
    yield
    set_limits(None)


@pytest.fixture
def path3() -> SeparationSystem:
    return named_fixture("path3")


@pytest.fixture
def k13() -> SeparationSystem:
    return named_fixture("k13")


@pytest.fixture
def ex_non_trans() -> SeparationSystem:
    return named_fixture("ex_non_trans")


@pytest.fixture
def ex_trivial() -> SeparationSystem:
    return named_fixture("ex_trivial")


@pytest.fixture
def trivial_pair() -> SeparationSystem:
    """r lies below both orientations of s."""
    return build_system(
        ["r", "r*", "s", "s*"],
        [("r", "r*"), ("s", "s*")],
        [("r", "s"), ("r", "s*")],
        name="trivial_pair",
        close_under_involution=True,
    )
