import json
from pathlib import Path

import pytest

from tiltlab.cli import builtin_algebra, builtin_catalogue, builtin_complex

DATA = Path(__file__).parent / "data"


def frozen(name: str) -> dict:
    return json.loads((DATA / name).read_text())


@pytest.fixture(scope="session")
def brute():
    return frozen("brute_tables.json")


@pytest.fixture(scope="session")
def linear_tilting():
    return frozen("linear_an_tilting.json")


@pytest.fixture(scope="session")
def hkm4():
    return builtin_algebra("hkm4")


@pytest.fixture(scope="session")
def a2():
    return builtin_algebra("a2")


@pytest.fixture(scope="session")
def a3lin():
    return builtin_algebra("a3lin")


@pytest.fixture(scope="session")
def hkm4_cat():
    return dict(builtin_catalogue("hkm4"))


@pytest.fixture(scope="session")
def hkm4_t():
    return builtin_complex("hkm4")



_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    k = int(name.rsplit("_", 1)[-1])
    if report.failed:
        _CRITERIA[k] = "FAIL"
    elif report.when == "call" and k not in _CRITERIA:
        _CRITERIA[k] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {k}: {_CRITERIA[k]} - {CRITERIA[k]}")
