import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: dict[str, tuple[int, str, str]] = {}


def criterion(number: int, title: str):
    """Tag an acceptance test so the run ends with one line per criterion."""

    def mark(fn):
        fn.criterion = (number, title)
        return fn

    return mark


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    tag = getattr(getattr(item, "function", None), "criterion", None)
    if tag is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[item.nodeid] = (tag[0], tag[1], "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status in sorted(_criteria.values()):
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}")


@pytest.fixture
def data_dir() -> Path:
    return DATA


def load(name: str) -> dict:
    return json.loads((DATA / name).read_text())
