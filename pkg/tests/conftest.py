import os
import sys

import pytest

from qmsieve.numberfield.build import build_field
from qmsieve.numberfield.spec import parse_field

# the five example fields used across the oracle suites
EXAMPLE_FIELDS = ["realquad:2", "realquad:5", "poly:-1,-2,1,1", "multiquad:2,-17", "relquad:poly:-1,-2,1,1:-17"]


def field(text: str):
    return build_field(parse_field(text))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QM_SIEVE_CACHE", os.fspath(tmp_path / "cache"))


@pytest.fixture(scope="session")
def QQ():
    return field("Q")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
