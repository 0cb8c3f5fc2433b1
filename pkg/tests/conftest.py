import json
from importlib import resources

import pytest
from mpmath import mp

from arakelov_h0 import ArakelovDivisor, field_from_spec


def _data(name):
    return json.loads(resources.files("arakelov_h0").joinpath("data", name).read_text())


def load_example(tag):
    F = field_from_spec(_data(f"{tag}_field.json"))
    with mp.workprec(F.precision_bits):
        W = ArakelovDivisor.from_json(_data(f"{tag}_divisor.json"), F)
    return F, W


@pytest.fixture(scope="session")
def ex1():
    return load_example("ex1")


@pytest.fixture(scope="session")
def ex2():
    return load_example("ex2")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
