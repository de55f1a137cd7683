import sys
import random

import pytest
from hypothesis import settings

from spinalgroups.harness.config import BUILTIN
from spinalgroups.spinal import SpinalGroup

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def gs3() -> SpinalGroup:
    return BUILTIN["gupta-sidki-3"].group()


@pytest.fixture(scope="session")
def exc3() -> SpinalGroup:
    return BUILTIN["exceptional-3"].group()


@pytest.fixture(scope="session")
def p5r2() -> SpinalGroup:
    return BUILTIN["p5-r2"].group()


def small_groups():
    """(p <= 5, r <= 2) groups used by the randomized cross-checks."""
    return [BUILTIN[n].group() for n in ("gupta-sidki-3", "exceptional-3", "p3-r2",
                                          "gupta-sidki-5", "p5-r2")]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
