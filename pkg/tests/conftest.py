from __future__ import annotations

import numpy as np
import pytest

from sectiontomo.numerics import DEFAULT_CONFIG


@pytest.fixture
def cfg():
    return DEFAULT_CONFIG


@pytest.fixture
def rng():
    return np.random.default_rng(12345)



def pytest_terminal_summary(terminalreporter):
    import sys

    for name, module in list(sys.modules.items()):
        if name.endswith("test_acceptance") and getattr(module, "RESULTS", None):
            terminalreporter.section("acceptance criteria")
            for number in sorted(module.RESULTS):
                terminalreporter.write_line(module.RESULTS[number])
