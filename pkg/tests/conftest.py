import os

import numpy as np
import pytest
from hypothesis import settings

import alphadisc as ad

settings.register_profile("default", deadline=None, max_examples=60)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; assert afterwards so the line is kept on failure."""

    def record(tag, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fs10k():
    return ad.SampleSpec.from_fs(10000.0)


@pytest.fixture(scope="session")
def fig3_grid(fs10k):
    return ad.default_grid(fs10k)


@pytest.fixture(scope="session")
def lpf():
    return ad.make_lpf(2400.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)
