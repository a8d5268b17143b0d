import os

import pytest
from hypothesis import HealthCheck, settings

from regpow import QQ, Ring
from regpow.groebner import Ideal

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

QUINTIC = ("x^5", "x^4*y", "x*y^4", "y^5")
SEPTIC = ("x^7", "x^6*y", "x^4*y^3", "x^3*y^4", "x*y^6", "y^7")

ACCEPTANCE_LINES: list = []


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("REGPOW_CACHE_DIR", str(tmp_path / "gbcache"))


@pytest.fixture(scope="session")
def A():
    return Ring.polynomial("x,y", QQ)


@pytest.fixture(scope="session")
def quintic(A):
    return Ideal(A, QUINTIC)


@pytest.fixture(scope="session")
def septic(A):
    return Ideal(A, SEPTIC)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
