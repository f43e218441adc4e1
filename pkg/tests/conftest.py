import pytest
from hypothesis import settings

from betacantor.field import Beta

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    return Beta.parse("poly:[-1,-1,1]@[1,2]")


@pytest.fixture(scope="session")
def one_plus_sqrt3():
    return Beta.parse("poly:[-2,-2,1]@[2.7,2.8]")


@pytest.fixture(scope="session")
def one_plus_sqrt2():
    return Beta.parse("poly:[-1,-2,1]@[2.4,2.5]")


def pytest_terminal_summary(terminalreporter):
    from _util import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
