import pytest
from hypothesis import settings

from linset.field_tower import FieldSpec

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

# (p, e) pairs with q = p^e in {2, 3, 4, 5}
SMALL = [(2, 1), (3, 1), (2, 2), (5, 1)]

_FIELDS: dict = {}

ACCEPTANCE_LINES: list[str] = []


def field(p: int, e: int = 1) -> FieldSpec:
    if (p, e) not in _FIELDS:
        _FIELDS[(p, e)] = FieldSpec(p, e)
    return _FIELDS[(p, e)]


@pytest.fixture(scope="session")
def F16():
    return field(2)


@pytest.fixture(scope="session")
def F81():
    return field(3)


@pytest.fixture(scope="session", params=SMALL, ids=lambda pe: f"q{pe[0] ** pe[1]}")
def small_field(request):
    return field(*request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
