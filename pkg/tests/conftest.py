import math
import sys
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from singular_lab.digits import canonicalize, make_boundary_expansion  # noqa: E402

# exact rational arithmetic has uneven runtimes; timing is not under test
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

BIASES = [Fraction(1, 3), Fraction(3, 10), Fraction(7, 10), Fraction(9, 10)]


@pytest.fixture(params=BIASES, ids=str)
def bias(request):
    return request.param


@pytest.fixture(scope="session")
def sparse_ones():
    """Purely periodic point with one 1 per 10 digits (D1 = 1/10)."""
    return canonicalize(((), (0,) * 9 + (1,)))


@pytest.fixture(scope="session")
def boundary_plus():
    return make_boundary_expansion(Fraction(3, 10), math.isqrt, 2000)


@pytest.fixture(scope="session")
def boundary_minus():
    return make_boundary_expansion(Fraction(3, 10), lambda k: -math.isqrt(k), 2000)


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording PASS/FAIL for a numbered acceptance criterion."""
    results = request.config.stash.setdefault(ACCEPTANCE, {})

    @contextmanager
    def check(number, title):
        try:
            yield
        except BaseException:
            results[number] = (title, "FAIL")
            print(f"criterion {number:>2} FAIL  {title}")
            raise
        results[number] = (title, "PASS")
        print(f"criterion {number:>2} PASS  {title}")

    return check


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, verdict = results[number]
        terminalreporter.write_line(f"{verdict}  {number:>2}. {title}")
