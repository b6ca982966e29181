import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from smslab import A, B, kronecker_trivext, local, nakayama, tube_from_seed  # noqa: E402
from smslab.strings import band_module  # noqa: E402


@functools.lru_cache(maxsize=None)
def tube(name, vertex=0):
    """Tube of the simple at a vertex, cached across tests."""
    alg = {"A2": lambda: A(2), "A3": lambda: A(3), "A4": lambda: A(4),
           "B3": lambda: B(3), "B4": lambda: B(4)}[name]()
    return tube_from_seed(alg.simple(vertex), depth=2)


@functools.lru_cache(maxsize=None)
def kronecker_tube(lam=1):
    K = kronecker_trivext()
    return tube_from_seed(band_module(K, "a b^-1", lam), depth=2)


@pytest.fixture(scope="session")
def A2():
    return A(2)


@pytest.fixture(scope="session")
def A2_tube():
    return tube("A2")


@pytest.fixture(scope="session")
def small_algebras():
    return {"local2": local(2), "nak22": nakayama(2, 2), "nak32": nakayama(3, 2),
            "nak33": nakayama(3, 3), "A2": A(2), "kron": kronecker_trivext()}


ACCEPTANCE = {}


def record(n, ok, detail):
    ACCEPTANCE[n] = (ok, detail)


def acceptance_lines():
    lines = []
    for n in range(1, 11):
        if n in ACCEPTANCE:
            ok, detail = ACCEPTANCE[n]
            lines.append("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
        else:
            lines.append("criterion %2d: NOT RUN" % n)
    return lines


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines():
        terminalreporter.write_line(line)
