import random

import mpmath
import pytest

from thetaq.params import Precision, make_param

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Record one 'criterion N: PASS/FAIL ...' line for the terminal summary."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[ACCEPTANCE_KEY].append(line)
        print(line)
        return ok

    return record


@pytest.fixture(scope="session")
def prec128():
    return Precision(128)


@pytest.fixture(scope="session")
def prec256():
    return Precision(256)


@pytest.fixture(params=["1.2i", "0.3+1.1i", "0.1+0.6i"])
def param(request, prec128):
    return make_param(request.param, prec128)


def rel(a, b):
    """Relative difference with the max(1, |a|, |b|) denominator, computed at 80 digits.

    Operands may come from different mpmath contexts; both are lifted into
    the global context first so neither precision leaks into the comparison.
    """
    with mpmath.workdps(80):
        a, b = mpmath.mpmathify(a), mpmath.mpmathify(b)
        return abs(a - b) / max(1, abs(a), abs(b))


class Oracle:
    """Independent reference values from mpmath's own theta and q-Pochhammer code."""

    def __init__(self, dps):
        self.dps = dps

    def nome(self, tau):
        with mpmath.workdps(self.dps):
            return mpmath.expjpi(mpmath.mpmathify(tau))

    def theta(self, j, z, tau):
        with mpmath.workdps(self.dps):
            # jtheta takes q**(1/4) on the principal branch; fine for Re(tau) in (-1, 1]
            return mpmath.jtheta(j, mpmath.mpmathify(z), self.nome(tau))

    def qp(self, a, nome):
        with mpmath.workdps(self.dps):
            return mpmath.qp(mpmath.mpmathify(a), mpmath.mpmathify(nome))


@pytest.fixture(scope="session")
def oracle():
    return Oracle(80)


def random_points(seed, n, re=(-2, 2), im=(-0.2, 0.2)):
    rng = random.Random(seed)
    return [complex(rng.uniform(*re), rng.uniform(*im)) for _ in range(n)]
