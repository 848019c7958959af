import itertools
import os

import pytest
from hypothesis import HealthCheck, settings

from hodgescan.formats import fixture_path, load_lattice

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def box_vectors(n, radius):
    return itertools.product(range(-radius, radius + 1), repeat=n)


@pytest.fixture(scope="session")
def rank14():
    return load_lattice(fixture_path("quartic_rank14"))


@pytest.fixture(scope="session")
def rank18():
    return load_lattice(fixture_path("quartic_rank18"))


@pytest.fixture(scope="session")
def rank10():
    return load_lattice(fixture_path("quartic_rank10"))


def random_decimal(rng, digits):
    """Uniform decimal in (-1, 1) with ``digits`` places, as a string."""
    n = rng.randint(-10 ** digits + 1, 10 ** digits - 1)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits, "0")
    return f"{sign}0.{s}"


def planted_k3_like(seed, digits=90, radius="1e-80"):
    """Six-dimensional period data with a known rank-2 Picard lattice.

    Form diag(1, 1, 1, -1, -1, -1), polarization e0 and Picard lattice
    <e0, e5>.  The periods live in span(e1..e4) with a dominant e1/e2 part so
    that the period plane is positive.
    """
    import random

    from hodgescan.hodge import PeriodData

    rng = random.Random(seed)
    I = [[(1 if i < 3 else -1) * int(i == j) for j in range(6)] for i in range(6)]
    zero = "0"
    re = [zero, "1", zero, random_decimal(rng, digits), random_decimal(rng, digits), zero]
    im = [zero, random_decimal(rng, digits), "1", random_decimal(rng, digits), random_decimal(rng, digits), zero]
    # shrink the negative-definite part so U stays positive
    for v in (re, im):
        for k in (3, 4):
            v[k] = v[k].replace("0.", "0.0", 1) if not v[k].startswith("-") else v[k].replace("-0.", "-0.0", 1)
    periods = [[(re[i], im[i])] for i in range(6)]
    return PeriodData(I, [1, 0, 0, 0, 0, 0], periods, radius, 1, 2, 80)


# criterion number -> (passed, title, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, title, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
