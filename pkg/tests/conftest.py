from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from superspace_lab.grassmann import GeneratorSet, GrassmannElement
from superspace_lab.scalar import ScalarExpr, const, symbol

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).with_name("golden")
MODELS = ROOT / "models"

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        prev = _ACCEPTANCE.get(number)
        state = "PASS" if rep.outcome == "passed" else "FAIL"
        if prev is None or prev[1] == "PASS":
            _ACCEPTANCE[number] = (title, state)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, state = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{state}] AC{number}: {title}")


# -- random material ---------------------------------------------------------

COEFF_SYMBOLS = [symbol("a"), symbol("b"), symbol("m")]


def random_scalar(rng: random.Random, allow_zero: bool = True) -> ScalarExpr:
    while True:
        e = const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        if rng.random() < 0.5:
            e = e + const(rng.randint(-3, 3)) * rng.choice(COEFF_SYMBOLS)
        if allow_zero or not e.is_zero:
            return e


def random_element(rng: random.Random, gens: GeneratorSet, terms: int = 4, parity: int | None = None) -> GrassmannElement:
    out = GrassmannElement(gens)
    n = len(gens)
    for _ in range(terms):
        size = rng.randint(0, min(n, 3))
        if parity is not None and size % 2 != parity:
            size = size + 1 if size < n else size - 1
        names = rng.sample(gens.names, size)
        out = out + GrassmannElement.monomial(gens, names, random_scalar(rng))
    return out


def random_even_invertible(rng: random.Random, gens: GeneratorSet) -> GrassmannElement:
    body = random_scalar(rng, allow_zero=False)
    return random_element(rng, gens, terms=4, parity=0).soul + body


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def gens4():
    return GeneratorSet(["theta", "thetabar", "c1", "c2"])


@pytest.fixture
def theta_gens():
    return GeneratorSet(["theta", "thetabar"])
