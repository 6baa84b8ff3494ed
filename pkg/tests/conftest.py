from __future__ import annotations

import functools
from fractions import Fraction

import numpy as np
import pytest

from facetguess.codes import ParityCheckCode, hamming_code, random_regular_code
from facetguess.polytope import build_polytope, enumerate_vertices

# random regular codes small enough for exhaustive vertex enumeration
SMALL_CODES = [
    (6, 2, 3, 1),
    (6, 2, 4, 1),
    (8, 2, 4, 1),
    (8, 2, 4, 2),
    (9, 2, 3, 1),
    (10, 2, 4, 1),
    (10, 2, 5, 1),
    (8, 3, 4, 1),
    (8, 3, 4, 2),
    (6, 3, 3, 1),
    (9, 3, 3, 1),
    (8, 3, 6, 1),
]


@functools.lru_cache(maxsize=None)
def small_code(n, dv, dc, seed) -> ParityCheckCode:
    return random_regular_code(n, dv, dc, seed)


@functools.lru_cache(maxsize=None)
def polytope_and_vertices(key):
    code = hamming_code() if key == "hamming" else small_code(*key)
    P = build_polytope(code)
    return code, P, enumerate_vertices(P)


@pytest.fixture(scope="session")
def hamming():
    return polytope_and_vertices("hamming")


def single_check(degree: int) -> ParityCheckCode:
    return ParityCheckCode.from_checks(degree, [list(range(degree))])


def tie_free_gamma(rng: np.random.Generator, n: int, low=-1.0, high=0.5) -> list[Fraction]:
    """Objective on a 10^-6 grid; callers reject the rare exact ties."""
    ints = rng.integers(int(low * 10**6), int(high * 10**6), size=n)
    return [Fraction(int(v), 10**6) for v in ints]


def score(gamma, x):
    return sum(g * v for g, v in zip(gamma, x))


def has_ties(gamma, vertices) -> bool:
    scores = [score(gamma, v.coords) for v in vertices]
    return len(set(scores)) != len(scores)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
