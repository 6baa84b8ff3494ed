"""Decoders: brute-force ML, LP, facet guessing, bit guessing and a
sum-product baseline, plus the predicates and bounds that describe when
the guessing decoders succeed.

Objectives follow the convention ``maximise sum(gamma_i * x_i)``, so a
negative ``gamma_i`` favours bit 0.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .codes import BinaryWord, ParityCheckCode, enumerate_codewords
from .lp import OPTIMAL, LPSolution, solve_lp
from .polytope import (
    PolytopePoint,
    RelaxedPolytope,
    active_set,
    build_polytope,
    enumerate_vertices,
    is_integral,
    pin_bits,
    restrict_to_facet,
)

ML_CERTIFIED = "ml_certified"
INTEGRAL = "integral"
FRACTIONAL_FAILURE = "fractional_failure"
LIST_SUCCESS = "list_success"
LIST_FAILURE = "list_failure"

LLR_CLIP = 25.0


@dataclass(frozen=True)
class GuessBudget:
    strategy: str = "random"
    N: int = 20
    seed: int = 0
    c: float = 1.0

    def __post_init__(self):
        if self.strategy not in ("exhaustive", "random"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if not self.c > 0:
            raise ValueError("c must be positive")


@dataclass(frozen=True)
class DecodeOutcome:
    status: str
    word: BinaryWord | None = None
    pseudocodeword: PolytopePoint | None = None
    candidates_examined: int = 0
    lp_solves: int = 0
    rng_draws: int = 0
    infeasible_solves: int = 0
    iterations: int = 0

    @property
    def failed(self) -> bool:
        return self.word is None


def likelihood(gamma: Sequence, x: Sequence) -> Fraction | float:
    return sum((g * v for g, v in zip(gamma, x)), 0)


def _best_word(gamma, words) -> BinaryWord | None:
    """Highest likelihood, ties to the lexicographically smallest word."""
    best, best_score = None, None
    for w in sorted(set(words)):
        s = likelihood(gamma, w)
        if best is None or s > best_score:
            best, best_score = w, s
    return best


def ml_decode_bruteforce(code: ParityCheckCode, gamma: Sequence, max_dimension: int = 20) -> BinaryWord:
    if len(gamma) != code.n:
        raise ValueError("objective length must equal n")
    return _best_word(gamma, enumerate_codewords(code, max_dimension))


# ----------------------------------------------------------------- LP family


def _polytope(code, polytope):
    return polytope if polytope is not None else build_polytope(code)


def _outcome_from_lp(sol: LPSolution) -> DecodeOutcome:
    if sol.is_integral():
        return DecodeOutcome(ML_CERTIFIED, sol.point.rounded(), lp_solves=1)
    return DecodeOutcome(FRACTIONAL_FAILURE, pseudocodeword=sol.point, lp_solves=1)


def lp_decode(
    code: ParityCheckCode,
    gamma: Sequence,
    mode: str = "exact",
    polytope: RelaxedPolytope | None = None,
) -> DecodeOutcome:
    return _outcome_from_lp(solve_lp(_polytope(code, polytope), gamma, mode))


def _collect(gamma, first: DecodeOutcome, solutions, draws: int) -> DecodeOutcome:
    words, infeasible = [], 0
    for sol in solutions:
        if sol.status != OPTIMAL:
            infeasible += 1
        elif sol.is_integral():
            words.append(sol.point.rounded())
    best = _best_word(gamma, words)
    return DecodeOutcome(
        LIST_SUCCESS if best is not None else LIST_FAILURE,
        best,
        first.pseudocodeword,
        candidates_examined=len(solutions),
        lp_solves=first.lp_solves + len(solutions),
        rng_draws=draws,
        infeasible_solves=infeasible,
    )


def facet_pool(polytope: RelaxedPolytope, point: PolytopePoint) -> list[int]:
    """Inequalities not active at ``point``, in index order."""
    act = set(active_set(polytope, point))
    return [r for r in range(len(polytope)) if r not in act]


def facet_guess_decode(
    code: ParityCheckCode,
    gamma: Sequence,
    budget: GuessBudget = GuessBudget(),
    mode: str = "exact",
    polytope: RelaxedPolytope | None = None,
    first: DecodeOutcome | None = None,
) -> DecodeOutcome:
    """LP decoding, then re-solving on facets that avoid the failing
    pseudocodeword.  ``first`` lets a caller share an LP result it
    already has for the same objective."""
    P = _polytope(code, polytope)
    first = first if first is not None else lp_decode(code, gamma, mode, P)
    if first.status == ML_CERTIFIED:
        return first
    pool = facet_pool(P, first.pseudocodeword)
    assert pool, "a fractional vertex cannot lie on every inequality"
    draws = 0
    if budget.strategy == "random" and budget.N < len(pool):
        rng = np.random.default_rng(budget.seed)
        chosen = rng.choice(len(pool), size=budget.N, replace=False)
        pool = [pool[k] for k in chosen]
        draws = budget.N
    sols = [solve_lp(restrict_to_facet(P, r), gamma, mode) for r in pool]
    return _collect(gamma, first, sols, draws)


def guessed_bit_count(n: int, c: float) -> int:
    """ceil(c log2 n), with slack so that c = j / log2(n) gives exactly j."""
    return max(1, math.ceil(c * math.log2(n) - 1e-9))


def bit_guess_decode(
    code: ParityCheckCode,
    gamma: Sequence,
    budget: GuessBudget = GuessBudget(),
    mode: str = "exact",
    polytope: RelaxedPolytope | None = None,
    first: DecodeOutcome | None = None,
    k: int | None = None,
) -> DecodeOutcome:
    """LP decoding, then pinning k random bits to each of the 2^k patterns.

    ``k`` defaults to ceil(c log2 n) from the budget.
    """
    n = code.n
    k = guessed_bit_count(n, budget.c) if k is None else k
    if k > n:
        raise ValueError(f"cannot guess {k} of {n} bits")
    P = _polytope(code, polytope)
    first = first if first is not None else lp_decode(code, gamma, mode, P)
    if first.status == ML_CERTIFIED:
        return first
    rng = np.random.default_rng(budget.seed)
    bits = sorted(int(i) for i in rng.choice(n, size=k, replace=False))
    sols = [
        solve_lp(pin_bits(P, list(zip(bits, values))), gamma, mode)
        for values in itertools.product((0, 1), repeat=k)
    ]
    return _collect(gamma, first, sols, k)


# ------------------------------------------------------ analytic predicates


def vertex_catalogue(polytope: RelaxedPolytope, vertices=None) -> list[tuple[PolytopePoint, frozenset]]:
    """Fractional vertices paired with their active sets.

    The predicates below accept this list in place of plain vertices so
    that sweeps over many objectives enumerate only once.
    """
    if vertices is None:
        vertices = enumerate_vertices(polytope)
    return [(v, frozenset(active_set(polytope, v))) for v in vertices if not is_integral(v)]


def _vertex_table(polytope, vertices):
    if vertices is not None and vertices and isinstance(vertices[0], tuple):
        return vertices
    return vertex_catalogue(polytope, vertices)


def pseudocodewords_above(
    polytope: RelaxedPolytope,
    gamma: Sequence,
    x_ml: Sequence[int],
    vertices: Sequence[PolytopePoint] | None = None,
) -> list[tuple[PolytopePoint, bool]]:
    """Fractional vertices beating ``x_ml``, each flagged adjacent when
    its active set meets the active set of ``x_ml``."""
    gamma = [Fraction(g) for g in gamma]
    ml_score = likelihood(gamma, x_ml)
    ml_act = set(active_set(polytope, PolytopePoint.of(tuple(x_ml))))
    out = []
    for v, act in _vertex_table(polytope, vertices):
        if likelihood(gamma, v.coords) > ml_score:
            out.append((v, bool(act & ml_act)))
    return out


def efg_failure_predicate(
    polytope: RelaxedPolytope,
    gamma: Sequence,
    x_ml: Sequence[int],
    vertices: Sequence[PolytopePoint] | None = None,
) -> bool:
    """True iff every inequality active at ``x_ml`` also holds some
    fractional vertex of strictly higher likelihood."""
    gamma = [Fraction(g) for g in gamma]
    ml_score = likelihood(gamma, x_ml)
    ml_act = set(active_set(polytope, PolytopePoint.of(tuple(x_ml))))
    covered: set[int] = set()
    for v, act in _vertex_table(polytope, vertices):
        if likelihood(gamma, v.coords) > ml_score:
            covered |= act & ml_act
    return covered == ml_act


def rfg_success_lower_bound(dc: int, rate, codeword_const, pseudo_const, ratio) -> Fraction | float:
    """(codeword_const - ratio * pseudo_const) / (2^(dc-1) (1 - rate) + 2), clamped to [0, 1].

    The constants are per-bit active-set sizes of a codeword and of a
    fractional vertex.
    """
    num = codeword_const - ratio * pseudo_const
    value = num / (2 ** (dc - 1) * (1 - rate) + 2)
    return min(max(value, 0), 1)


def rbg_success_lower_bound(n: int, c: float, M: int, alpha) -> float:
    """1 - M n^{c log2(1 - alpha)}, clamped to [0, 1]."""
    alpha = float(alpha)
    if alpha >= 1:
        return 1.0
    return min(max(1.0 - M * n ** (c * math.log2(1 - alpha)), 0.0), 1.0)


# ----------------------------------------------------------- sum-product


class _Graph:
    """Edge arrays for message passing, with checks padded to equal width."""

    def __init__(self, code: ParityCheckCode):
        E = sum(code.check_degrees)
        self.n, self.E = code.n, E
        width = max(code.check_degrees, default=0)
        slots = np.full((code.m, width), E, dtype=np.int64)  # E = padding edge
        bit_of = np.empty(E, dtype=np.int64)
        e = 0
        for a, nbhd in enumerate(code.check_neighborhoods):
            for j, i in enumerate(nbhd):
                slots[a, j] = e
                bit_of[e] = i
                e += 1
        self.slots, self.bit_of = slots, bit_of


def _syndrome_ok(graph: _Graph, hard: np.ndarray) -> bool:
    padded = np.append(hard[graph.bit_of], 0)
    parity = padded[graph.slots].sum(axis=1) % 2
    return not parity.any()


def sum_product_decode(
    code: ParityCheckCode,
    gamma: Sequence,
    max_iter: int = 100,
    graph: _Graph | None = None,
    early_stop: bool = True,
) -> DecodeOutcome:
    """Flooding log-domain sum-product; channel LLR log P(y|0)/P(y|1) = -gamma.

    Always reports ``integral`` with the final hard decision, which need
    not be a codeword when the iteration limit is hit. With
    ``early_stop=False`` all ``max_iter`` iterations run, so on a
    cycle-free graph the decisions are the converged bitwise MAP ones.
    """
    g = graph if graph is not None else _Graph(code)
    llr = np.clip(-np.asarray(gamma, dtype=float), -LLR_CLIP, LLR_CLIP)
    hard = (llr < 0).astype(np.int64)
    if early_stop and _syndrome_ok(g, hard):
        return DecodeOutcome(INTEGRAL, tuple(int(v) for v in hard))
    r = np.zeros(g.E)
    it = 0
    for it in range(1, max_iter + 1):
        total = llr + np.bincount(g.bit_of, r, minlength=g.n)
        q = total[g.bit_of] - r
        t = np.append(np.tanh(np.clip(q, -LLR_CLIP, LLR_CLIP) / 2), 1.0)[g.slots]
        ones = np.ones((t.shape[0], 1))
        left = np.cumprod(np.hstack([ones, t[:, :-1]]), axis=1)
        right = np.cumprod(np.hstack([ones, t[:, :0:-1]]), axis=1)[:, ::-1]
        ext = np.clip(left * right, -1 + 1e-15, 1 - 1e-15)
        msg = np.clip(2 * np.arctanh(ext), -LLR_CLIP, LLR_CLIP)
        r = np.empty(g.E)
        valid = g.slots < g.E
        r[g.slots[valid]] = msg[valid]
        total = llr + np.bincount(g.bit_of, r, minlength=g.n)
        hard = (total < 0).astype(np.int64)
        if early_stop and _syndrome_ok(g, hard):
            break
    return DecodeOutcome(INTEGRAL, tuple(int(v) for v in hard), iterations=it)
