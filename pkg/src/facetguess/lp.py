"""Linear programs ``max gamma . f`` over a (restricted) relaxed polytope.

Exact mode runs a two-phase primal simplex with Bland's rule on a
fraction-free integer tableau.  Among several optimal vertices it returns
the lexicographically smallest one: after the main objective it minimises
f_0, f_1, ... in turn over the optimal face.  Float mode hands the same
problem to HiGHS' dual simplex, which also ends on a basic solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from ._tableau import IntTableau
from .polytope import (
    BOX_LOWER,
    BOX_UPPER,
    EPS_ACTIVE,
    PolytopePoint,
    RelaxedPolytope,
    active_set,
    is_integral,
)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
EPS_OBJECTIVE = 1e-7
MAX_PIVOTS = 200_000


class CyclingError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPProblem:
    polytope: RelaxedPolytope
    gamma: tuple
    mode: str = "exact"

    def __post_init__(self):
        if len(self.gamma) != self.polytope.n:
            raise ValueError("objective length must equal n")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown arithmetic mode {self.mode!r}")


@dataclass(frozen=True)
class LPSolution:
    status: str
    point: PolytopePoint | None = None
    objective_value: Fraction | float | None = None
    pivot_count: int = 0
    polytope: RelaxedPolytope | None = field(default=None, repr=False, compare=False)
    _basis: tuple[int, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    @cached_property
    def basis(self) -> tuple[int, ...]:
        """n linearly independent inequalities tight at the point."""
        if self._basis is not None:
            return self._basis
        act = active_set(self.polytope, self.point)
        rows = self.polytope.A[act].astype(float)
        from scipy.linalg import qr

        _, _, piv = qr(rows.T, pivoting=True, mode="economic")
        return tuple(sorted(act[k] for k in piv[: self.polytope.n]))

    def is_integral(self) -> bool:
        return self.point is not None and is_integral(self.point)


def as_fraction_vector(gamma) -> list[Fraction]:
    out = []
    for g in gamma:
        if isinstance(g, float) and not math.isfinite(g):
            raise ValueError("objective entries must be finite")
        out.append(Fraction(g) if not isinstance(g, np.floating) else Fraction(float(g)))
    return out


def solve(problem: LPProblem) -> LPSolution:
    if problem.mode == "exact":
        return _solve_exact(problem.polytope, as_fraction_vector(problem.gamma))
    return _solve_float(problem.polytope, np.asarray(problem.gamma, dtype=float))


def solve_lp(polytope: RelaxedPolytope, gamma, mode: str = "exact") -> LPSolution:
    return solve(LPProblem(polytope, tuple(gamma), mode))


# ----------------------------------------------------------------- exact


def _bland_stage(tab: IntTableau, allowed: list[bool], k: int) -> None:
    """Maximise objective row ``k`` by Bland's rule over allowed columns."""
    obj = tab.objectives[k]
    T = tab.T
    ncols = tab.n_cols
    while True:
        obj = tab.objectives[k]
        s = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if s is None:
            return
        T = tab.T
        best = None
        for i in range(tab.n_rows):
            a = T[i, s]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            lhs, rhs = T[i, -1] * T[best, s], T[best, -1] * a
            if lhs < rhs or (lhs == rhs and tab.basis[i] < tab.basis[best]):
                best = i
        if best is None:
            raise RuntimeError("unbounded direction in a bounded polytope")
        tab.pivot(best, s)
        if tab.pivots > MAX_PIVOTS:
            raise CyclingError("pivot limit reached")


def _objective_row(tab: IntTableau, cost: Sequence[int]) -> np.ndarray:
    """Integer row ``c_B T - c * denom`` (negated reduced costs, scaled)."""
    cb = np.array([cost[b] for b in tab.basis], dtype=object)
    row = cb @ tab.T.astype(object) if len(cb) else np.zeros(tab.T.shape[1], dtype=object)
    c = np.array(list(cost) + [0], dtype=object)
    return row - c * tab.denom


def _solve_exact(polytope: RelaxedPolytope, gamma: list[Fraction]) -> LPSolution:
    n = polytope.n
    tight = polytope.tight
    ineqs = polytope.inequalities
    fixed_zero = {q.bit for r, q in enumerate(ineqs) if r in tight and q.kind == BOX_LOWER}
    var_bits = [i for i in range(n) if i not in fixed_zero]
    rows_idx = [r for r, q in enumerate(ineqs) if q.kind != BOX_LOWER]
    slack_rows = [r for r in rows_idx if r not in tight]
    art_rows = [r for r in rows_idx if r in tight]
    nv, ns, na = len(var_bits), len(slack_rows), len(art_rows)
    ncols = nv + ns + na
    A, b = polytope.A, polytope.b
    order = slack_rows + art_rows
    T = np.zeros((len(order), ncols + 1), dtype=np.int64)
    T[:, :nv] = -A[np.ix_(order, var_bits)]
    T[:, -1] = -b[order]
    for k in range(ns):
        T[k, nv + k] = 1
    for k in range(na):
        T[ns + k, nv + ns + k] = 1
    tab = IntTableau(T, list(range(nv, ncols)))

    if na:
        phase1 = [0] * (nv + ns) + [-1] * na
        tab.objectives = [_objective_row(tab, phase1)]
        _bland_stage(tab, [True] * ncols, 0)
        if tab.objectives[0][-1] < 0:
            return LPSolution(INFEASIBLE, pivot_count=tab.pivots, polytope=polytope)
        art = set(range(nv + ns, ncols))
        r = 0
        while r < tab.n_rows:
            if tab.basis[r] in art:
                j = next((j for j in range(nv + ns) if tab.T[r, j] != 0), None)
                if j is None:
                    tab.drop_row(r)
                    continue
                tab.pivot(r, j)
            r += 1
        tab.drop_columns(sorted(art))
        ncols = nv + ns

    den = math.lcm(*(g.denominator for g in gamma)) if gamma else 1
    costs = [[int(gamma[i] * den) for i in var_bits] + [0] * ns]
    for i in var_bits:
        costs.append([-1 if j == i else 0 for j in var_bits] + [0] * ns)
    allowed = [True] * ncols
    for k, cost in enumerate(costs):
        tab.objectives = [_objective_row(tab, cost)]
        _bland_stage(tab, allowed, 0)
        obj = tab.objectives[0]
        basic = set(tab.basis)
        for j in range(ncols):
            if j not in basic and obj[j] > 0:
                allowed[j] = False
        if not any(allowed[j] for j in range(ncols) if j not in basic):
            break

    x = [Fraction(0)] * n
    for i, bcol in enumerate(tab.basis):
        if bcol < nv:
            x[var_bits[bcol]] = Fraction(int(tab.T[i, -1]), tab.denom)
    basic = set(tab.basis)
    cert = set(tight)
    cert.update(polytope.box_lower_index(var_bits[j]) for j in range(nv) if j not in basic)
    cert.update(slack_rows[j - nv] for j in range(nv, nv + ns) if j not in basic)
    cert.update(polytope.box_lower_index(i) for i in fixed_zero)
    value = sum((g * xi for g, xi in zip(gamma, x)), Fraction(0))
    return LPSolution(
        OPTIMAL,
        PolytopePoint(tuple(x), True),
        value,
        tab.pivots,
        polytope,
        tuple(sorted(cert)),
    )


# ----------------------------------------------------------------- float


class _FloatModel:
    """Sparse constraint data of an unrestricted polytope, built once."""

    def __init__(self, polytope: RelaxedPolytope):
        self.rows = [r for r, q in enumerate(polytope.inequalities) if q.kind not in (BOX_LOWER, BOX_UPPER)]
        self.A_ub = sp.csr_matrix(-polytope.A[self.rows].astype(float))
        self.b_ub = -polytope.b[self.rows].astype(float)


_models: dict[int, tuple[RelaxedPolytope, _FloatModel]] = {}


def _float_model(polytope: RelaxedPolytope) -> _FloatModel:
    key = id(polytope.inequalities)
    hit = _models.get(key)
    if hit is None or hit[0].inequalities is not polytope.inequalities:
        if len(_models) > 32:
            _models.clear()
        hit = (polytope, _FloatModel(polytope))
        _models[key] = hit
    return hit[1]


def _solve_float(polytope: RelaxedPolytope, gamma: np.ndarray) -> LPSolution:
    model = _float_model(polytope)
    n = polytope.n
    lo, hi = np.zeros(n), np.ones(n)
    eq_rows = []
    for r in sorted(polytope.tight):
        q = polytope.inequalities[r]
        if q.kind == BOX_LOWER:
            hi[q.bit] = 0.0
        elif q.kind == BOX_UPPER:
            lo[q.bit] = 1.0
        else:
            eq_rows.append(r)
    if np.any(lo > hi):
        return LPSolution(INFEASIBLE, polytope=polytope)
    kwargs = {}
    if eq_rows:
        kwargs["A_eq"] = polytope.A[eq_rows].astype(float)
        kwargs["b_eq"] = polytope.b[eq_rows].astype(float)
    res = linprog(
        -gamma,
        A_ub=model.A_ub,
        b_ub=model.b_ub,
        bounds=np.column_stack([lo, hi]),
        method="highs-ds",
        **kwargs,
    )
    if res.status == 2:
        return LPSolution(INFEASIBLE, polytope=polytope)
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    x = np.clip(res.x, 0.0, 1.0)
    return LPSolution(
        OPTIMAL,
        PolytopePoint(tuple(float(v) for v in x), False),
        float(gamma @ x),
        int(getattr(res, "nit", 0)),
        polytope,
    )


def dump_tableau(tab: IntTableau) -> str:
    """Human-readable dump of a tableau, for debugging."""
    lines = [f"denominator {tab.denom}, basis {tab.basis}"]
    for row in tab.T:
        lines.append(" ".join(f"{int(v):>5d}" for v in row))
    return "\n".join(lines)
