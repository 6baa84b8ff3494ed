"""The relaxed (fundamental) polytope of a parity-check code.

Every inequality is kept in the normal form ``a . f >= b`` with
coefficients in {-1, 0, +1}.  Inequalities are indexed as follows: all
forbidden-set inequalities first (check by check, forbidden words in
lexicographic order), then ``f_i >= 0`` for every bit, then ``-f_i >= -1``
for every bit.  Restrictions (facet guesses, pinned bits) never add new
rows; they mark existing inequalities as tight.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._tableau import IntTableau
from .codes import BudgetExceeded, ParityCheckCode

FORBIDDEN = "forbidden"
BOX_LOWER = "box_lower"
BOX_UPPER = "box_upper"

EPS_ACTIVE = 1e-8
EPS_INTEGRAL = 1e-6


class InfeasiblePoint(ValueError):
    def __init__(self, index: int, slack):
        super().__init__(f"inequality {index} violated (slack {slack})")
        self.index = index
        self.slack = slack


@dataclass(frozen=True)
class LinearInequality:
    kind: str
    coeffs: tuple[tuple[int, int], ...]
    rhs: int
    check: int | None = None
    word: tuple[int, ...] | None = None
    bit: int | None = None

    def label(self) -> str:
        if self.kind == FORBIDDEN:
            return f"check {self.check} forbids {''.join(map(str, self.word))}"
        return f"{'f_%d >= 0' if self.kind == BOX_LOWER else 'f_%d <= 1'}" % self.bit


@dataclass(frozen=True)
class PolytopePoint:
    """A point of [0, 1]^n; ``exact`` points hold Fractions."""

    coords: tuple
    exact: bool

    @classmethod
    def of(cls, coords, exact: bool | None = None) -> "PolytopePoint":
        if isinstance(coords, PolytopePoint):
            return coords
        coords = list(coords)
        if exact is None:
            exact = all(isinstance(c, (int, Fraction, np.integer)) for c in coords)
        if exact:
            return cls(tuple(Fraction(int(c)) if isinstance(c, np.integer) else Fraction(c) for c in coords), True)
        return cls(tuple(float(c) for c in coords), False)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def as_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.coords])

    def rounded(self) -> tuple[int, ...]:
        return tuple(int(round(float(c))) for c in self.coords)

    def to_json(self) -> list:
        if self.exact:
            return [f"{c.numerator}/{c.denominator}" for c in self.coords]
        return list(self.coords)


def forbidden_sequences(degree: int) -> list[tuple[int, ...]]:
    """Odd-weight binary words of the given length, lexicographically ordered."""
    if degree < 1:
        raise ValueError("check degree must be at least 1")
    return [w for w in itertools.product((0, 1), repeat=degree) if sum(w) % 2 == 1]


def shared_forbidden_neighbors(u: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    """Odd-weight words at Hamming distance 1 from both local words."""
    if len(u) != len(v):
        raise ValueError("words differ in length")
    out = []
    for i in range(len(u)):
        w = list(u)
        w[i] ^= 1
        if sum(w) % 2 == 1 and sum(a != b for a, b in zip(w, v)) == 1:
            out.append(tuple(w))
    return sorted(out)


@dataclass(frozen=True)
class RelaxedPolytope:
    code: ParityCheckCode
    inequalities: tuple[LinearInequality, ...]
    forbidden_index: dict = field(repr=False, compare=False)
    tight: frozenset[int] = frozenset()

    @property
    def n(self) -> int:
        return self.code.n

    def __len__(self) -> int:
        return len(self.inequalities)

    def box_lower_index(self, bit: int) -> int:
        return len(self.inequalities) - 2 * self.n + bit

    def box_upper_index(self, bit: int) -> int:
        return len(self.inequalities) - self.n + bit

    @cached_property
    def A(self) -> np.ndarray:
        A = np.zeros((len(self.inequalities), self.n), dtype=np.int64)
        for r, ineq in enumerate(self.inequalities):
            for i, c in ineq.coeffs:
                A[r, i] = c
        return A

    @cached_property
    def b(self) -> np.ndarray:
        return np.array([q.rhs for q in self.inequalities], dtype=np.int64)

    @property
    def n_forbidden(self) -> int:
        return len(self.inequalities) - 2 * self.n

    def with_tight(self, indices: Iterable[int]) -> "RelaxedPolytope":
        return RelaxedPolytope(
            self.code, self.inequalities, self.forbidden_index, self.tight | frozenset(indices)
        )

    def legend(self) -> list[str]:
        return [q.label() for q in self.inequalities]


def build_polytope(code: ParityCheckCode, max_check_degree: int = 16) -> RelaxedPolytope:
    if max(code.check_degrees, default=0) > max_check_degree:
        raise BudgetExceeded(
            f"check degree {max(code.check_degrees)} exceeds budget {max_check_degree}"
        )
    ineqs: list[LinearInequality] = []
    index = {}
    for a, nbhd in enumerate(code.check_neighborhoods):
        for z in forbidden_sequences(len(nbhd)):
            coeffs = tuple((i, -1 if zi else 1) for i, zi in zip(nbhd, z))
            index[(a, z)] = len(ineqs)
            ineqs.append(LinearInequality(FORBIDDEN, coeffs, 1 - sum(z), check=a, word=z))
    for i in range(code.n):
        ineqs.append(LinearInequality(BOX_LOWER, ((i, 1),), 0, bit=i))
    for i in range(code.n):
        ineqs.append(LinearInequality(BOX_UPPER, ((i, -1),), -1, bit=i))
    return RelaxedPolytope(code, tuple(ineqs), index)


def facet_count_formula(code: ParityCheckCode) -> Fraction:
    """(2^{d_c-1}(1-R) + 2) n for a check-regular code."""
    dc = code.dc
    if dc is None:
        raise ValueError("check-irregular code")
    return (2 ** (dc - 1) * (1 - code.design_rate) + 2) * code.n


def restrict_to_facet(polytope: RelaxedPolytope, idx: int) -> RelaxedPolytope:
    if not 0 <= idx < len(polytope):
        raise IndexError(f"no inequality {idx}")
    return polytope.with_tight([idx])


def pin_bits(polytope: RelaxedPolytope, assignments: Sequence[tuple[int, int]]) -> RelaxedPolytope:
    bits = [i for i, _ in assignments]
    if len(set(bits)) != len(bits):
        raise ValueError("a bit is pinned twice")
    idx = []
    for i, v in assignments:
        if not 0 <= i < polytope.n or v not in (0, 1):
            raise ValueError(f"invalid pin ({i}, {v})")
        other = polytope.box_upper_index(i) if v == 0 else polytope.box_lower_index(i)
        if other in polytope.tight:
            raise ValueError(f"bit {i} is already pinned to {1 - v}")
        idx.append(polytope.box_lower_index(i) if v == 0 else polytope.box_upper_index(i))
    return polytope.with_tight(idx)


# ----------------------------------------------------------- point queries


def _slacks(polytope: RelaxedPolytope, p: PolytopePoint):
    """a.p - b for every inequality; exact points give Fractions."""
    if len(p) != polytope.n:
        raise ValueError("point has the wrong length")
    if p.exact:
        den = math.lcm(*(c.denominator for c in p.coords))
        num = np.array([int(c * den) for c in p.coords], dtype=object)
        raw = polytope.A.astype(object) @ num - polytope.b.astype(object) * den
        return [Fraction(int(v), den) for v in raw]
    return polytope.A @ p.as_array() - polytope.b


def active_set(polytope: RelaxedPolytope, p, eps: float = EPS_ACTIVE) -> list[int]:
    """Sorted indices of the inequalities tight at ``p``."""
    p = PolytopePoint.of(p)
    slack = _slacks(polytope, p)
    tol = 0 if p.exact else eps
    active = []
    for r, s in enumerate(slack):
        if s < -tol:
            raise InfeasiblePoint(r, s)
        if s <= tol:
            active.append(r)
    for r in polytope.tight:
        if slack[r] > tol:
            raise InfeasiblePoint(r, slack[r])
    return active


def is_feasible(polytope: RelaxedPolytope, p, eps: float = EPS_ACTIVE) -> bool:
    try:
        active_set(polytope, p, eps)
    except InfeasiblePoint:
        return False
    return True


def frac_rank(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for k in range(rank + 1, len(rows)):
            if rows[k][col] != 0:
                f = Fraction(rows[k][col]) / pr[col]
                rows[k] = [x - f * y for x, y in zip(rows[k], pr)]
        rank += 1
    return rank


def is_vertex(polytope: RelaxedPolytope, p, eps: float = EPS_ACTIVE) -> bool:
    p = PolytopePoint.of(p)
    act = active_set(polytope, p, eps)
    if not act:
        return polytope.n == 0
    rows = polytope.A[act]
    if p.exact:
        return frac_rank(rows.tolist()) == polytope.n
    return int(np.linalg.matrix_rank(rows.astype(float))) == polytope.n


def is_integral(p, eps: float = EPS_INTEGRAL) -> bool:
    p = PolytopePoint.of(p)
    if p.exact:
        return all(c in (0, 1) for c in p.coords)
    return all(min(abs(c), abs(c - 1)) <= eps for c in p.coords)


@dataclass(frozen=True)
class FractionalProfile:
    fractional_bits: frozenset[int]
    fractional_checks: frozenset[int]
    components: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "fractional_bits": sorted(self.fractional_bits),
            "fractional_checks": sorted(self.fractional_checks),
            "components": [list(c) for c in self.components],
        }


def fractional_bits(p, eps: float = EPS_INTEGRAL) -> list[int]:
    p = PolytopePoint.of(p)
    if p.exact:
        return [i for i, c in enumerate(p.coords) if 0 < c < 1]
    return [i for i, c in enumerate(p.coords) if eps < c < 1 - eps]


def fractional_profile(code: ParityCheckCode, p, eps: float = EPS_INTEGRAL) -> FractionalProfile:
    """Fractional bits, the checks touching them, and the connected
    components of the fractional bits (two bits are joined when they share
    a check)."""
    p = PolytopePoint.of(p)
    if len(p) != code.n:
        raise ValueError("point has the wrong length")
    vf = fractional_bits(p, eps)
    vset = set(vf)
    cf = {a for i in vf for a in code.bit_neighborhoods[i]}
    parent = {i: i for i in vf}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in cf:
        members = [i for i in code.check_neighborhoods[a] if i in vset]
        for i in members[1:]:
            ri, r0 = find(i), find(members[0])
            if ri != r0:
                parent[max(ri, r0)] = min(ri, r0)
    groups: dict[int, list[int]] = {}
    for i in vf:
        groups.setdefault(find(i), []).append(i)
    comps = tuple(sorted(tuple(g) for g in groups.values()))
    return FractionalProfile(frozenset(vf), frozenset(cf), comps)


def active_set_upper_bound(code: ParityCheckCode, profile: FractionalProfile) -> int:
    """(m - f_c) dc + 2 f_c + n - f_b, where f_b fractional bits touch f_c checks."""
    dc = code.dc
    if dc is None:
        raise ValueError("bound needs a common check degree")
    cf, vf = len(profile.fractional_checks), len(profile.fractional_bits)
    return (code.m - cf) * dc + 2 * cf + code.n - vf


def codeword_active_constant(rate, dc: int) -> Fraction:
    """Active inequalities per bit at any codeword: (1 - R) d_c + 1."""
    return (1 - Fraction(rate)) * dc + 1


def pseudocodeword_active_constant(rate, dv: int, dc: int, alpha, delta) -> Fraction:
    """Per-bit active-set bound for a fractional vertex of an expander:
    (1 - R - delta d_v alpha) d_c + 2 delta d_v alpha + (1 - alpha)."""
    rate, alpha, delta = Fraction(rate), Fraction(alpha), Fraction(delta)
    spread = delta * dv * alpha
    return (1 - rate - spread) * dc + 2 * spread + (1 - alpha)


def lonely_fractional_checks(code: ParityCheckCode, p) -> list[int]:
    """Checks with exactly one fractional neighbour."""
    vset = set(fractional_bits(p))
    return [
        a for a, nbhd in enumerate(code.check_neighborhoods) if sum(i in vset for i in nbhd) == 1
    ]


# ------------------------------------------------------ vertex enumeration


def _solve_square(rows: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    """Unique solution of a square rational system, or None when singular."""
    n = len(rows)
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((k for k in range(col, n) if M[k][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pr = M[col]
        inv = 1 / pr[col]
        pr[:] = [x * inv for x in pr]
        for k in range(n):
            if k != col and M[k][col] != 0:
                f = M[k][col]
                M[k] = [x - f * y for x, y in zip(M[k], pr)]
    return [M[k][n] for k in range(n)]


def _batch_solve(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fraction-free Gauss-Jordan on a stack of augmented systems.

    ``M`` has shape (B, n, n + 1).  Returns (numerators, determinants):
    x = numerators / determinant, with determinant 0 for singular
    systems.  Every intermediate entry is a minor of the input, so small
    integer data never overflows int64 for n <= 14.
    """
    M = M.copy()
    B, n, _ = M.shape
    prev = np.ones(B, dtype=M.dtype)
    alive = np.ones(B, dtype=bool)
    rows = np.arange(B)
    for k in range(n):
        nz = M[:, k:, k] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = k + np.argmax(nz, axis=1)
        swap = alive & (piv != k)
        if swap.any():
            r = rows[swap]
            top, other = M[r, k].copy(), M[r, piv[swap]].copy()
            M[r, k], M[r, piv[swap]] = other, top
        pk = M[:, k, k].copy()
        pk[~alive] = 1
        factor = M[:, :, k].copy()
        factor[:, k] = 0
        upd = (pk[:, None, None] * M - factor[:, :, None] * M[:, k][:, None, :]) // prev[:, None, None]
        upd[:, k] = M[:, k]
        M = upd
        prev = pk
    det = np.where(alive, M[:, n - 1, n - 1], 0)
    return M[:, :, n], det


def _enumerate_by_subsets(polytope: RelaxedPolytope, budget: int) -> set[tuple[Fraction, ...]]:
    """Solve every n-subset of inequalities (restrictions always included)
    in exact integer arithmetic and keep the feasible solutions."""
    n = polytope.n
    A, b = polytope.A, polytope.b
    tight = sorted(polytope.tight)
    others = [r for r in range(len(A)) if r not in polytope.tight]
    # restricted rows enter every system through an independent subset;
    # feasibility below still demands equality on all of them
    basis = [tight[k] for k in _independent_subset(A[tight].tolist())]
    need = n - len(basis)
    count = math.comb(len(others), need)
    if count > budget:
        raise BudgetExceeded(f"{count} subsets exceed budget {budget}")
    dtype = np.int64 if n <= 14 else object
    Ab = np.column_stack([A, b]).astype(dtype)
    Aall, ball = A.astype(dtype), b.astype(dtype)
    eq = np.array(tight, dtype=np.int64)
    fixed = np.array(basis, dtype=np.int64)
    found = set()
    combos = itertools.combinations(others, need)
    while True:
        chunk = list(itertools.islice(combos, 20000))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.int64).reshape(len(chunk), need)
        idx = np.hstack([np.broadcast_to(fixed, (len(chunk), len(fixed))), idx])
        num, det = _batch_solve(Ab[idx])
        ok = det != 0
        num, det = num[ok], det[ok]
        sign = np.where(det < 0, -1, 1)
        num, det = num * sign[:, None], det * sign
        slack = num @ Aall.T - det[:, None] * ball[None, :]
        feas = (slack >= 0).all(axis=1)
        if len(eq):
            feas &= (slack[:, eq] == 0).all(axis=1)
        for x, d in zip(num[feas], det[feas]):
            found.add(tuple(Fraction(int(v), int(d)) for v in x))
    return found


def _independent_subset(rows, n: int | None = None):
    """Greedy indices of linearly independent rows.

    With ``n`` given, returns the first n such indices or None if the rank
    is smaller; otherwise returns a maximal independent subset.
    """
    chosen = []
    for k in range(len(rows)):
        if frac_rank([rows[j] for j in chosen + [k]]) == len(chosen) + 1:
            chosen.append(k)
            if len(chosen) == n:
                return chosen
    return chosen if n is None else None


def _exact_vertex(polytope: RelaxedPolytope, A: np.ndarray, b: np.ndarray, x: np.ndarray):
    """Rational vertex near the float point ``x``, certified exactly, or None."""
    n = polytope.n
    coords = tuple(Fraction(float(v)).limit_denominator(1 << 20) for v in x)
    den = math.lcm(*(c.denominator for c in coords))
    num = np.array([c.numerator * (den // c.denominator) for c in coords], dtype=np.int64)
    slack = A @ num - b * den
    if slack.min(initial=0) < 0:
        return None
    act = np.flatnonzero(slack == 0)
    if any(slack[r] != 0 for r in polytope.tight):
        return None
    if len(act) < n or int(np.linalg.matrix_rank(A[act].astype(float))) < n:
        return None
    return coords


def _enumerate_by_double_description(polytope: RelaxedPolytope, budget: int) -> set[tuple[Fraction, ...]]:
    """Floating-point double description, then an exact certificate per vertex.

    cdd produces candidate vertices.  Each one is rationalised and
    accepted only if it satisfies every inequality exactly with n
    linearly independent inequalities tight; a candidate that fails is
    re-solved exactly from its float active set.
    """
    import cdd

    n = polytope.n
    A, b = polytope.A, polytope.b
    mat = cdd.matrix_from_array(
        np.column_stack([-b, A]).astype(float).tolist(),
        lin_set=set(polytope.tight),
        rep_type=cdd.RepType.INEQUALITY,
    )
    gens = cdd.copy_generators(cdd.polyhedron_from_matrix(mat))
    if len(gens.array) > budget:
        raise BudgetExceeded(f"{len(gens.array)} vertices exceed budget {budget}")
    found = set()
    for g in gens.array:
        if g[0] != 1:
            raise RuntimeError("relaxed polytope reported an unbounded direction")
        x = np.asarray(g[1:], dtype=float)
        coords = _exact_vertex(polytope, A, b, x)
        if coords is None:
            act = np.flatnonzero(np.abs(A @ x - b) <= 1e-7)
            sel = _independent_subset(A[act].tolist(), n)
            if sel is None:
                raise RuntimeError("could not certify a candidate vertex")
            rows = [int(act[k]) for k in sel]
            sol = _solve_square(A[rows].tolist(), b[rows].tolist())
            pt = PolytopePoint(tuple(sol), True)
            if not is_vertex(polytope, pt):
                raise RuntimeError("could not certify a candidate vertex")
            coords = pt.coords
        found.add(coords)
    return found


def _initial_tableau(polytope: RelaxedPolytope) -> IntTableau:
    """Slack basis of ``-a.f + s = -b`` over every non-box-lower inequality.

    Box-lower inequalities are the sign constraints of the f columns.  The
    all-zeros word satisfies every inequality, so the slack basis is
    feasible and its inverse is the identity, as the lexicographic ratio
    test requires.
    """
    n = polytope.n
    rows_idx = [r for r, q in enumerate(polytope.inequalities) if q.kind != BOX_LOWER]
    R = len(rows_idx)
    T = np.zeros((R, n + R + 1), dtype=np.int64)
    T[:, :n] = -polytope.A[rows_idx]
    T[np.arange(R), n + np.arange(R)] = 1
    T[:, -1] = -polytope.b[rows_idx]
    return IntTableau(T, [n + k for k in range(R)]), rows_idx


def _lex_leaving_row(tab: IntTableau, s: int, lex_cols: range) -> int | None:
    T = tab.T
    cand = [i for i in range(tab.n_rows) if T[i, s] > 0]
    if not cand:
        return None
    cols = [T.shape[1] - 1, *lex_cols]
    for c in cols:
        if len(cand) == 1:
            break
        best = cand[0]
        for i in cand[1:]:
            # T[i,c]/T[i,s] < T[best,c]/T[best,s]
            if T[i, c] * T[best, s] < T[best, c] * T[i, s]:
                best = i
        cand = [i for i in cand if T[i, c] * T[best, s] == T[best, c] * T[i, s]]
    if len(cand) != 1:
        raise RuntimeError("lexicographic ratio test did not resolve")
    return cand[0]


def _enumerate_by_pivoting(polytope: RelaxedPolytope, budget: int) -> set[tuple[Fraction, ...]]:
    """Depth-first walk over lexicographically feasible bases.

    Lexicographic feasibility is a symbolic right-hand-side perturbation,
    so the walk explores the graph of a simple polytope whose vertices
    map onto the vertices of P; that graph is connected, hence every
    vertex of P is reached.
    """
    n = polytope.n
    tab, _ = _initial_tableau(polytope)
    R = tab.n_rows
    lex_cols = range(n, n + R)

    def point():
        x = [Fraction(0)] * n
        den = tab.denom
        rhs = tab.T[:, -1]
        for i, bcol in enumerate(tab.basis):
            if bcol < n:
                x[bcol] = Fraction(int(rhs[i]), den)
        return tuple(x)

    def moves():
        nonbasic = sorted(set(range(n + R)) - set(tab.basis))
        out = []
        for s in nonbasic:
            r = _lex_leaving_row(tab, s, lex_cols)
            if r is not None:
                out.append((r, s))
        return out

    seen = {frozenset(tab.basis)}
    found = {point()}
    stack = [iter(moves())]
    path: list[tuple[int, int]] = []
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            if path:
                r, col = path.pop()
                tab.pivot(r, col)
            continue
        r, s = step
        leaving = tab.basis[r]
        tab.pivot(r, s)
        key = frozenset(tab.basis)
        if key in seen:
            tab.pivot(r, leaving)
            continue
        seen.add(key)
        if len(seen) > budget:
            raise BudgetExceeded(f"more than {budget} lexicographic bases")
        found.add(point())
        path.append((r, leaving))
        stack.append(iter(moves()))
    return found


def enumerate_vertices(
    polytope: RelaxedPolytope,
    method: str = "auto",
    max_n: int = 12,
    budget: int = 2_000_000,
) -> list[PolytopePoint]:
    """Every vertex of the (possibly restricted) polytope, exactly once.

    ``method="dd"`` (the default) runs double description and certifies
    each vertex in exact arithmetic.  ``"subsets"`` solves every n-subset
    of inequalities and ``"pivot"`` walks lexicographic bases of an
    unrestricted polytope; both are slow, fully exact cross-checks.
    Output is sorted by coordinates.
    """
    if polytope.n > max_n:
        raise BudgetExceeded(f"n = {polytope.n} exceeds vertex-enumeration budget {max_n}")
    if method == "auto":
        method = "dd"
    if method == "dd":
        pts = _enumerate_by_double_description(polytope, budget)
    elif method == "pivot":
        if polytope.tight:
            raise ValueError("pivot enumeration needs an unrestricted polytope")
        pts = _enumerate_by_pivoting(polytope, budget)
    elif method == "subsets":
        pts = _enumerate_by_subsets(polytope, budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [PolytopePoint(c, True) for c in sorted(pts)]


def vertices_to_json(polytope: RelaxedPolytope, vertices: Sequence[PolytopePoint]) -> str:
    payload = {
        "n": polytope.n,
        "legend": polytope.legend(),
        "vertices": [
            {
                "coords": v.to_json(),
                "integral": is_integral(v),
                "active_set": active_set(polytope, v),
                "profile": fractional_profile(polytope.code, v).to_json(),
            }
            for v in vertices
        ],
    }
    return json.dumps(payload, indent=1)
