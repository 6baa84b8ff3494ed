"""Binary linear codes given by sparse parity-check matrices.

A code is stored as its factor graph: for every check the sorted list of
bits it touches, and for every bit the sorted list of checks touching it.
Everything here is pure and immutable; randomised constructors are pure
functions of their seed.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

BinaryWord = tuple[int, ...]


class AlistError(ValueError):
    """Malformed alist input. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


@dataclass(frozen=True)
class ParityCheckCode:
    n: int
    m: int
    check_neighborhoods: tuple[tuple[int, ...], ...]
    bit_neighborhoods: tuple[tuple[int, ...], ...] = field(repr=False)
    declared_dv: int | None = None
    declared_dc: int | None = None

    def __post_init__(self):
        if len(self.check_neighborhoods) != self.m:
            raise ValueError("check_neighborhoods must have m entries")
        if len(self.bit_neighborhoods) != self.n:
            raise ValueError("bit_neighborhoods must have n entries")
        for a, nbhd in enumerate(self.check_neighborhoods):
            if list(nbhd) != sorted(set(nbhd)):
                raise ValueError(f"check {a}: neighborhood must be sorted without repeats")
            if nbhd and not (0 <= nbhd[0] and nbhd[-1] < self.n):
                raise ValueError(f"check {a}: bit index out of range")
        if _transpose(self.check_neighborhoods, self.n) != self.bit_neighborhoods:
            raise ValueError("bit_neighborhoods is not the transpose of check_neighborhoods")
        if self.declared_dv is not None or self.declared_dc is not None:
            dv, dc = self.declared_dv, self.declared_dc
            if dv is None or dc is None:
                raise ValueError("declare both d_v and d_c or neither")
            if any(len(c) != dc for c in self.check_neighborhoods) or any(
                len(b) != dv for b in self.bit_neighborhoods
            ):
                raise ValueError("declared degrees do not match the graph")
            if self.n * dv != self.m * dc:
                raise ValueError("n*d_v must equal m*d_c")

    @classmethod
    def from_checks(
        cls,
        n: int,
        checks: Iterable[Iterable[int]],
        dv: int | None = None,
        dc: int | None = None,
    ) -> "ParityCheckCode":
        cn = []
        for a, c in enumerate(checks):
            c = list(c)
            if len(set(c)) != len(c):
                raise ValueError(f"check {a}: repeated bit index")
            if any(not 0 <= i < n for i in c):
                raise ValueError(f"check {a}: bit index outside [0, {n})")
            cn.append(tuple(sorted(c)))
        cn = tuple(cn)
        return cls(n, len(cn), cn, _transpose(cn, n), dv, dc)

    @classmethod
    def from_matrix(cls, H) -> "ParityCheckCode":
        H = np.asarray(H) % 2
        m, n = H.shape
        return cls.from_checks(n, (np.flatnonzero(H[a]).tolist() for a in range(m)))

    def to_matrix(self) -> np.ndarray:
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        for a, nbhd in enumerate(self.check_neighborhoods):
            H[a, list(nbhd)] = 1
        return H

    @property
    def check_degrees(self) -> list[int]:
        return [len(c) for c in self.check_neighborhoods]

    @property
    def bit_degrees(self) -> list[int]:
        return [len(b) for b in self.bit_neighborhoods]

    @property
    def design_rate(self) -> Fraction:
        """R = 1 - m/n, independent of the actual GF(2) rank of H."""
        return 1 - Fraction(self.m, self.n)

    @property
    def dc(self) -> int | None:
        """Common check degree, or None when checks differ in degree."""
        degs = set(self.check_degrees)
        return degs.pop() if len(degs) == 1 else None

    @property
    def dv(self) -> int | None:
        degs = set(self.bit_degrees)
        return degs.pop() if len(degs) == 1 else None

    @property
    def is_regular(self) -> bool:
        return self.dc is not None and self.dv is not None

    def edges(self) -> list[tuple[int, int]]:
        """(check, bit) pairs in check-major order."""
        return [(a, i) for a, c in enumerate(self.check_neighborhoods) for i in c]


def _transpose(checks: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    bits: list[list[int]] = [[] for _ in range(n)]
    for a, c in enumerate(checks):
        for i in c:
            bits[i].append(a)
    return tuple(tuple(b) for b in bits)


# ---------------------------------------------------------------- alist I/O


def load_alist(text: str) -> ParityCheckCode:
    lines = [(no, line.split()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks]
    pos = 0

    def take(count: int | None = None, what: str = "") -> tuple[int, list[int]]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise AlistError(last + 1, f"unexpected end of input, expected {what}")
        no, toks = lines[pos]
        pos += 1
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise AlistError(no, f"non-integer token in {what}") from None
        if count is not None and len(vals) != count:
            raise AlistError(no, f"expected {count} integers for {what}, got {len(vals)}")
        return no, vals

    no, (n, m) = take(2, "header 'n m'")
    if n <= 0 or m <= 0:
        raise AlistError(no, "n and m must be positive")
    no, (max_dv, max_dc) = take(2, "maximum degrees")
    if max_dv < 0 or max_dc < 0:
        raise AlistError(no, "maximum degrees must be non-negative")
    no_bd, bit_deg = take(n, "bit degrees")
    no_cd, chk_deg = take(m, "check degrees")
    if any(d < 0 or d > max_dv for d in bit_deg):
        raise AlistError(no_bd, "bit degree outside [0, max_bit_degree]")
    if any(d < 0 or d > max_dc for d in chk_deg):
        raise AlistError(no_cd, "check degree outside [0, max_check_degree]")

    def read_lists(count, degrees, limit, what):
        out = []
        for k in range(count):
            no, vals = take(None, f"{what} list {k + 1}")
            if len(vals) > limit:
                raise AlistError(no, f"{what} {k + 1}: more than {limit} entries")
            nz = [v for v in vals if v != 0]
            if vals[: len(nz)] != nz:
                raise AlistError(no, f"{what} {k + 1}: padding zeros must trail")
            hi = m if what == "bit" else n
            if any(v < 1 or v > hi for v in nz):
                raise AlistError(no, f"{what} {k + 1}: index out of range 1..{hi}")
            if len(nz) != degrees[k]:
                raise AlistError(
                    no, f"{what} {k + 1}: declared degree {degrees[k]} but {len(nz)} entries"
                )
            if len(set(nz)) != len(nz):
                raise AlistError(no, f"{what} {k + 1}: repeated index")
            out.append((no, [v - 1 for v in nz]))
        return out

    bit_lists = read_lists(n, bit_deg, max_dv, "bit")
    check_lists = read_lists(m, chk_deg, max_dc, "check")
    if pos != len(lines):
        raise AlistError(lines[pos][0], "trailing data after check lists")

    checks = [sorted(c) for _, c in check_lists]
    code = ParityCheckCode.from_checks(n, checks)
    for i, (no, lst) in enumerate(bit_lists):
        if sorted(lst) != list(code.bit_neighborhoods[i]):
            raise AlistError(no, f"bit {i + 1}: list disagrees with the check lists")
    return code


def save_alist(code: ParityCheckCode) -> str:
    if any(d == 0 for d in code.check_degrees):
        raise ValueError("cannot serialise a code with an empty check")
    max_dv = max(code.bit_degrees)
    max_dc = max(code.check_degrees)

    def row(vals, width):
        vals = [v + 1 for v in vals] + [0] * (width - len(vals))
        return " ".join(map(str, vals))

    out = [
        f"{code.n} {code.m}",
        f"{max_dv} {max_dc}",
        " ".join(map(str, code.bit_degrees)),
        " ".join(map(str, code.check_degrees)),
    ]
    out += [row(b, max_dv) for b in code.bit_neighborhoods]
    out += [row(c, max_dc) for c in code.check_neighborhoods]
    return "\n".join(out) + "\n"


# ------------------------------------------------------------- constructors


def random_regular_code(
    n: int, dv: int, dc: int, seed: int, max_attempts: int = 1000
) -> ParityCheckCode:
    """(d_v, d_c)-regular code from the configuration model.

    Bit sockets are matched to a uniformly permuted list of check sockets;
    a matching that produces a repeated edge is thrown away and redrawn.
    """
    if n <= 0 or dv <= 0 or dc <= 0:
        raise ValueError("n, d_v and d_c must be positive")
    if (n * dv) % dc:
        raise ValueError(f"n*d_v = {n * dv} is not divisible by d_c = {dc}")
    m = n * dv // dc
    if dc > n or dv > m:
        raise ValueError("degrees too large for a simple graph")
    rng = np.random.Generator(np.random.PCG64(seed))
    bit_sockets = np.repeat(np.arange(n), dv)
    check_sockets = np.repeat(np.arange(m), dc)
    for _ in range(max_attempts):
        perm = rng.permutation(check_sockets)
        pairs = perm.astype(np.int64) * n + bit_sockets
        if np.unique(pairs).size == pairs.size:
            checks: list[list[int]] = [[] for _ in range(m)]
            for a, i in zip(perm.tolist(), bit_sockets.tolist()):
                checks[a].append(i)
            return ParityCheckCode.from_checks(n, checks, dv, dc)
    raise RuntimeError(f"no simple ({dv},{dc}) graph after {max_attempts} attempts")


def tanner_code(p: int = 31, a: int = 2, b: int = 5, rows: int = 3, cols: int = 5) -> ParityCheckCode:
    """Tanner's group-structured quasi-cyclic code, [155, 64] by default.

    Block (i, j) of the parity-check matrix is the p x p circulant
    permutation shifting by b**i * a**j mod p.
    """
    checks = []
    for i in range(rows):
        for r in range(p):
            row = []
            for j in range(cols):
                shift = pow(b, i, p) * pow(a, j, p) % p
                row.append(j * p + (r + shift) % p)
            checks.append(row)
    return ParityCheckCode.from_checks(p * cols, checks, rows, cols)


def hamming_code(r: int = 3) -> ParityCheckCode:
    """Hamming code whose check matrix lists every nonzero r-bit column."""
    n = 2**r - 1
    checks = [[j - 1 for j in range(1, n + 1) if (j >> a) & 1] for a in range(r)]
    return ParityCheckCode.from_checks(n, checks)


# ------------------------------------------------------------ GF(2) algebra


def _row_masks(code: ParityCheckCode) -> list[int]:
    return [sum(1 << i for i in c) for c in code.check_neighborhoods]


def _rref(rows: list[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of bitmask rows; returns (rows, pivot columns)."""
    rows = [r for r in rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(n):
        bit = 1 << col
        idx = next((k for k, r in enumerate(rows) if r & bit), None)
        if idx is None:
            continue
        prow = rows.pop(idx)
        rows = [r ^ prow if r & bit else r for r in rows]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col)
    return out, pivots


def gf2_rank(code: ParityCheckCode) -> int:
    return len(_rref(_row_masks(code), code.n)[1])


def gf2_nullspace_basis(code: ParityCheckCode) -> list[BinaryWord]:
    rows, pivots = _rref(_row_masks(code), code.n)
    pivot_set = set(pivots)
    basis = []
    for free in range(code.n):
        if free in pivot_set:
            continue
        word = [0] * code.n
        word[free] = 1
        for r, p in zip(rows, pivots):
            if (r >> free) & 1:
                word[p] = 1
        basis.append(tuple(word))
    return basis


def is_codeword(code: ParityCheckCode, word: Sequence[int]) -> bool:
    if len(word) != code.n:
        raise ValueError(f"word has length {len(word)}, code has n = {code.n}")
    return all(sum(word[i] for i in c) % 2 == 0 for c in code.check_neighborhoods)


def enumerate_codewords(code: ParityCheckCode, max_dimension: int = 20) -> list[BinaryWord]:
    basis = gf2_nullspace_basis(code)
    if len(basis) > max_dimension:
        raise BudgetExceeded(f"dimension {len(basis)} exceeds budget {max_dimension}")
    masks = [sum(b << i for i, b in enumerate(w)) for w in basis]
    words = set()
    for coeffs in itertools.product((0, 1), repeat=len(masks)):
        acc = 0
        for c, mk in zip(coeffs, masks):
            if c:
                acc ^= mk
        words.add(tuple((acc >> i) & 1 for i in range(code.n)))
    return sorted(words)


def random_codeword(code: ParityCheckCode, rng: np.random.Generator) -> BinaryWord:
    basis = np.array(gf2_nullspace_basis(code), dtype=np.uint8).reshape(-1, code.n)
    coeffs = rng.integers(0, 2, size=basis.shape[0], dtype=np.uint8)
    return tuple(int(v) for v in (coeffs @ basis) % 2)


# ---------------------------------------------------------------- expansion


@dataclass(frozen=True)
class ExpansionCertificate:
    """Outcome of an exhaustive (alpha, delta) expansion check.

    ``status`` is ``"certified"``, ``"violated"`` (``witness`` holds a
    subset with too few neighbours) or ``"budget_exceeded"`` (nothing was
    checked; never read as a pass).
    """

    alpha: Fraction
    delta: Fraction
    status: str
    max_subset_size: int
    subsets_checked: int
    witness: tuple[int, ...] | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def neighborhood(code: ParityCheckCode, subset: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for i in subset:
        out.update(code.bit_neighborhoods[i])
    return out


def has_unique_neighbor(code: ParityCheckCode, subset: Iterable[int]) -> bool:
    counts: dict[int, int] = {}
    for i in subset:
        for a in code.bit_neighborhoods[i]:
            counts[a] = counts.get(a, 0) + 1
    return any(v == 1 for v in counts.values())


def check_expansion(
    code: ParityCheckCode,
    alpha,
    delta,
    budget: int = 10**7,
) -> ExpansionCertificate:
    dv = code.dv
    if dv is None:
        raise ValueError("expansion is defined for bit-regular codes only")
    alpha, delta = Fraction(alpha), Fraction(delta)
    if not (0 < alpha <= 1 and 0 < delta <= 1):
        raise ValueError("alpha and delta must lie in (0, 1]")
    kmax = math.floor(alpha * code.n)
    total = sum(math.comb(code.n, s) for s in range(1, kmax + 1))
    if total > budget:
        return ExpansionCertificate(alpha, delta, "budget_exceeded", kmax, 0)

    masks = [sum(1 << a for a in b) for b in code.bit_neighborhoods]
    checked = 0
    for size in range(1, kmax + 1):
        need = delta * dv * size
        for subset in itertools.combinations(range(code.n), size):
            acc = 0
            for i in subset:
                acc |= masks[i]
            checked += 1
            if acc.bit_count() < need:
                return ExpansionCertificate(alpha, delta, "violated", kmax, checked, subset)
    return ExpansionCertificate(alpha, delta, "certified", kmax, checked)
