"""Fraction-free simplex tableau shared by the exact LP solver and the
vertex enumerator.

Entries are integers; the true tableau is ``T / denom`` with ``denom > 0``
the absolute determinant of the current basis.  Pivots use the Bareiss
update, so every division is exact.  Storage starts as int64 and is
promoted to Python integers before any product could overflow.
"""
from __future__ import annotations

import numpy as np

_SAFE = 1 << 30


class IntTableau:
    """Rows ``T[i] = (coefficients..., rhs)`` with ``basis[i]`` the basic column."""

    def __init__(self, rows, basis, objectives=()):
        T = np.asarray(rows)
        if T.dtype != object:
            T = T.astype(np.int64)
            if T.size and np.abs(T).max() >= _SAFE:
                T = T.astype(object)
        self.T = T
        self.basis = list(basis)
        self.denom = 1
        # objective rows are kept as Python ints: scaled LLRs can be large
        self.objectives = [np.array([int(v) for v in row], dtype=object) for row in objectives]
        self.pivots = 0

    @property
    def n_rows(self) -> int:
        return self.T.shape[0]

    @property
    def n_cols(self) -> int:
        return self.T.shape[1] - 1

    def copy(self) -> "IntTableau":
        new = IntTableau.__new__(IntTableau)
        new.T = self.T.copy()
        new.basis = list(self.basis)
        new.denom = self.denom
        new.objectives = [o.copy() for o in self.objectives]
        new.pivots = self.pivots
        return new

    def _promote_if_needed(self):
        if self.T.dtype != object:
            big = max(int(np.abs(self.T).max(initial=0)), self.denom)
            if big >= _SAFE:
                self.T = self.T.astype(object)

    def pivot(self, r: int, s: int) -> None:
        self._promote_if_needed()
        T = self.T
        p = T[r, s]
        if p == 0:
            raise ZeroDivisionError("pivot on a zero entry")
        old = self.denom
        col = T[:, s].copy()
        col[r] = 0
        row = T[r].copy()
        T[:] = (T * p - np.outer(col, row)) // old
        T[r] = row
        for k, obj in enumerate(self.objectives):
            c = obj[s]
            self.objectives[k] = (obj * p - c * row.astype(object)) // old
        if p < 0:
            self.T = -T
            self.objectives = [-o for o in self.objectives]
            p = -p
        self.denom = int(p)
        self.basis[r] = s
        self.pivots += 1

    def drop_row(self, r: int) -> None:
        self.T = np.delete(self.T, r, axis=0)
        del self.basis[r]

    def drop_columns(self, cols) -> None:
        """Remove nonbasic columns (artificials after phase one)."""
        cols = sorted(cols)
        keep = [j for j in range(self.T.shape[1]) if j not in set(cols)]
        remap = {old: new for new, old in enumerate(keep)}
        self.T = self.T[:, keep]
        self.objectives = [o[keep] for o in self.objectives]
        self.basis = [remap[b] for b in self.basis]

    def basic_values(self):
        """Map basic column -> (numerator, denominator) of its value."""
        rhs = self.T[:, -1]
        return {b: (int(rhs[i]), self.denom) for i, b in enumerate(self.basis)}
