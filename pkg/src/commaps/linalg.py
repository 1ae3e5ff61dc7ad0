"""Exact sparse row reduction over a field.

Rows are dicts ``column -> nonzero value``.  :class:`RowReducer` keeps its
rows in reduced row echelon form with the leftmost nonzero entry of each
row as pivot.  That form is unique for a given row space, so the outputs
(rank, nullspace basis, solutions) do not depend on insertion order.
"""

from __future__ import annotations

from .errors import NotAField
from .ring import Ring


class RowReducer:
    def __init__(self, ring: Ring, ncols: int):
        if not ring.is_field:
            raise NotAField(f"row reduction needs a field, got {ring.name}")
        self.ring = ring
        self.ncols = ncols
        self.rows = {}  # pivot column -> row; row[pivot] == 1
        self._occ = {}  # column -> set of pivot columns whose row contains it

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` after eliminating every pivot column."""
        ring = self.ring
        sub, mul = ring.sub, ring.mul
        r = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if not a:
                continue
            for k, v in self.rows[c].items():
                w = sub(r[k], mul(a, v)) if k in r else ring.neg(mul(a, v))
                if w == 0:
                    r.pop(k, None)
                else:
                    r[k] = w
        return r

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        ring = self.ring
        c = min(r)
        inv = ring.inv(r[c])
        r = {k: ring.mul(inv, v) for k, v in r.items()}
        sub, mul = ring.sub, ring.mul
        rows, occ = self.rows, self._occ
        # clear column c from the rows that contain it
        for p in list(occ.get(c, ())):
            prow = rows[p]
            a = prow[c]
            for k, v in r.items():
                w = sub(prow[k], mul(a, v)) if k in prow else ring.neg(mul(a, v))
                if w == 0:
                    if k in prow:
                        del prow[k]
                        occ[k].discard(p)
                else:
                    if k not in prow:
                        occ.setdefault(k, set()).add(p)
                    prow[k] = w
        occ.pop(c, None)
        rows[c] = r
        for k in r:
            if k != c:
                occ.setdefault(k, set()).add(c)
        return True

    def extend(self, rows) -> "RowReducer":
        for row in rows:
            self.add(row)
        return self

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def free_columns(self):
        return [c for c in range(self.ncols) if c not in self.rows]

    def nullspace(self) -> list:
        """Basis of {x : row . x = 0 for all rows}, one vector per free column, ascending."""
        ring = self.ring
        basis = []
        for f in self.free_columns():
            v = {f: ring.one}
            for p in self._occ.get(f, ()):
                v[p] = ring.neg(self.rows[p][f])
            basis.append(dict(sorted(v.items())))
        return basis

    def solution(self, rhs_col: int):
        """Solve with column ``rhs_col`` as the augmented right-hand side.

        Rows must have been inserted as ``[A | b]``.  Returns a dict of the
        pivot unknowns (free unknowns are 0), or None if inconsistent.
        """
        if rhs_col in self.rows:
            return None
        return {p: row[rhs_col] for p, row in self.rows.items() if rhs_col in row}


def rank(ring: Ring, ncols: int, rows) -> int:
    return RowReducer(ring, ncols).extend(rows).rank


def nullspace(ring: Ring, ncols: int, rows) -> list:
    return RowReducer(ring, ncols).extend(rows).nullspace()
