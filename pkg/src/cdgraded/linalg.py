"""Exact linear algebra over the rationals for sparse row vectors.

Rows are dicts column -> Fraction (or int).  ``Echelon`` keeps a fully
reduced row-echelon basis and answers rank / membership / reduction.
``rank_mod_p`` is a fast lower bound for the rational rank of an integer
matrix (rank over F_p never exceeds rank over Q).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

PRIME = 2_147_483_647  # 2^31 - 1


def primitive(row: dict) -> dict:
    """Scale a nonzero integer/rational row to coprime integers with positive leading entry."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {k: v // g for k, v in ints.items()}


class Echelon:
    """Reduced row-echelon basis of a growing subspace; pivots are leading (smallest) columns."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}  # pivot column -> row with row[pivot] == 1

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        # pivot rows vanish on every other pivot column, so one pass suffices
        r = {k: Fraction(v) for k, v in row.items() if v}
        for col in [k for k in r if k in self.pivots]:
            c = r.pop(col)
            for k, v in self.pivots[col].items():
                if k == col:
                    continue
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row: dict) -> bool:
        """Insert row; True if it was independent of the current span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for other in self.pivots.values():
            c = other.get(p)
            if c:
                for k, v in r.items():
                    nv = other.get(k, 0) - c * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self.pivots[p] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


def rank_exact(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def kernel(columns: list[dict], n: int) -> list[dict]:
    """Basis of {c in Q^n : sum_i c_i * row_i = 0} where row_i is the i-th vector of the map.

    ``columns`` lists the map's output coordinates as dicts i -> value (one dict per output
    coordinate); the kernel is the null space of that matrix, returned in reduced form.
    """
    e = Echelon()
    for col in columns:
        e.add(col)
    piv = e.pivots
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, row in piv.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        out.append(vec)
    return out


def solve(columns: list[dict], target: dict) -> dict | None:
    """Some x with sum_j x_j * columns[j] = target, or None.  Columns are sparse vectors."""
    # eliminate on the transposed system: rows are equations (coordinates)
    coords = sorted({k for c in columns for k in c} | set(target))
    n = len(columns)
    e = Echelon()
    # augmented rows over unknown indices 0..n-1 and rhs at column n
    for k in coords:
        row = {j: c[k] for j, c in enumerate(columns) if c.get(k)}
        if target.get(k):
            row[n] = Fraction(target[k])
        if row:
            e.add(row)
    if n in e.pivots:
        return None
    x = {}
    for p, row in e.pivots.items():
        rhs = row.get(n)
        if rhs:
            x[p] = rhs
    return x


def rank_mod_p(rows: list[dict], ncols: int, p: int = PRIME) -> int:
    """Rank over F_p of an integer matrix given as sparse rows (a lower bound for the rank over Q)."""
    if not rows:
        return 0
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            a[i, k] = int(v) % p
    rank = 0
    nrows = a.shape[0]
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, col].copy()
        idx = np.nonzero(below)[0]
        if idx.size:
            sub = a[rank + 1 + idx]
            sub = (sub - (below[idx, None] * a[rank][None, :]) % p) % p
            a[rank + 1 + idx] = sub
        rank += 1
    return rank
