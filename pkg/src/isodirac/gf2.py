"""Small dense linear algebra over GF(2) on uint8 numpy arrays."""
from __future__ import annotations

import numpy as np


def row_reduce(a):
    """Reduced row echelon form of ``a`` mod 2; returns (matrix, pivot columns)."""
    m = np.array(a, dtype=np.uint8) & 1
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(row_reduce(a)[1])


def solve(a, b):
    """One solution x of a @ x = b (mod 2), or None if inconsistent."""
    a = np.array(a, dtype=np.uint8) & 1
    b = np.array(b, dtype=np.uint8).reshape(-1, 1) & 1
    red, pivots = row_reduce(np.hstack([a, b]))
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for r, c in enumerate(pivots):
        x[c] = red[r, n]
    return x
