"""Rank of integer matrices modulo a prime, vectorized with numpy."""
from __future__ import annotations

import numpy as np

# largest prime below 2**25: products of two residues fit comfortably in int64
PRIME = 33554393


def rank_mod_p(rows, p: int = PRIME) -> int:
    """Rank over GF(p) of a 2-d integer array (or list of rows)."""
    A = np.array(rows, dtype=np.int64)
    if A.size == 0:
        return 0
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    A %= p
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T.copy()
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        below = np.flatnonzero(A[r + 1:, c]) + r + 1
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        r += 1
    return r
