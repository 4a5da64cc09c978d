"""Vectorized fallback for the compiled row-reduction kernel.

Same contract as the Cython module: entries in [0, p), p small enough that
(p-1)**2 fits in signed int64.
"""

import numpy as np


def rref_mod(m, p):
    rows, cols = m.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        lead = int(m[r, c])
        if lead != 1:
            inv = pow(lead, p - 2, p)
            m[r, c:] = m[r, c:] * inv % p
        below = m[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows_hit = m[r + 1 + hit]
            m[r + 1 + hit] = (rows_hit - below[hit, None] * m[r][None, :]) % p
        pivots.append(c)
        r += 1
    for k in range(r - 1, 0, -1):
        c = pivots[k]
        above = m[:k, c]
        hit = np.nonzero(above)[0]
        if hit.size:
            rows_hit = m[hit]
            m[hit] = (rows_hit - above[hit, None] * m[k][None, :]) % p
    return pivots
