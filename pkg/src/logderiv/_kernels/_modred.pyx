# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernel mod p on C-contiguous int64 buffers.

Entries must lie in [0, p) with p <= 3037000499 so every product fits in a
signed 64-bit integer.
"""


def rref_mod(long long[:, ::1] m, long long p):
    """In-place reduced row echelon form mod p; returns the pivot column list."""
    cdef Py_ssize_t rows = m.shape[0]
    cdef Py_ssize_t cols = m.shape[1]
    cdef Py_ssize_t r = 0
    cdef Py_ssize_t i, j, c, piv, k
    cdef long long f, inv, v
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                v = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = v
        if m[r, c] != 1:
            inv = pow(m[r, c], p - 2, p)
            for j in range(c, cols):
                if m[r, j] != 0:
                    m[r, j] = (m[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                m[i, c] = 0
                for j in range(c + 1, cols):
                    if m[r, j] != 0:
                        v = (m[i, j] - f * m[r, j]) % p
                        if v < 0:
                            v += p
                        m[i, j] = v
        pivots.append(c)
        r += 1
    for k in range(r - 1, 0, -1):
        c = pivots[k]
        for i in range(k):
            f = m[i, c]
            if f != 0:
                m[i, c] = 0
                for j in range(c + 1, cols):
                    if m[k, j] != 0:
                        v = (m[i, j] - f * m[k, j]) % p
                        if v < 0:
                            v += p
                        m[i, j] = v
    return pivots
