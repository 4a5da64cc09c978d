"""Mod-p linear algebra kernels: compiled core with a vectorized fallback.

The compiled extension is selected at import when available; setting
LOGDERIV_FORCE_FALLBACK=1 in the environment forces the fallback, which is
what the kernel benchmark uses to compare the two.
"""

import os

import numpy as np

if os.environ.get("LOGDERIV_FORCE_FALLBACK") == "1":
    from . import _modred_py as _impl

    HAVE_COMPILED = False
else:
    try:
        from . import _modred as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        from . import _modred_py as _impl

        HAVE_COMPILED = False

# floor(sqrt(2**63 - 1)): largest modulus whose products stay in signed int64
MAX_PRIME = 3037000499


def _check(mat, p):
    if not (2**31 <= p <= MAX_PRIME):
        raise ValueError(f"modulus must lie in [2**31, {MAX_PRIME}], got {p}")
    if mat.dtype != np.int64 or mat.ndim != 2 or not mat.flags.c_contiguous:
        raise ValueError("matrix must be a C-contiguous 2-d int64 array")


def rref_mod(mat, p):
    """In-place RREF mod p; returns (rank, pivot column list)."""
    _check(mat, p)
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0, []
    pivots = _impl.rref_mod(mat, p)
    return len(pivots), list(pivots)


def rank_mod(mat, p):
    rank, _ = rref_mod(mat.copy(), p)
    return rank


def kernel_basis_mod(mat, p):
    """Right-kernel basis mod p, one vector per row, identity on free columns.

    Destroys `mat`.  The returned matrix K satisfies: for any u in the row
    span of K, its coordinates with respect to K are u[free_columns].
    """
    cols = mat.shape[1]
    rank, pivots = rref_mod(mat, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if rank:
            K[:, pivots] = (-mat[:rank][:, free].T) % p
    return K, free


def matmul_mod(A, B, p):
    """Exact (A @ B) % p for int64 arrays with entries in [0, p).

    Splits A into 16-bit halves and accumulates float64 BLAS products over
    inner-dimension chunks small enough to stay exactly representable.
    """
    _check(A, p)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[1] == 0:
        return out
    Ah = (A >> 16).astype(np.float64)
    Al = (A & 0xFFFF).astype(np.float64)
    chunk = 32
    for start in range(0, A.shape[1], chunk):
        sl = slice(start, start + chunk)
        b = B[sl].astype(np.float64)
        hi = np.rint(Ah[:, sl] @ b).astype(np.int64) % p
        lo = np.rint(Al[:, sl] @ b).astype(np.int64) % p
        out += ((hi << 16) + lo) % p
        out %= p
    return out
