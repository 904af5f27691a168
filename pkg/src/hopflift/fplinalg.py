"""Dense Gaussian elimination over F_p with numpy int64 arrays."""

import numpy as np


def _as_array(M, p):
    return np.array(M, dtype=np.int64).reshape(np.shape(M)) % p


def rref(M, p):
    """Reduced row echelon form and pivot columns."""
    A = _as_array(M, p).copy()
    if A.ndim != 2 or A.size == 0:
        return A, []
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p):
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(M, p):
    """Basis (list of int vectors) of {v : M v = 0}."""
    A = np.asarray(M)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return [np.eye(ncols, dtype=np.int64)[i] for i in range(ncols)]
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return basis


def in_column_space(M, v, p):
    A = np.asarray(M, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64).reshape(-1, 1)
    if A.size == 0:
        return not np.any(v % p)
    return rank(np.hstack([A, v]), p) == rank(A, p)


def matmul(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p
