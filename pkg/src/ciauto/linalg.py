"""Dense linear algebra over a prime field F_q with numpy int64 arrays.

q must stay below 2**31 so that products of two residues fit in int64.
"""

from __future__ import annotations

import numpy as np

_QMAX = 2**31


def _check_q(q: int) -> None:
    if not 2 <= q < _QMAX:
        raise ValueError(f"modulus {q} out of range for int64 elimination")


def rref(M, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod q and the pivot columns."""
    _check_q(q)
    A = np.array(M, dtype=np.int64) % q
    if A.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), q - 2, q)
        A[r] = (A[r] * inv) % q
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % q
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, q: int) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref(A, q)[1])


def nullspace(M, q: int, ncols: int | None = None) -> np.ndarray:
    """Basis of {x : M x = 0} as the rows of the returned array."""
    A = np.asarray(M, dtype=np.int64)
    if A.size == 0:
        k = ncols if ncols is not None else (A.shape[1] if A.ndim == 2 else 0)
        return np.eye(k, dtype=np.int64)
    R, piv = rref(A, q)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = (-R[row, f]) % q
    return basis


def solve(M, b, q: int) -> np.ndarray | None:
    """One solution x of M x = b mod q, or None."""
    A = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([A, b])
    R, piv = rref(aug, q)
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[pc] = R[row, n]
    return x


def det_nonzero(M, q: int) -> bool:
    A = np.asarray(M)
    return A.shape[0] == A.shape[1] and rank(A, q) == A.shape[0]


def inverse(M, q: int) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    k = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(k, dtype=np.int64)]), q)
    if piv[:k] != list(range(k)):
        raise ValueError("matrix is singular")
    return R[:, k:]


def det(M, q: int) -> int:
    """Determinant mod q by elimination."""
    A = np.array(M, dtype=np.int64) % q
    k = A.shape[0]
    out = 1
    for c in range(k):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            out = -out
        out = out * int(A[c, c]) % q
        inv = pow(int(A[c, c]), q - 2, q)
        below = A[c + 1 :, c] * inv % q
        A[c + 1 :] = (A[c + 1 :] - np.outer(below, A[c])) % q
    return out % q


def small_rank(rows: list[list[int]], q: int) -> int:
    """Rank of a tiny matrix given as Python lists (faster than numpy here)."""
    A = [[x % q for x in r] for r in rows]
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], q - 2, q)
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c] * inv % q
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r
