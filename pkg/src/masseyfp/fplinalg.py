"""Exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries kept in [0, p).  Pivoting is
deterministic (leftmost column first, topmost nonzero row), so outputs are
reproducible.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .magnus import is_prime

__all__ = ["as_fp", "rref", "rank", "solve", "nullspace", "in_span", "row_basis"]


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")


def as_fp(M, p: int) -> np.ndarray:
    """Copy of M as an int64 array reduced into [0, p)."""
    _check_prime(p)
    A = np.array(M, dtype=object)
    return np.asarray(A % p, dtype=np.int64)


def _as_matrix(M, p):
    A = as_fp(M, p)
    if A.ndim != 2:
        if A.size == 0:
            return A.reshape(0, 0)
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    return A


def rref(M, p: int):
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots, rank)``.

    >>> R, piv, rk = rref([[1, 2], [2, 4]], 5)
    >>> R.tolist(), piv, rk
    ([[1, 2], [0, 0]], [0], 1)
    """
    R = _as_matrix(M, p).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots, len(pivots)


def rank(M, p: int) -> int:
    return rref(M, p)[2]


def solve(M, b, p: int):
    """One solution x of M x = b over F_p, or None when inconsistent."""
    A = _as_matrix(M, p)
    bb = as_fp(b, p).reshape(-1)
    if A.shape[0] != bb.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape[0]} rows, rhs of length {bb.shape[0]}")
    cols = A.shape[1]
    R, pivots, _ = rref(np.hstack([A, bb[:, None]]), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = R[row, cols]
    return x


def nullspace(M, p: int) -> list[np.ndarray]:
    """Basis of {x : M x = 0}, one vector per free column."""
    A = _as_matrix(M, p)
    cols = A.shape[1]
    R, pivots, _ = rref(A, p)
    basis = []
    for free in (c for c in range(cols) if c not in set(pivots)):
        x = np.zeros(cols, dtype=np.int64)
        x[free] = 1
        for row, c in enumerate(pivots):
            x[c] = (-R[row, free]) % p
        basis.append(x)
    return basis


def row_basis(vectors: Sequence, p: int) -> list[np.ndarray]:
    """Echelonized basis (nonzero rows of the rref) of the span of vectors."""
    vecs = [as_fp(v, p).reshape(-1) for v in vectors]
    if not vecs:
        return []
    R, _, rk = rref(np.vstack(vecs), p)
    return [R[i].copy() for i in range(rk)]


def in_span(v, basis: Sequence, p: int):
    """Decide whether v lies in the span of basis.

    Returns ``(True, coefficients)`` or ``(False, None)``.
    """
    vv = as_fp(v, p).reshape(-1)
    if not len(basis):
        return (True, np.zeros(0, dtype=np.int64)) if not vv.any() else (False, None)
    B = np.vstack([as_fp(b, p).reshape(-1) for b in basis])
    if B.shape[1] != vv.shape[0]:
        raise ValueError(f"dimension mismatch: basis vectors of length {B.shape[1]}, v of length {vv.shape[0]}")
    x = solve(B.T, vv, p)
    if x is None:
        return False, None
    return True, x
