"""Dense linear algebra over the prime field F_p on int64 numpy arrays."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def is_invertible(M: np.ndarray, p: int) -> bool:
    n = M.shape[0]
    return M.shape == (n, n) and rank(M, p) == n


def nullspace(M: np.ndarray, p: int) -> list[np.ndarray]:
    """A basis of ``{v : M v = 0}`` mod p."""
    cols = M.shape[1]
    if M.shape[0] == 0:
        return [np.eye(cols, dtype=np.int64)[i] for i in range(cols)]
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return basis


@lru_cache(maxsize=None)
def irreducible_polynomial(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial (coefficients high to low)."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_irreducible_p

    for n in range(p ** degree):
        tail = []
        for _ in range(degree):
            tail.append(n % p)
            n //= p
        f = [1] + tail[::-1]
        if gf_irreducible_p(f, p, ZZ):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


def companion(poly: tuple[int, ...], p: int) -> np.ndarray:
    """Matrix of multiplication by the root in the basis 1, a, a^2, ..."""
    e = len(poly) - 1
    C = np.zeros((e, e), dtype=np.int64)
    for i in range(1, e):
        C[i, i - 1] = 1
    # a^e = -(c_{e-1} a^{e-1} + ... + c_0)
    for i in range(e):
        C[i, e - 1] = (-poly[e - i]) % p
    return C
