import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from fusionclass import linalg_fp


def matrices(p):
    return st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def reference_rank(rows, p):
    K = GF(p)
    return DomainMatrix([[K(x) for x in row] for row in rows], (len(rows), len(rows[0])), K).rank()


@hsettings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rank_and_nullspace(case):
    p, rows = case
    M = np.array(rows, dtype=np.int64)
    r = linalg_fp.rank(M, p)
    assert r == reference_rank(rows, p)
    null = linalg_fp.nullspace(M, p)
    assert len(null) == M.shape[1] - r
    for v in null:
        assert not ((M @ v) % p).any()
    R, pivots = linalg_fp.rref(M, p)
    for i, c in enumerate(pivots):
        assert R[i, c] == 1 and (R[:, c] % p).sum() == 1


def test_invertible():
    assert linalg_fp.is_invertible(np.array([[1, 1], [0, 1]]), 2)
    assert not linalg_fp.is_invertible(np.array([[1, 1], [1, 1]]), 2)
    assert not linalg_fp.is_invertible(np.array([[1, 2]]), 3)
    assert linalg_fp.rank(np.zeros((0, 3), dtype=np.int64), 3) == 0


@pytest.mark.parametrize("p, e", [(2, 2), (2, 7), (3, 4), (5, 3)])
def test_companion_of_irreducible_generates_a_field(p, e):
    f = linalg_fp.irreducible_polynomial(p, e)
    assert len(f) == e + 1 and f[0] == 1
    C = linalg_fp.companion(f, p)
    # the root has multiplicative order dividing p^e - 1 and C is invertible
    P = np.eye(e, dtype=np.int64)
    for _ in range(p ** e - 1):
        P = (P @ C) % p
    assert (P == np.eye(e, dtype=np.int64)).all()
    assert linalg_fp.is_invertible(C, p)
    # every nonzero polynomial in C is invertible, checked on a sample
    powers = [np.linalg.matrix_power(C, k) % p for k in range(e)]
    for coeffs in [(1,) * e, (0,) * (e - 1) + (1,), tuple(range(e))]:
        if any(c % p for c in coeffs):
            T = sum(c * Pk for c, Pk in zip(coeffs, powers)) % p
            assert linalg_fp.is_invertible(T, p)
