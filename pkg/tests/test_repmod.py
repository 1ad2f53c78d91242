import itertools

import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

import oracles
from fusionclass import repmod
from fusionclass.catalog import lookup
from fusionclass.errors import ActionMismatch, FieldMismatch, QMismatch
from fusionclass.groups import automorphism_classes, sylow_subgroup
from fusionclass.linalg_fp import is_invertible
from fusionclass.repmod import (
    ACTION_CONVENTION,
    MatrixModuleFp,
    linearize,
    modules_isomorphic,
    out_sets_isomorphic,
    rep_set,
    rep_to_dict,
)

CORPUS = [("C2", "S3"), ("C3", "C6"), ("C3", "S3"), ("C2xC2", "S4"), ("C4", "D8"),
          ("C2xC2", "D8"), ("C3", "A4"), ("C2", "C2xC2"), ("C4", "Q8"), ("C3xC3", "C3xC3")]


def raw_rep_count(Q, G, injective):
    """|Hom(Q, G)/G| from raw tables: orbits of G-conjugation on brute-force homs."""
    gens = [tuple(g.images) for g in Q.generators]
    homs = oracles.brute_homs(oracles.elements(Q), gens, oracles.elements(G))
    if injective:
        homs = [f for f in homs if len(set(f.values())) == len(f)]
    keys = {tuple(sorted(f.items())) for f in homs}
    orbits = set()
    for k in keys:
        orbits.add(min(tuple((a, oracles.conj(g, b)) for a, b in k) for g in oracles.elements(G)))
    return len(orbits)


def test_rep_set_examples():
    assert len(rep_set(lookup("C2"), lookup("S3"))) == 2
    assert len(rep_set(lookup("C2"), lookup("S3"), True)) == 1
    assert len(rep_set(lookup("C3"), lookup("C6"), True)) == 2
    assert len(rep_set(lookup("C4"), lookup("S3"), True)) == 0


@pytest.mark.parametrize("q, g", CORPUS)
@pytest.mark.parametrize("inj", [False, True])
def test_rep_set_sizes_against_raw_orbits(q, g, inj):
    assert len(rep_set(lookup(q), lookup(g), inj)) == raw_rep_count(lookup(q), lookup(g), inj)


@pytest.mark.parametrize("q, g", CORPUS)
def test_action_well_defined_and_a_left_action(q, g):
    X = rep_set(lookup(q), lookup(g))
    aut = automorphism_classes(X.Q)
    # every automorphism acts like the chosen representative of its Out class
    for alpha in aut.aut:
        rep = aut.out[aut.out_index(alpha)]
        assert X.action_of(alpha) == X.action_of(rep)
    # inner automorphisms act trivially
    for beta in aut.inn:
        assert X.action_of(beta) == tuple(range(len(X)))
    # (a b).x == a.(b.x)
    for a, b in itertools.product(aut.aut[:6], repeat=2):
        ab = X.action_of(a.compose(b))
        pa, pb = X.action_of(a), X.action_of(b)
        assert ab == tuple(pa[pb[i]] for i in range(len(X)))
    for i in range(len(X)):
        assert X.act(aut.aut[-1], i) == X.action_of(aut.aut[-1])[i]


@pytest.mark.parametrize("q", ["C2", "C3", "C4", "C2xC2", "D8", "Q8", "C9", "C3xC3"])
@pytest.mark.parametrize("g", ["S3", "D10", "C6", "A4", "D12", "S4"])
def test_no_embedding_when_order_does_not_divide_sylow(q, g):
    Q, G = lookup(q), lookup(g)
    p = [r for r in (2, 3) if Q.order % r == 0][0]
    S = sylow_subgroup(G, p)
    if S.order % Q.order:
        assert linearize(rep_set(Q, G, True), p).dim == 0


def perm_module(p, perms):
    return MatrixModuleFp(p, len(perms[0]), [f"g{i}" for i in range(len(perms))], [tuple(x) for x in perms])


def test_swap_versus_trivial():
    swap, triv = perm_module(3, [(1, 0)]), perm_module(3, [(0, 1)])
    assert not modules_isomorphic(swap, triv)
    assert not modules_isomorphic(perm_module(2, [(1, 0)]), perm_module(2, [(0, 1)]))
    assert modules_isomorphic(swap, perm_module(3, [(1, 0)]))


def test_out_set_examples():
    swapped = rep_set(lookup("C3"), lookup("C6"), True)
    fixed = rep_set(lookup("C3"), lookup("S3"))
    assert len(swapped) == len(fixed) == 2
    assert list(swapped.out_action.values()) == [(1, 0)]
    assert list(fixed.out_action.values()) == [(0, 1)]
    assert not out_sets_isomorphic(swapped, fixed)
    assert out_sets_isomorphic(swapped, swapped)
    assert not out_sets_isomorphic(swapped, rep_set(lookup("C3"), lookup("S3"), True))
    for p in (2, 3):
        assert not modules_isomorphic(linearize(swapped, p), linearize(fixed, p))


def test_out_sets_imply_modules():
    hits = 0
    for q in ["C2", "C3", "C4", "C2xC2", "D8", "C3xC3"]:
        Q = lookup(q)
        p = 2 if Q.order % 2 == 0 else 3
        reps = [rep_set(Q, lookup(g), inj) for g in ["S3", "S4", "A4", "D8", "C6", "D12", "C3xC3"]
                for inj in (False, True)]
        for X, Y in itertools.combinations(reps, 2):
            if out_sets_isomorphic(X, Y):
                hits += 1
                assert modules_isomorphic(linearize(X, p), linearize(Y, p))
    assert hits > 10


def corpus_modules():
    mods = {}
    for q in ["C3", "C2xC2", "C4"]:
        Q = lookup(q)
        p = 2 if Q.order % 2 == 0 else 3
        for g in ["S3", "S4", "A4", "D8", "C6", "D12", "C3xC3", "A5"]:
            for inj in (False, True):
                mods.setdefault(q, []).append(linearize(rep_set(Q, lookup(g), inj), p))
    return mods


def test_equivalence_relation_on_corpus():
    for mods in corpus_modules().values():
        iso = {(i, j): modules_isomorphic(a, b) for (i, a), (j, b) in itertools.product(enumerate(mods), repeat=2)}
        n = len(mods)
        for i in range(n):
            assert iso[i, i]
            for j in range(n):
                assert iso[i, j] == iso[j, i]
                for k in range(n):
                    if iso[i, j] and iso[j, k]:
                        assert iso[i, k]


def conjugated(M, P, p):
    Pinv = np.round(np.linalg.inv(P) * round(np.linalg.det(P))).astype(np.int64)
    det_inv = pow(int(round(np.linalg.det(P))) % p, -1, p)
    Pinv = (Pinv * det_inv) % p
    assert ((P @ Pinv) % p == np.eye(len(P), dtype=np.int64)).all()
    return MatrixModuleFp.from_matrices(p, M.acting_generators, [(P @ A @ Pinv) % p for A in M.matrices],
                                        dim=M.dim)


@hsettings(max_examples=40, deadline=None)
@given(st.data())
def test_basis_permutation_invariance(data):
    # the dense intertwiner solve is O(dim^6); C3xC3 -> C3xC3 (dim 81) is left out
    q, g = data.draw(st.sampled_from(CORPUS[:-1]))
    Q = lookup(q)
    p = 2 if Q.order % 2 == 0 else 3
    M = linearize(rep_set(Q, lookup(g)), p)
    sigma = data.draw(st.permutations(range(M.dim)))
    P = np.zeros((M.dim, M.dim), dtype=np.int64)
    P[list(sigma), list(range(M.dim))] = 1
    N = conjugated(M, P, p)
    assert not N.is_permutation
    assert modules_isomorphic(M, N)
    relabelled = MatrixModuleFp(p, M.dim, M.acting_generators,
                                [tuple(sigma[x[sigma.index(i)]] for i in range(M.dim)) for x in M.perms])
    assert modules_isomorphic(M, relabelled)


def small_matrix(p, n):
    return st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n).map(
        lambda v: np.array(v, dtype=np.int64).reshape(n, n))


@hsettings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]).flatmap(
    lambda pn: st.tuples(st.just(pn[0]), st.lists(small_matrix(*pn), min_size=1, max_size=2),
                         st.lists(small_matrix(*pn), min_size=1, max_size=2), small_matrix(*pn),
                         st.booleans())))
def test_modules_isomorphic_against_exhaustive_search(case):
    p, ms, ns, P, conj = case
    ns = (ns * 2)[: len(ms)]
    M = MatrixModuleFp.from_matrices(p, [f"g{i}" for i in range(len(ms))], ms)
    if conj and is_invertible(P, p):
        N = conjugated(M, P, p)
    else:
        N = MatrixModuleFp.from_matrices(p, M.acting_generators, ns)
    assert modules_isomorphic(M, N) == oracles.brute_module_iso(M.matrices, N.matrices, p)


def test_fallback_paths(monkeypatch):
    # small intertwiner space, so the exhaustive stage is reachable
    X = rep_set(lookup("C2xC2"), lookup("D8"), True)
    M = linearize(X, 2)
    assert len(repmod.intertwiner_basis(M, M)) <= 20
    sigma = list(reversed(range(M.dim)))
    P = np.zeros((M.dim, M.dim), dtype=np.int64)
    P[sigma, list(range(M.dim))] = 1
    N = conjugated(M, P, 2)
    assert not N.is_permutation
    monkeypatch.setattr(repmod, "RANDOM_TRIES", 0)
    assert modules_isomorphic(M, N)
    monkeypatch.setattr(repmod, "EXTENSION_TRIES", 0)
    assert modules_isomorphic(M, N)
    bad = perm_module(2, [(1, 0)] * len(M.perms))
    assert not modules_isomorphic(perm_module(2, [(0, 1)] * len(M.perms)), bad)


def test_monte_carlo_limit_is_one_sided(monkeypatch):
    # with every randomized stage disabled and the exhaustive stage out of
    # reach, the answer degrades to False, never to a false positive
    X = rep_set(lookup("C2xC2"), lookup("S4"))
    M = linearize(X, 2)
    monkeypatch.setattr(repmod, "RANDOM_TRIES", 0)
    monkeypatch.setattr(repmod, "EXTENSION_TRIES", 0)
    monkeypatch.setattr(repmod, "EXHAUSTIVE_LIMIT", 1)
    P = np.eye(M.dim, dtype=np.int64)[::-1]
    N = conjugated(M, P, 2)
    assert not modules_isomorphic(M, N)
    monkeypatch.setattr(repmod, "RANDOM_TRIES", 32)
    assert modules_isomorphic(M, N)


def test_errors():
    with pytest.raises(ValueError):
        MatrixModuleFp.from_matrices(2, [], [])
    a = perm_module(2, [(1, 0)])
    with pytest.raises(FieldMismatch):
        modules_isomorphic(a, perm_module(3, [(1, 0)]))
    with pytest.raises(ActionMismatch):
        modules_isomorphic(a, MatrixModuleFp(2, 2, ["h"], [(1, 0)]))
    with pytest.raises(QMismatch):
        out_sets_isomorphic(rep_set(lookup("C2"), lookup("S3")), rep_set(lookup("C3"), lookup("S3")))
    with pytest.raises(ValueError):
        linearize(rep_set(lookup("C2"), lookup("S3")), 4)


def test_dump():
    d = rep_to_dict(rep_set(lookup("C3"), lookup("C6"), True), 3)
    assert d["action_convention"] == ACTION_CONVENTION
    assert d["out_order"] == 2
    assert len(d["classes"]) == 2
