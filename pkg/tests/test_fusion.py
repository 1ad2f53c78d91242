import random

import pytest

import oracles
from fusionclass.catalog import lookup
from fusionclass.errors import AmbientMismatch, BaseMismatch
from fusionclass.fusion import (
    FusionSystem,
    build_fusion_system,
    check_fusion_axioms,
    find_fusion_isomorphism,
    fusion_hom_set,
    fusion_to_dict,
    is_fusion_isomorphism,
    iter_fusion_isomorphisms,
)
from fusionclass.groups import Homomorphism, conjugation_map, sylow_subgroup

CASES = [("S3", 2), ("S3", 3), ("D8", 2), ("S4", 2), ("S4", 3), ("A4", 2), ("A5", 2),
         ("A5", 3), ("D12", 2), ("D10", 5), ("Q8", 2), ("C6", 3), ("S5", 2)]


def raw_hom_set(G, P, Q):
    """Conjugation maps P -> Q as dicts of image tuples, computed on raw tuples."""
    A = P.group
    g_el = oracles.elements(G)
    p_el = [tuple(A.perm(x).images) for x in P.elements]
    q_set = {tuple(A.perm(x).images) for x in Q.elements}
    out = set()
    for g in g_el:
        img = tuple(oracles.conj(g, x) for x in p_el)
        if set(img) <= q_set:
            out.add(tuple(zip(p_el, img)))
    return out


def as_raw(phi):
    A = phi.source.group
    return tuple((tuple(A.perm(x).images), tuple(A.perm(phi(x)).images)) for x in phi.source.elements)


def test_hom_counts_examples():
    F = build_fusion_system(lookup("S3"), 3)
    S = F.base
    assert len(F.hom(S, S)) == 2
    assert len(fusion_hom_set(lookup("S3"), S, S)) == 2
    F2 = build_fusion_system(lookup("C6"), 3)
    assert len(F2.hom(F2.base, F2.base)) == 1


@pytest.mark.parametrize("name, p", [("S3", 3), ("S4", 2), ("A4", 2), ("D12", 2), ("A5", 2)])
def test_fusion_hom_sets_against_raw_conjugation(name, p):
    G = lookup(name)
    F = build_fusion_system(G, p)
    for P in F.objects:
        for Q in F.objects:
            ours = {as_raw(phi) for phi in fusion_hom_set(G, P, Q)}
            assert ours == raw_hom_set(G, P, Q)
            assert {phi.images for phi in F.hom(P, Q)} == {phi.images for phi in fusion_hom_set(G, P, Q)}


@pytest.mark.parametrize("name, p, objects, morphisms", [
    ("S4", 2, 10, 79), ("D8", 2, 10, 55), ("S3", 3, 2, 4), ("C6", 3, 2, 3),
])
def test_system_sizes(name, p, objects, morphisms):
    F = build_fusion_system(lookup(name), p)
    assert len(F.objects) == objects
    assert F.morphism_count() == morphisms


@pytest.mark.parametrize("name, p", CASES)
def test_axioms_hold(name, p):
    assert check_fusion_axioms(build_fusion_system(lookup(name), p)) == []


def test_axiom_checker_detects_damage():
    F = build_fusion_system(lookup("S4"), 2)
    S = F.base
    i = F.index_of(S)
    table = dict(F.hom_table)
    table[i, i] = frozenset(sorted(table[i, i])[1:])
    broken = FusionSystem(F.prime, F.ambient, F.base, F.objects, table)
    assert check_fusion_axioms(broken)


@pytest.mark.parametrize("name, p", CASES)
def test_system_of_sylow_matches_hom_sets(name, p):
    S = sylow_subgroup(lookup(name), p)
    F = build_fusion_system(S, p, base=S)
    for P in F.objects[::2]:
        for Q in F.objects:
            assert {phi.images for phi in F.hom(P, Q)} == {phi.images for phi in fusion_hom_set(S, P, Q)}


@pytest.mark.parametrize("name, p", CASES)
def test_inner_automorphisms_are_fusion_isomorphisms(name, p):
    F = build_fusion_system(lookup(name), p)
    S = F.base
    for s in S.elements:
        assert is_fusion_isomorphism(conjugation_map(s, S, S), F, F)


@pytest.mark.parametrize("a, b, p, expected", [
    ("S3", "C2", 2, True), ("C6", "C3", 3, True), ("S4", "S5", 2, True), ("A4", "A5", 2, True),
    ("S3", "C3", 3, False), ("S3", "C6", 3, False), ("D8", "S4", 2, False), ("A4", "C2xC2", 2, False),
    ("Q8", "D8", 2, False), ("S3", "S4", 3, True), ("D12", "C2xC2", 2, True),
])
def test_find_fusion_isomorphism_symmetric(a, b, p, expected):
    F1, F2 = build_fusion_system(lookup(a), p), build_fusion_system(lookup(b), p)
    fwd, back = find_fusion_isomorphism(F1, F2), find_fusion_isomorphism(F2, F1)
    assert (fwd is not None) == (back is not None) == expected
    if fwd is not None:
        assert is_fusion_isomorphism(fwd.gamma.inverse(), F2, F1)


def test_number_of_fusion_isomorphisms():
    # every automorphism of C3 preserves F_{C3}(S3) since both already lie in it
    F = build_fusion_system(lookup("S3"), 3)
    assert len(list(iter_fusion_isomorphisms(F, F))) == 2
    # for C6 only the identity lies in F, but transport of the trivial system works for all
    F = build_fusion_system(lookup("C6"), 3)
    assert len(list(iter_fusion_isomorphisms(F, F))) == 2


def test_errors():
    S3, S4 = lookup("S3"), lookup("S4")
    P = sylow_subgroup(S3, 2)
    Q = sylow_subgroup(S4, 2)
    with pytest.raises(AmbientMismatch):
        fusion_hom_set(S3, P, Q)
    with pytest.raises(AmbientMismatch):
        build_fusion_system(S3, 2, base=Q)
    F2, F3 = build_fusion_system(S3, 2), build_fusion_system(S3, 3)
    with pytest.raises(BaseMismatch):
        find_fusion_isomorphism(F2, F3)
    ident = Homomorphism(F3.base, F3.base, tuple(F3.base.elements))
    with pytest.raises(BaseMismatch):
        is_fusion_isomorphism(ident, F2, F2)


def test_explicit_base_gives_isomorphic_system():
    S4 = lookup("S4")
    F = build_fusion_system(S4, 2)
    for seed in range(5):
        S = sylow_subgroup(S4, 2, random.Random(seed))
        F2 = build_fusion_system(S4, 2, base=S)
        assert F2.base == S
        assert check_fusion_axioms(F2) == []
        assert find_fusion_isomorphism(F2, F) is not None


def test_dump_shape():
    d = fusion_to_dict(build_fusion_system(lookup("S3"), 3))
    assert d["prime"] == 3 and d["base_order"] == 3
    assert [o["order"] for o in d["objects"]] == [1, 3]
    top = [pr for pr in d["pairs"] if pr["source"] == 1 and pr["target"] == 1][0]
    assert top["count"] == 2
    assert d["morphism_count"] == sum(pr["count"] for pr in d["pairs"])
