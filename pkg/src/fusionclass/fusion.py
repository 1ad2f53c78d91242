"""Fusion systems F_S(G) of finite groups and their isomorphisms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import AmbientMismatch, BaseMismatch
from .groups import (
    GroupLike,
    Homomorphism,
    Subgroup,
    all_subgroups,
    as_subgroup,
    iter_isomorphisms,
    sylow_subgroup,
)

Table = tuple[int, ...]


def _conjugation_tables(X: Subgroup, P: Subgroup) -> set[Table]:
    """Distinct tables of ``c_g`` restricted to ``P`` for ``g`` in ``X``."""
    A = X.group
    return {tuple(A.conj_map(g)[x] for x in P.elements) for g in X.elements}


def fusion_hom_set(G: GroupLike, P: Subgroup, Q: Subgroup) -> set[Homomorphism]:
    """{c_g|_P : g in G, g P g^-1 <= Q}, deduplicated by table."""
    X = as_subgroup(G)
    if P.group is not X.group or Q.group is not X.group:
        raise AmbientMismatch("P and Q must be subgroups of the ambient group of G")
    return {Homomorphism(P, Q, t, "conjugation")
            for t in _conjugation_tables(X, P) if Q.member_set.issuperset(t)}


@dataclass(eq=False)
class FusionSystem:
    prime: int
    ambient: Subgroup
    base: Subgroup
    objects: list[Subgroup]
    hom_table: dict[tuple[int, int], frozenset[Table]]

    @property
    def ambient_label(self) -> str:
        return self.ambient.name or self.ambient.label()

    @cached_property
    def object_index(self) -> dict[frozenset[int], int]:
        return {P.member_set: i for i, P in enumerate(self.objects)}

    def index_of(self, P: Subgroup | frozenset[int]) -> int:
        key = P.member_set if isinstance(P, Subgroup) else frozenset(P)
        return self.object_index[key]

    def hom(self, P: Subgroup, Q: Subgroup) -> list[Homomorphism]:
        i, j = self.index_of(P), self.index_of(Q)
        return [Homomorphism(self.objects[i], self.objects[j], t, "conjugation")
                for t in sorted(self.hom_table[i, j])]

    def contains(self, phi: Homomorphism) -> bool:
        i, j = self.index_of(phi.source), self.index_of(phi.target)
        return phi.images in self.hom_table[i, j]

    def cardinality_profile(self) -> Counter:
        return Counter(len(v) for v in self.hom_table.values())

    def order_profile(self) -> Counter:
        return Counter(P.order for P in self.objects)

    def morphism_count(self) -> int:
        return sum(len(v) for v in self.hom_table.values())


@dataclass(frozen=True)
class FusionIsomorphism:
    gamma: Homomorphism
    source: FusionSystem
    target: FusionSystem


def build_fusion_system(G: GroupLike, p: int, base: Subgroup | None = None) -> FusionSystem:
    """F_S(G) over ``base`` (default: the deterministic Sylow p-subgroup of G)."""
    X = as_subgroup(G)
    S = sylow_subgroup(X, p) if base is None else base
    if S.group is not X.group or not S.issubset(X):
        raise AmbientMismatch("base must be a subgroup of G")
    objects = all_subgroups(S)
    table: dict[tuple[int, int], frozenset[Table]] = {}
    for i, P in enumerate(objects):
        tabs = _conjugation_tables(X, P)
        for j, Q in enumerate(objects):
            if Q.order < P.order:
                table[i, j] = frozenset()
                continue
            table[i, j] = frozenset(t for t in tabs if Q.member_set.issuperset(t))
    return FusionSystem(p, X, S, objects, table)


def _transport(gamma: dict[int, int], P: Subgroup, t: Table) -> tuple[frozenset[int], Table]:
    """Conjugate the map with table ``t`` on ``P`` by ``gamma``: gamma o phi o gamma^-1."""
    pairs = sorted((gamma[x], gamma[y]) for x, y in zip(P.elements, t))
    return frozenset(a for a, _ in pairs), tuple(b for _, b in pairs)


def _transport_ok(gamma: dict[int, int], F1: FusionSystem, F2: FusionSystem) -> bool:
    gamma_obj = {}
    for i, P in enumerate(F1.objects):
        img = frozenset(gamma[x] for x in P.elements)
        gamma_obj[i] = F2.object_index.get(img)
        if gamma_obj[i] is None:
            return False
    for (i, j), tabs in F1.hom_table.items():
        target = F2.hom_table[gamma_obj[i], gamma_obj[j]]
        if len(target) != len(tabs):
            return False
        P = F1.objects[i]
        for t in tabs:
            if _transport(gamma, P, t)[1] not in target:
                return False
    return True


def is_fusion_isomorphism(gamma: Homomorphism, F1: FusionSystem, F2: FusionSystem) -> bool:
    """Whether gamma: S -> S' carries F1 onto F2, checked in both directions."""
    if F1.prime != F2.prime:
        raise BaseMismatch("fusion systems over different primes")
    if gamma.source != F1.base or gamma.target != F2.base:
        raise BaseMismatch("gamma must map base(F1) to base(F2)")
    if not gamma.injective or len(gamma.images) != F2.base.order:
        raise BaseMismatch("gamma is not an isomorphism of the bases")
    fwd = gamma.as_dict()
    back = {v: k for k, v in fwd.items()}
    return _transport_ok(fwd, F1, F2) and _transport_ok(back, F2, F1)


def _prefilter(F1: FusionSystem, F2: FusionSystem) -> bool:
    return (F1.base.order == F2.base.order
            and F1.order_profile() == F2.order_profile()
            and F1.cardinality_profile() == F2.cardinality_profile())


def iter_fusion_isomorphisms(F1: FusionSystem, F2: FusionSystem) -> Iterator[FusionIsomorphism]:
    if F1.prime != F2.prime:
        raise BaseMismatch("fusion systems over different primes")
    if not _prefilter(F1, F2):
        return
    for gamma in iter_isomorphisms(F1.base, F2.base):
        if is_fusion_isomorphism(gamma, F1, F2):
            yield FusionIsomorphism(gamma, F1, F2)


def find_fusion_isomorphism(F1: FusionSystem, F2: FusionSystem) -> FusionIsomorphism | None:
    return next(iter_fusion_isomorphisms(F1, F2), None)


def check_fusion_axioms(F: FusionSystem) -> list[str]:
    """Exhaustively test the structural properties of a built fusion system.

    Returns a list of human-readable violations; empty means all hold.
    """
    problems: list[str] = []
    objs = F.objects
    A = F.base.group
    n = len(objs)
    for (i, j), tabs in F.hom_table.items():
        for t in tabs:
            if len(set(t)) != len(t):
                problems.append(f"non-injective morphism {i}->{j}")
    # S-fusion: conjugation by elements of S itself
    for i, P in enumerate(objs):
        for s in F.base.elements:
            cm = A.conj_map(s)
            t = tuple(cm[x] for x in P.elements)
            img = frozenset(t)
            for j, Q in enumerate(objs):
                if img <= Q.member_set and t not in F.hom_table[i, j]:
                    problems.append(f"missing S-conjugation {i}->{j}")
    for i in range(n):
        P = objs[i]
        for j in range(n):
            Q = objs[j]
            for t1 in F.hom_table[i, j]:
                f1 = dict(zip(P.elements, t1))
                for k in range(n):
                    second = F.hom_table[j, k]
                    if not second:
                        continue
                    for t2 in second:
                        f2 = dict(zip(Q.elements, t2))
                        comp = tuple(f2[f1[x]] for x in P.elements)
                        if comp not in F.hom_table[i, k]:
                            problems.append(f"composition {i}->{j}->{k} missing")
                for ii, R in enumerate(objs):
                    if R.order < P.order and R.member_set <= P.member_set:
                        if tuple(f1[x] for x in R.elements) not in F.hom_table[ii, j]:
                            problems.append(f"restriction {i}|{ii}->{j} missing")
    return problems


def fusion_to_dict(F: FusionSystem) -> dict:
    """JSON-ready dump: objects with canonical generators, then per-pair morphisms."""
    A = F.base.group
    cyc = lambda x: A.perm(x).cycles()
    objects = [{"index": i, "order": P.order, "generators": [cyc(g) for g in P.gens]}
               for i, P in enumerate(F.objects)]
    pairs = []
    for (i, j), tabs in sorted(F.hom_table.items()):
        if not tabs:
            continue
        P = F.objects[i]
        morphs = []
        for t in sorted(tabs):
            f = dict(zip(P.elements, t))
            morphs.append({"generator_images": [cyc(f[g]) for g in P.gens],
                           "table": list(t)})
        pairs.append({"source": i, "target": j, "count": len(tabs), "morphisms": morphs})
    return {
        "prime": F.prime,
        "ambient": F.ambient_label,
        "base_order": F.base.order,
        "base_generators": [cyc(g) for g in F.base.gens],
        "objects": objects,
        "pairs": pairs,
        "morphism_count": F.morphism_count(),
    }
