"""Decision procedures for the two stable classifications.

* :func:`stable_equivalent_mp` decides the Martino-Priddy criterion in its
  InjRep form. It is exact: ``InjRep(Q, G)`` is empty unless ``Q`` embeds
  in a Sylow p-subgroup of ``G``, so only subgroup types of the two Sylow
  subgroups need checking.
* :func:`condition2_bounded` checks the Rep form over the built-in p-groups
  up to an order bound, and says so in its verdict.
* :func:`alternative_classification` decides isomorphism of the fusion
  systems, which is equivalent to the Sylow-pointed stable equivalence and
  to unstable equivalence of the p-completed classifying spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import p_group_catalog
from .errors import CatalogInsufficient
from .fusion import (
    FusionIsomorphism,
    build_fusion_system,
    find_fusion_isomorphism,
    is_fusion_isomorphism,
)
from .groups import (
    FiniteGroup,
    GroupLike,
    Subgroup,
    are_isomorphic,
    as_subgroup,
    is_p_power,
    is_prime,
    subgroup_conjugacy_classes,
    sylow_subgroup,
)
from .repmod import ACTION_CONVENTION, RepSet, linearize, modules_isomorphic, out_sets_isomorphic, rep_set

STABLE_MP = "stable_MP"
FUSION_ALT = "fusion_alt"
CONDITION2 = "condition2_bounded"


@dataclass
class Verdict:
    kind: str
    equivalent: bool
    witness: dict | None
    candidate_Q_list: list[dict]
    bound_note: str
    checks: list[dict] = field(default_factory=list)
    fusion_witness: FusionIsomorphism | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "equivalent": self.equivalent,
            "witness": self.witness,
            "candidate_Q_list": self.candidate_Q_list,
            "bound_note": self.bound_note,
            "checks": self.checks,
        }


def _describe(Q: Subgroup) -> dict:
    A = Q.group
    return {
        "label": Q.name or f"subgroup of {A.name}",
        "order": Q.order,
        "generators": [A.perm(g).cycles() for g in Q.gens],
        "order_profile": [list(t) for t in Q.order_profile],
    }


def compare_rep_sets(X: RepSet, Y: RepSet, p: int) -> tuple[bool, str]:
    """Module comparison with cheap exits first; returns (isomorphic, method)."""
    if len(X) != len(Y):
        return False, "dimension"
    if len(X) == 0:
        return True, "empty"
    if X.out_action == Y.out_action:
        return True, "identical action"
    if len(X.aut.out) <= 4096 and out_sets_isomorphic(X, Y):
        return True, "isomorphic Out(Q)-sets"
    return modules_isomorphic(linearize(X, p), linearize(Y, p)), "intertwiner search"


def _sylow_types(S: Subgroup, S2: Subgroup) -> list[Subgroup]:
    """One representative per isomorphism type of subgroup of S or S2."""
    types: list[Subgroup] = []
    for T in (S, S2):
        for R, _ in subgroup_conjugacy_classes(T):
            if not any(are_isomorphic(R, U) for U in types):
                types.append(R)
    return types


def _self_check(G: GroupLike, G2: GroupLike, p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return as_subgroup(G), as_subgroup(G2)


def stable_equivalent_mp(G: GroupLike, G2: GroupLike, p: int, prefilter: bool = True) -> Verdict:
    """Martino-Priddy stable equivalence via F_p InjRep(Q, -) for every p-group Q."""
    X, X2 = _self_check(G, G2, p)
    S, S2 = sylow_subgroup(X, p), sylow_subgroup(X2, p)
    note = ("exact: InjRep(Q, G) is empty unless Q embeds in a Sylow p-subgroup, so the "
            "subgroup types of both Sylow subgroups exhaust all p-groups Q that matter")
    if prefilter and S.order != S2.order:
        big, host = (S, X) if S.order > S2.order else (S2, X2)
        n_big = len(rep_set(big, host, True))
        dims = [n_big, 0] if host is X else [0, n_big]
        witness = {"Q": _describe(big), "dims": dims,
                   "reason": "Sylow orders differ; the larger Sylow subgroup has no embedding "
                             "into the other group"}
        return Verdict(STABLE_MP, False, witness, [_describe(big)], note)
    candidates = _sylow_types(S, S2)
    checks, witness = [], None
    for Q in candidates:
        A, B = rep_set(Q, X, True), rep_set(Q, X2, True)
        ok, method = compare_rep_sets(A, B, p)
        checks.append({"Q": _describe(Q), "dims": [len(A), len(B)], "isomorphic": ok,
                       "method": method})
        if not ok and witness is None:
            witness = {"Q": _describe(Q), "dims": [len(A), len(B)], "method": method,
                       "action_convention": ACTION_CONVENTION}
    return Verdict(STABLE_MP, witness is None, witness,
                   [_describe(Q) for Q in candidates], note, checks)


def condition2_bounded(G: GroupLike, G2: GroupLike, p: int, order_bound: int) -> Verdict:
    """F_p Rep(Q, G) vs F_p Rep(Q, G2) for built-in p-groups Q with |Q| <= order_bound."""
    X, X2 = _self_check(G, G2, p)
    if order_bound < 1 or not is_p_power(order_bound, p):
        raise ValueError(f"order bound {order_bound} is not a power of {p}")
    qs = p_group_catalog(p, order_bound)
    have = {Q.order for Q in qs}
    missing = [p ** k for k in range(0, 64) if p ** k <= order_bound and p ** k not in have]
    if missing:
        raise CatalogInsufficient(f"no built-in {p}-group of order {missing}")
    note = (f"bounded: only the built-in {p}-groups of order <= {order_bound} were checked; "
            "this is not exhaustive over all p-groups")
    checks, witness = [], None
    for Qg in qs:
        Q = Qg.whole
        A, B = rep_set(Q, X, False), rep_set(Q, X2, False)
        ok, method = compare_rep_sets(A, B, p)
        checks.append({"Q": _describe(Q), "dims": [len(A), len(B)], "isomorphic": ok,
                       "method": method})
        if not ok and witness is None:
            witness = {"Q": _describe(Q), "dims": [len(A), len(B)], "method": method,
                       "action_convention": ACTION_CONVENTION}
    return Verdict(CONDITION2, witness is None, witness, [_describe(Qg.whole) for Qg in qs],
                   note, checks)


COROLLARY_HOLDS = ("fusion systems are isomorphic, hence the Sylow-pointed stable classifying "
                   "spectra are equivalent and the p-completed classifying spaces are homotopy "
                   "equivalent")
COROLLARY_FAILS = ("fusion systems are not isomorphic, hence neither the Sylow-pointed stable "
                   "equivalence nor an unstable equivalence of p-completed classifying spaces exists")


def alternative_classification(G: GroupLike, G2: GroupLike, p: int) -> Verdict:
    X, X2 = _self_check(G, G2, p)
    F1, F2 = build_fusion_system(X, p), build_fusion_system(X2, p)
    note = "exact: exhaustive search over isomorphisms of the Sylow subgroups"
    found = find_fusion_isomorphism(F1, F2)
    cands = [_describe(F1.base), _describe(F2.base)]
    if found is not None:
        gamma = found.gamma
        A = gamma.source.group
        B = gamma.target.group
        witness = {
            "gamma": [[A.perm(g).cycles(), B.perm(gamma(g)).cycles()] for g in gamma.source.gens],
            "verified": is_fusion_isomorphism(gamma, F1, F2),
            "corollary": COROLLARY_HOLDS,
        }
        return Verdict(FUSION_ALT, True, witness, cands, note, fusion_witness=found)
    if F1.base.order != F2.base.order:
        reason = "Sylow orders differ"
    elif F1.order_profile() != F2.order_profile():
        reason = "subgroup counts per order differ"
    elif F1.cardinality_profile() != F2.cardinality_profile():
        reason = "multisets of morphism-set sizes differ"
    elif not are_isomorphic(F1.base, F2.base):
        reason = "Sylow subgroups are not isomorphic"
    else:
        reason = "no isomorphism of Sylow subgroups transports one fusion system onto the other"
    witness = {
        "reason": reason,
        "morphism_counts": [F1.morphism_count(), F2.morphism_count()],
        "base_orders": [F1.base.order, F2.base.order],
        "corollary": COROLLARY_FAILS,
    }
    return Verdict(FUSION_ALT, False, witness, cands, note)


def distinguishing_search(catalog: Sequence[FiniteGroup] | Iterable[FiniteGroup], p: int) -> list[tuple[str, str]]:
    """Pairs that are stably equivalent in the Martino-Priddy sense but have
    non-isomorphic fusion systems."""
    groups = list(catalog)
    found = []
    for G, H in itertools.combinations(groups, 2):
        if not stable_equivalent_mp(G, H, p).equivalent:
            continue
        if not alternative_classification(G, H, p).equivalent:
            found.append((G.name, H.name))
    return found
