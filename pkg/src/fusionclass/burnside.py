"""Burnside modules A(G, G') on conjugacy classes of (G, G')-pairs.

A pair ``(H, phi)`` is a subgroup ``H <= G`` with a homomorphism
``phi: H -> G'``. Two pairs are conjugate when some ``g in G`` carries the
subgroups onto each other and ``phi' o c_g = c_h o phi`` for some
``h in G'``. The canonical representative of a class uses the minimal
subgroup of the subgroup class and then the lexicographically smallest
table over the whole conjugation orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AmbientMismatch, BasisMismatch, CapExceeded, NotFound
from .groups import (
    GroupLike,
    Homomorphism,
    Subgroup,
    as_subgroup,
    homomorphisms,
    normalizer,
    subgroup_conjugacy_classes,
)
from .settings import get_settings

Table = tuple[int, ...]
PairKey = tuple[int, Table]


@dataclass(frozen=True)
class BisetPair:
    """A (G, G')-pair: ``H <= G`` and ``phi: H -> G'``."""

    source: Subgroup
    target: Subgroup
    H: Subgroup
    phi: Homomorphism

    def __post_init__(self):
        if self.phi.source != self.H:
            raise AmbientMismatch("phi must be defined on H")
        if not self.H.issubset(self.source) or self.H.group is not self.source.group:
            raise AmbientMismatch("H must be a subgroup of the source group")
        if self.target.group is not self.phi.target.group or not self.phi.image <= self.target.member_set:
            raise AmbientMismatch("phi must land in the target group")

    @property
    def is_trivial(self) -> bool:
        return self.phi.is_trivial


def make_pair(G: GroupLike, G2: GroupLike, H: Subgroup, images: Sequence[int]) -> BisetPair:
    """Checked constructor: ``images`` must define a homomorphism on ``H``."""
    G, G2 = as_subgroup(G), as_subgroup(G2)
    images = tuple(images)
    if len(images) != H.order:
        raise ValueError(f"need {H.order} images, got {len(images)}")
    phi = Homomorphism(H, G2, images)
    pair = BisetPair(G, G2, H, phi)
    if not phi.is_multiplicative():
        raise ValueError("images do not define a homomorphism")
    return pair


def _inner_maps(T: Subgroup) -> list[tuple[int, ...]]:
    """Distinct conjugation maps ``c_h`` (h in T) as full ambient tables."""
    cached = getattr(T, "_inner_maps", None)
    if cached is None:
        A = T.group
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for h in T.elements:
            cm = A.conj_map(h)
            seen.setdefault(tuple(cm[x] for x in T.elements), cm)
        cached = list(seen.values())
        T._inner_maps = cached
    return cached


def _source_twists(X: Subgroup, R: Subgroup) -> list[tuple[int, ...]]:
    """Position permutations of ``R`` induced by ``c_n`` for ``n`` in ``N_X(R)``."""
    key = ("_twists", R.member_set)
    cache = X.__dict__.setdefault("_twist_cache", {})
    if key not in cache:
        A, pos = X.group, R.pos
        twists = set()
        for n in normalizer(X, R).elements:
            cm = A.conj_map(n)
            twists.add(tuple(pos[cm[x]] for x in R.elements))
        cache[key] = sorted(twists)
    return cache[key]


def _transport(X: Subgroup) -> dict[frozenset[int], tuple[int, Subgroup, int]]:
    """For each subgroup H of X: (class index, class rep R, g) with ``g H g^-1 = R``."""
    cached = getattr(X, "_rep_transport", None)
    if cached is None:
        A = X.group
        cached = {}
        for ci, (R, _) in enumerate(subgroup_conjugacy_classes(X)):
            for g in X.elements:
                cm = A.conj_map(g)
                H = frozenset(cm[r] for r in R.elements)
                # c_g(R) = H, so c_{g^-1}(H) = R
                cached.setdefault(H, (ci, R, A.inv(g)))
        X._rep_transport = cached
    return cached


def _orbit(table: Table, twists, inner) -> set[Table]:
    orbit = set()
    for tw in twists:
        t = tuple(table[i] for i in tw)
        for ch in inner:
            orbit.add(tuple(ch[v] for v in t))
    return orbit


def canonical_key(pair: BisetPair) -> PairKey:
    """Basis-independent canonical form of the class ``[H, phi]``."""
    X, T = pair.source, pair.target
    ci, R, g = _transport(X)[pair.H.member_set]
    cm = X.group.conj_map(X.group.inv(g))
    phi = pair.phi
    table = tuple(phi(cm[r]) for r in R.elements)
    return ci, min(_orbit(table, _source_twists(X, R), _inner_maps(T)))


def pairs_conjugate(a: BisetPair, b: BisetPair) -> bool:
    """Direct search for ``g in G``, ``h in G'`` witnessing conjugacy of two pairs."""
    if a.source != b.source or a.target != b.target:
        raise AmbientMismatch("pairs live over different (G, G')")
    if a.H.order != b.H.order:
        return False
    X, T = a.source, a.target
    A, B = X.group, T.group
    fb = b.phi.as_dict()
    for g in X.elements:
        cg = A.conj_map(g)
        if any(cg[x] not in b.H.member_set for x in a.H.elements):
            continue
        lhs = [fb[cg[x]] for x in a.H.elements]
        for h in T.elements:
            ch = B.conj_map(h)
            if all(ch[y] == l for y, l in zip(a.phi.images, lhs)):
                return True
    return False


@dataclass
class BurnsideBasis:
    source: Subgroup
    target: Subgroup
    classes: list[BisetPair]
    trivial_flags: list[bool]
    class_sizes: list[int]
    index: dict[PairKey, int] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def reduced_rank(self) -> int:
        return self.trivial_flags.count(False)

    def zero(self) -> BurnsideElement:
        return BurnsideElement(self, (0,) * self.rank)

    def basis_vector(self, i: int) -> BurnsideElement:
        v = [0] * self.rank
        v[i] = 1
        return BurnsideElement(self, tuple(v))


def burnside_basis(G: GroupLike, G2: GroupLike) -> BurnsideBasis:
    """Canonical basis of A(G, G2), ordered by |H| and then canonical form."""
    X, T = as_subgroup(G), as_subgroup(G2)
    inner = _inner_maps(T)
    classes, flags, sizes, index = [], [], [], {}
    ident = T.group.identity
    for ci, (R, members) in enumerate(subgroup_conjugacy_classes(X)):
        twists = _source_twists(X, R)
        seen: set[Table] = set()
        reps = []
        for hom in homomorphisms(R, T):
            if hom.images in seen:
                continue
            orbit = _orbit(hom.images, twists, inner)
            seen |= orbit
            reps.append((min(orbit), len(orbit)))
        for table, size in sorted(reps):
            index[ci, table] = len(classes)
            classes.append(BisetPair(X, T, R, Homomorphism(R, T, table)))
            flags.append(all(v == ident for v in table))
            sizes.append(size * len(members))
    return BurnsideBasis(X, T, classes, flags, sizes, index)


def canonical_class(pair: BisetPair, basis: BurnsideBasis) -> int:
    if pair.source != basis.source or pair.target != basis.target:
        raise AmbientMismatch("pair and basis are over different (G, G')")
    try:
        return basis.index[canonical_key(pair)]
    except KeyError:
        raise NotFound(f"no basis class for pair over subgroup of order {pair.H.order}") from None


@dataclass(frozen=True)
class BurnsideElement:
    basis: BurnsideBasis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.basis.rank:
            raise BasisMismatch("coefficient vector has the wrong length")

    def _check(self, other: BurnsideElement):
        if other.basis is not self.basis:
            raise BasisMismatch("elements belong to different bases")

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        self._check(other)
        return BurnsideElement(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(self.basis, tuple(-a for a in self.coeffs))

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the reduced module (classes with trivial phi dropped)."""
        return tuple(c for c, t in zip(self.coeffs, self.basis.trivial_flags) if not t)

    def reduced_equal(self, other: BurnsideElement) -> bool:
        self._check(other)
        return self.reduced() == other.reduced()


def element_add(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    return a + b


def element_equal(a: BurnsideElement, b: BurnsideElement, reduced: bool = False) -> bool:
    return a.reduced_equal(b) if reduced else a == b


@dataclass
class ExplicitBiset:
    """A finite (G, G')-biset with points ``0..size-1``.

    ``left[x]`` is the permutation of points given by ``x in G'`` and
    ``right[g]`` the one given by ``g in G`` (acting on the right).
    """

    source: Subgroup
    target: Subgroup
    size: int
    left: dict[int, tuple[int, ...]]
    right: dict[int, tuple[int, ...]]
    labels: list[tuple[int, int]] | None = None

    def verify(self) -> list[str]:
        problems = []
        A, B = self.source.group, self.target.group
        pts = range(self.size)
        for x in self.target.elements:
            if x == B.identity:
                if any(self.left[x][z] != z for z in pts):
                    problems.append("identity of G' acts nontrivially")
            elif any(self.left[x][z] == z for z in pts):
                problems.append("left action is not free")
                break
        for x in self.target.gens:
            for x2 in self.target.elements:
                lx, lx2, lxx = self.left[x], self.left[x2], self.left[B.mul(x, x2)]
                if any(lx[lx2[z]] != lxx[z] for z in pts):
                    problems.append("left action is not an action")
                    break
        for g in self.source.gens:
            for g2 in self.source.elements:
                rg, rg2, rgg = self.right[g], self.right[g2], self.right[A.mul(g2, g)]
                # (z . g2) . g == z . (g2 g)
                if any(rg[rg2[z]] != rgg[z] for z in pts):
                    problems.append("right action is not an action")
                    break
        for x in self.target.gens:
            for g in self.source.gens:
                lx, rg = self.left[x], self.right[g]
                if any(lx[rg[z]] != rg[lx[z]] for z in pts):
                    problems.append("left and right actions do not commute")
        return problems

    def disjoint_union(self, other: ExplicitBiset) -> ExplicitBiset:
        if other.source != self.source or other.target != self.target:
            raise AmbientMismatch("bisets over different (G, G')")
        n = self.size
        shift = lambda t: tuple(z + n for z in t)
        left = {x: self.left[x] + shift(other.left[x]) for x in self.left}
        right = {g: self.right[g] + shift(other.right[g]) for g in self.right}
        return ExplicitBiset(self.source, self.target, n + other.size, left, right)


def realize_biset(pair: BisetPair) -> ExplicitBiset:
    """Build ``G' x_(H, phi) G = (G' x G) / ~`` with ``(x, g y) ~ (x phi(g), y)``."""
    X, T, H = pair.source, pair.target, pair.H
    A, B = X.group, T.group
    size = T.order * X.order // H.order
    cap = get_settings().max_biset
    if size > cap:
        raise CapExceeded(f"biset of size {size} exceeds cap {cap}")
    phi = pair.phi.as_dict()
    point: dict[tuple[int, int], int] = {}
    labels = []
    for x in T.elements:
        for y in X.elements:
            if (x, y) in point:
                continue
            pid = len(labels)
            labels.append((x, y))
            # the class of (x, y) is {(x phi(g), g^-1 y) : g in H}
            for g in H.elements:
                point[B.mul(x, phi[g]), A.mul(A.inv(g), y)] = pid
    if len(labels) != size:
        raise AssertionError(f"biset has {len(labels)} points, expected {size}")
    left = {x2: tuple(point[B.mul(x2, x), y] for x, y in labels) for x2 in T.elements}
    right = {g: tuple(point[x, A.mul(y, g)] for x, y in labels) for g in X.elements}
    return ExplicitBiset(X, T, size, left, right, labels)


def decompose_biset(biset: ExplicitBiset, basis: BurnsideBasis) -> BurnsideElement:
    """Coordinates of a biset with free left action in the canonical basis."""
    X, T = biset.source, biset.target
    if X != basis.source or T != basis.target:
        raise BasisMismatch("biset and basis are over different (G, G')")
    coeffs = [0] * basis.rank
    seen: set[int] = set()
    for z in range(biset.size):
        if z in seen:
            continue
        orbit = {biset.right[g][biset.left[x][z]] for x in T.elements for g in X.elements}
        seen |= orbit
        left_orbit = {biset.left[x][z]: x for x in T.elements}
        H = [g for g in X.elements if biset.right[g][z] in left_orbit]
        Hs = Subgroup(X.group, H)
        images = tuple(left_orbit[biset.right[g][z]] for g in Hs.elements)
        pair = BisetPair(X, T, Hs, Homomorphism(Hs, T, images))
        coeffs[canonical_class(pair, basis)] += 1
    return BurnsideElement(basis, tuple(coeffs))


def stable_inclusion_equal(G: GroupLike, S: Subgroup, P: Subgroup, Q: Subgroup,
                           phi: Homomorphism, basis: BurnsideBasis | None = None) -> bool:
    """Whether ``[P, iota_Q o phi] == [P, iota_P]`` in A(P, G).

    This is the combinatorial criterion for the stable maps
    ``B(iota_Q) o B(phi)`` and ``B(iota_P)`` to agree after p-completion.
    """
    X = as_subgroup(G)
    for K in (S, P, Q):
        if K.group is not X.group:
            raise AmbientMismatch("S, P, Q must share the ambient group of G")
    if not (S.issubset(X) and P.issubset(S) and Q.issubset(S)):
        raise AmbientMismatch("need P, Q <= S <= G")
    if phi.source != P or not phi.image <= Q.member_set:
        raise AmbientMismatch("phi must map P into Q")
    via_q = BisetPair(P, X, P, Homomorphism(P, X, phi.images))
    incl = BisetPair(P, X, P, Homomorphism(P, X, P.elements, "inclusion"))
    if basis is not None:
        return canonical_class(via_q, basis) == canonical_class(incl, basis)
    return canonical_key(via_q) == canonical_key(incl)


def basis_to_dict(basis: BurnsideBasis) -> dict:
    A, B = basis.source.group, basis.target.group
    classes = []
    for pair, flag in zip(basis.classes, basis.trivial_flags):
        f = pair.phi.as_dict()
        classes.append({
            "subgroup_order": pair.H.order,
            "generators": [A.perm(g).cycles() for g in pair.H.gens],
            "phi": [[A.perm(x).cycles(), B.perm(f[x]).cycles()] for x in pair.H.elements],
            "trivial": flag,
        })
    return {
        "source": basis.source.label(),
        "target": basis.target.label(),
        "rank": basis.rank,
        "reduced_rank": basis.reduced_rank,
        "classes": classes,
    }
