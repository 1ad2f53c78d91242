"""Permutation groups with fully enumerated element sets.

Elements of a :class:`FiniteGroup` are stored sorted lexicographically by
their image arrays, so an element is identified by its index into
``group.elements`` and index 0 is always the identity. Subgroups, maps and
canonical forms all work on these indices.

Composition is right-to-left: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapExceeded, DegreeMismatch, ElementNotInAmbient
from .settings import get_settings

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        """Parse 0-based cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
        images = list(range(degree))
        stripped = text.strip()
        if _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen: set[int] = set()
        for body in _CYCLE_RE.findall(stripped):
            pts = [int(tok) for tok in body.replace(",", " ").split()]
            for pt in pts:
                if not 0 <= pt < degree:
                    raise ValueError(f"point {pt} outside degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated in {text!r}")
                seen.add(pt)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> str:
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"

    def __str__(self) -> str:
        return self.cycles()


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[i] for i in b)


class FiniteGroup:
    """A permutation group together with its complete, sorted element list.

    Build instances with :func:`closure`; the constructor trusts its input.
    """

    def __init__(self, name: str, degree: int, generators: Sequence[Permutation],
                 elements: Iterable[tuple[int, ...]]):
        self.name = name
        self.degree = degree
        self.generators = tuple(generators)
        self._perms: list[tuple[int, ...]] = sorted(elements)
        self.index: dict[tuple[int, ...], int] = {p: i for i, p in enumerate(self._perms)}
        self.order = len(self._perms)
        self.identity = 0
        inv = [0] * self.order
        for i, p in enumerate(self._perms):
            q = [0] * degree
            for a, b in enumerate(p):
                q[b] = a
            inv[i] = self.index[tuple(q)]
        self._inv = inv
        self._rows: dict[int, list[int]] = {}
        self._conj: dict[int, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(p) for p in self._perms)

    def perm(self, i: int) -> Permutation:
        return Permutation(self._perms[i])

    def index_of(self, perm: Permutation | tuple[int, ...]) -> int:
        key = perm.images if isinstance(perm, Permutation) else tuple(perm)
        try:
            return self.index[key]
        except KeyError:
            raise ElementNotInAmbient(f"{key} is not an element of {self.name}") from None

    def row(self, a: int) -> list[int]:
        r = self._rows.get(a)
        if r is None:
            pa, idx = self._perms[a], self.index
            r = [idx[tuple(pa[i] for i in pb)] for pb in self._perms]
            self._rows[a] = r
        return r

    def mul(self, a: int, b: int) -> int:
        return self.row(a)[b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj_map(self, g: int) -> tuple[int, ...]:
        """The table of ``x -> g x g^-1`` over all element indices."""
        t = self._conj.get(g)
        if t is None:
            rg, gi = self.row(g), self._inv[g]
            t = tuple(rg[self.row(x)[gi]] for x in range(self.order))
            self._conj[g] = t
        return t

    def power(self, a: int, n: int) -> int:
        result, base = self.identity, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def whole(self) -> Subgroup:
        sub = Subgroup(self, range(self.order))
        sub.name = self.name
        return sub

    @cached_property
    def is_abelian(self) -> bool:
        gens = [self.index[g.images] for g in self.generators]
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


class Subgroup:
    """A subset of an ambient group's elements that is closed under the group law.

    Equality and hashing go by (ambient group identity, member set).
    """

    def __init__(self, group: FiniteGroup, members: Iterable[int], name: str | None = None):
        self.group = group
        self.elements: tuple[int, ...] = tuple(sorted(set(members)))
        self.member_set = frozenset(self.elements)
        self.name = name

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.group is self.group
                and other.member_set == self.member_set)

    def __hash__(self) -> int:
        return hash((id(self.group), self.member_set))

    def __repr__(self) -> str:
        label = self.name or f"<{self.order}>"
        return f"Subgroup({label} in {self.group.name})"

    @property
    def sort_key(self) -> tuple:
        return (self.order, self.elements)

    @cached_property
    def pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def issubset(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A short generating sequence, cyclic when possible, otherwise greedy."""
        return _generating_sequence(self)

    @cached_property
    def order_profile(self) -> tuple[tuple[int, int], ...]:
        orders = self.group.element_orders
        return tuple(sorted(Counter(orders[x] for x in self.elements).items()))

    @cached_property
    def is_abelian(self) -> bool:
        g = self.group
        return all(g.mul(a, b) == g.mul(b, a) for a in self.gens for b in self.gens)

    def label(self) -> str:
        if self.name:
            return self.name
        return f"{self.group.name}<{' , '.join(self.group.perm(x).cycles() for x in self.gens) or '()'}>"


GroupLike = Union[FiniteGroup, Subgroup]


def as_subgroup(G: GroupLike) -> Subgroup:
    return G.whole if isinstance(G, FiniteGroup) else G


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def closure(generators: Sequence[Permutation], name: str = "G", cap: int | None = None) -> FiniteGroup:
    """Enumerate the group generated by ``generators``."""
    cap = get_settings().max_order if cap is None else cap
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator (use the identity for C1)")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators disagree on degree")
    gen_tuples = [g.images for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_tuples:
                y = _compose(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group {name} exceeds order cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return FiniteGroup(name, degree, gens, seen)


def generate(group: FiniteGroup, gens: Iterable[int], base: Iterable[int] = ()) -> frozenset[int]:
    """Member set of the subgroup generated by ``gens`` together with ``base``."""
    gens = list(dict.fromkeys(list(gens) + list(base)))
    seen = {group.identity}
    frontier = [group.identity]
    rows = [group.row(s) for s in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for r in rows:
                y = r[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _generating_sequence(H: Subgroup) -> tuple[int, ...]:
    G = H.group
    if H.order == 1:
        return ()
    orders = G.element_orders
    for x in H.elements:
        if orders[x] == H.order:
            return (x,)
    gens: list[int] = []
    current = frozenset([G.identity])
    while len(current) < H.order:
        best, best_set = None, current
        for x in H.elements:
            if x in current:
                continue
            cand = generate(G, gens + [x])
            if len(cand) > len(best_set):
                best, best_set = x, cand
        gens.append(best)
        current = best_set
    return tuple(gens)


def _resolve(G: FiniteGroup, g: int | Permutation) -> int:
    if isinstance(g, Permutation):
        return G.index_of(g)
    if not 0 <= g < G.order:
        raise ElementNotInAmbient(f"index {g} out of range for {G.name}")
    return g


def conjugate_subgroup(g: int | Permutation, H: Subgroup) -> Subgroup:
    """Return ``g H g^-1`` as a subgroup of the same ambient group."""
    G = H.group
    gi = _resolve(G, g)
    cm = G.conj_map(gi)
    return Subgroup(G, (cm[h] for h in H.elements))


def normalizer(G: GroupLike, H: Subgroup) -> Subgroup:
    X = as_subgroup(G)
    A = X.group
    members = [g for g in X.elements
               if all(A.conj_map(g)[h] in H.member_set for h in H.gens)]
    return Subgroup(A, members)


def centralizer(G: GroupLike, H: Subgroup) -> Subgroup:
    X = as_subgroup(G)
    A = X.group
    return Subgroup(A, [g for g in X.elements if all(A.conj_map(g)[h] == h for h in H.gens)])


def all_subgroups(G: GroupLike) -> list[Subgroup]:
    """Every subgroup of ``G`` once, sorted by order then by member list."""
    X = as_subgroup(G)
    cached = getattr(X, "_all_subgroups", None)
    if cached is not None:
        return list(cached)
    cap = get_settings().max_subgroup_ambient
    if X.order > cap:
        raise CapExceeded(f"subgroup enumeration of order {X.order} exceeds cap {cap}")
    A = X.group
    cyclic: dict[frozenset[int], int] = {}
    for x in X.elements:
        cyclic.setdefault(generate(A, [x]), x)
    found: dict[frozenset[int], list[int]] = {frozenset([A.identity]): []}
    frontier = list(found)
    while frontier:
        nxt = []
        for members in frontier:
            gens = found[members]
            for cmembers, c in cyclic.items():
                if cmembers <= members:
                    continue
                new = generate(A, gens + [c])
                if new not in found:
                    found[new] = gens + [c]
                    nxt.append(new)
        frontier = nxt
    subs = sorted((Subgroup(A, m) for m in found), key=lambda s: s.sort_key)
    X._all_subgroups = tuple(subs)
    return subs


def subgroup_conjugacy_classes(G: GroupLike) -> list[tuple[Subgroup, list[Subgroup]]]:
    """Partition the subgroups of ``G`` into ``G``-conjugacy classes.

    Each class is returned as ``(representative, members)`` with the
    representative minimal in the canonical subgroup order.
    """
    X = as_subgroup(G)
    cached = getattr(X, "_subgroup_classes", None)
    if cached is not None:
        return [(r, list(m)) for r, m in cached]
    A = X.group
    subs = all_subgroups(X)
    by_members = {s.member_set: s for s in subs}
    assigned: set[frozenset[int]] = set()
    classes = []
    for H in subs:
        if H.member_set in assigned:
            continue
        orbit = {frozenset(A.conj_map(g)[h] for h in H.elements) for g in X.elements}
        members = sorted((by_members[m] for m in orbit), key=lambda s: s.sort_key)
        assigned.update(orbit)
        classes.append((members[0], members))
    X._subgroup_classes = tuple((r, tuple(m)) for r, m in classes)
    return classes


def sylow_subgroup(G: GroupLike, p: int, rng: random.Random | None = None) -> Subgroup:
    """A Sylow p-subgroup, grown one factor of p at a time inside normalizers.

    With ``rng=None`` the smallest admissible element is taken at every step,
    which makes the result deterministic.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    X = as_subgroup(G)
    if rng is None:
        cache = X.__dict__.setdefault("_sylow", {})
        if p not in cache:
            cache[p] = _grow_sylow(X, p, None)
        return cache[p]
    return _grow_sylow(X, p, rng)


def _grow_sylow(X: Subgroup, p: int, rng: random.Random | None) -> Subgroup:
    A = X.group
    target = p_part(X.order, p)
    P = Subgroup(A, [A.identity])
    while P.order < target:
        N = normalizer(X, P)
        candidates = [x for x in N.elements
                      if x not in P.member_set and A.power(x, p) in P.member_set]
        x = rng.choice(candidates) if rng is not None else candidates[0]
        P = Subgroup(A, generate(A, [x], P.gens))
    return P


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A group homomorphism stored as a full table.

    ``images[i]`` is the image (an ambient index of the target) of
    ``source.elements[i]``.
    """

    source: Subgroup
    target: Subgroup
    images: tuple[int, ...]
    kind: str = "general"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Homomorphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self) -> int:
        return hash((self.source, self.images))

    def __call__(self, x: int) -> int:
        return self.images[self.source.pos[x]]

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def injective(self) -> bool:
        return len(self.image) == len(self.images)

    @property
    def is_trivial(self) -> bool:
        return self.image == {self.target.group.identity}

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.source.elements, self.images))

    def compose(self, inner: Homomorphism) -> Homomorphism:
        """``self o inner`` (apply ``inner`` first)."""
        return Homomorphism(inner.source, self.target,
                            tuple(self(y) for y in inner.images))

    def restrict(self, sub: Subgroup, target: Subgroup | None = None) -> Homomorphism:
        return Homomorphism(sub, target or self.target, tuple(self(x) for x in sub.elements),
                            self.kind)

    def inverse(self) -> Homomorphism:
        if not self.injective:
            raise ValueError("only injective maps can be inverted")
        img = Subgroup(self.target.group, self.images)
        back = dict(zip(self.images, self.source.elements))
        return Homomorphism(img, self.source, tuple(back[y] for y in img.elements), self.kind)

    def is_multiplicative(self) -> bool:
        S, T = self.source.group, self.target.group
        f = self.as_dict()
        return all(f[S.mul(a, b)] == T.mul(f[a], f[b])
                   for a in self.source.elements for b in self.source.elements)

    def generator_images(self) -> list[tuple[str, str]]:
        S, T = self.source.group, self.target.group
        return [(S.perm(g).cycles(), T.perm(self(g)).cycles()) for g in self.source.gens]


def inclusion(P: Subgroup, Q: Subgroup) -> Homomorphism:
    if not P.issubset(Q):
        raise ValueError("inclusion needs P <= Q")
    return Homomorphism(P, Q, P.elements, "inclusion")


def identity_map(P: GroupLike) -> Homomorphism:
    P = as_subgroup(P)
    return Homomorphism(P, P, P.elements, "isomorphism")


def conjugation_map(g: int, P: Subgroup, Q: Subgroup) -> Homomorphism:
    """``c_g`` restricted to ``P`` with codomain ``Q`` (requires ``g P g^-1 <= Q``)."""
    cm = P.group.conj_map(g)
    images = tuple(cm[x] for x in P.elements)
    if not set(images) <= Q.member_set:
        raise ValueError("g P g^-1 is not contained in Q")
    return Homomorphism(P, Q, images, "conjugation")


def _iter_hom_tables(P: Subgroup, T: Subgroup, injective_only: bool) -> Iterator[dict[int, int]]:
    """Backtrack over images of ``P.gens``, closing the partial table at each level."""
    S, G = P.group, T.group
    gens = list(P.gens)
    if not gens:
        yield {S.identity: G.identity}
        return
    sorders, torders = S.element_orders, G.element_orders
    cands = []
    for g in gens:
        og = sorders[g]
        if injective_only:
            cands.append([t for t in T.elements if torders[t] == og])
        else:
            cands.append([t for t in T.elements if og % torders[t] == 0])
    srows = [S.row(g) for g in gens]

    def extend(level: int, table: dict[int, int], imgs: list[int]) -> dict[int, int] | None:
        # left multiplication by generator j: f(g_j x) = f(g_j) f(x)
        trows = [G.row(t) for t in imgs]
        new = dict(table)
        frontier = list(new)
        while frontier:
            nxt = []
            for x in frontier:
                fx = new[x]
                for j in range(level + 1):
                    y = srows[j][x]
                    fy = trows[j][fx]
                    old = new.get(y)
                    if old is None:
                        new[y] = fy
                        nxt.append(y)
                    elif old != fy:
                        return None
            frontier = nxt
        return new

    def rec(level: int, table: dict[int, int], imgs: list[int]):
        for t in cands[level]:
            imgs.append(t)
            new = extend(level, table, imgs)
            if new is not None:
                if level + 1 == len(gens):
                    if not injective_only or len(set(new.values())) == len(new):
                        yield new
                else:
                    yield from rec(level + 1, new, imgs)
            imgs.pop()

    yield from rec(0, {S.identity: G.identity}, [])


def homomorphisms(P: GroupLike, G: GroupLike, injective_only: bool = False) -> list[Homomorphism]:
    """All homomorphisms ``P -> G`` (or all injective ones), each with a full table."""
    P, T = as_subgroup(P), as_subgroup(G)
    cap = get_settings().max_hom_source
    if P.order > cap:
        raise CapExceeded(f"homomorphism source of order {P.order} exceeds cap {cap}")
    kind = "isomorphism" if injective_only and P.order == T.order else "general"
    return [Homomorphism(P, T, tuple(t[x] for x in P.elements), kind)
            for t in _iter_hom_tables(P, T, injective_only)]


def iter_isomorphisms(P: GroupLike, Q: GroupLike) -> Iterator[Homomorphism]:
    P, Q = as_subgroup(P), as_subgroup(Q)
    if P.order != Q.order or P.order_profile != Q.order_profile:
        return
    cap = get_settings().max_hom_source
    if P.order > cap:
        raise CapExceeded(f"isomorphism source of order {P.order} exceeds cap {cap}")
    for t in _iter_hom_tables(P, Q, True):
        yield Homomorphism(P, Q, tuple(t[x] for x in P.elements), "isomorphism")


def isomorphisms_between(P: GroupLike, Q: GroupLike) -> list[Homomorphism]:
    return list(iter_isomorphisms(P, Q))


def are_isomorphic(P: GroupLike, Q: GroupLike) -> bool:
    return next(iter_isomorphisms(P, Q), None) is not None


@dataclass
class AutomorphismData:
    """Aut(Q), Inn(Q), and one representative per Inn-coset (Out(Q))."""

    group: Subgroup
    aut: list[Homomorphism]
    inn: list[Homomorphism]
    out: list[Homomorphism]
    _coset: dict[tuple[int, ...], int] = field(repr=False, default_factory=dict)

    def key(self, alpha: Homomorphism) -> tuple[int, ...]:
        return tuple(alpha(g) for g in self.group.gens)

    def out_index(self, alpha: Homomorphism) -> int:
        """Index in ``out`` of the outer class containing ``alpha``."""
        return self._coset[self.key(alpha)]

    @cached_property
    def out_generators(self) -> list[int]:
        """Indices into ``out`` of a greedy generating set of Out(Q)."""
        Q = self.group
        by_key = {self.key(a): a for a in self.aut}
        gens: list[int] = []
        identity_key = tuple(Q.gens)
        reached = {self._coset[identity_key]}
        for i in range(len(self.out)):
            if i in reached:
                continue
            gens.append(i)
            gen_maps = [self.out[j] for j in gens]
            reached = {self._coset[identity_key]}
            frontier = [by_key[identity_key]]
            while frontier:
                nxt = []
                for a in frontier:
                    for s in gen_maps:
                        k = tuple(s(a(g)) for g in Q.gens)
                        ci = self._coset[k]
                        if ci not in reached:
                            reached.add(ci)
                            nxt.append(by_key[k])
                frontier = nxt
        return gens


def automorphism_classes(Q: GroupLike) -> AutomorphismData:
    Q = as_subgroup(Q)
    cached = getattr(Q, "_aut_data", None)
    if cached is not None:
        return cached
    A = Q.group
    aut = sorted(homomorphisms(Q, Q, injective_only=True), key=lambda h: h.images)
    inn_tables = {}
    for q in Q.elements:
        cm = A.conj_map(q)
        t = tuple(cm[x] for x in Q.elements)
        inn_tables.setdefault(t, Homomorphism(Q, Q, t, "conjugation"))
    inn = sorted(inn_tables.values(), key=lambda h: h.images)
    data = AutomorphismData(Q, aut, inn, [])
    for alpha in aut:
        k = data.key(alpha)
        if k in data._coset:
            continue
        idx = len(data.out)
        data.out.append(alpha)
        for c in inn:
            data._coset[tuple(alpha(c(g)) for g in Q.gens)] = idx
    Q._aut_data = data
    return data
