"""Rep(Q, G) and InjRep(Q, G) as Out(Q)-sets and their permutation modules over F_p.

Out(Q) acts on conjugacy classes of homomorphisms by
``alpha . [rho] = [rho o alpha^-1]``; this is a left action and every
report carries the convention string :data:`ACTION_CONVENTION`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg_fp
from .errors import ActionMismatch, FieldMismatch, QMismatch
from .groups import (
    AutomorphismData,
    GroupLike,
    Homomorphism,
    Subgroup,
    as_subgroup,
    automorphism_classes,
    homomorphisms,
    is_prime,
)
from .settings import get_settings

ACTION_CONVENTION = "left: alpha.[rho] = [rho o alpha^-1]"
EXHAUSTIVE_LIMIT = 2 ** 20
RANDOM_TRIES = 32
EXTENSION_TRIES = 24

Table = tuple[int, ...]


def _inner_maps(T: Subgroup) -> list[tuple[int, ...]]:
    from .burnside import _inner_maps as inner

    return inner(T)


@dataclass(eq=False)
class RepSet:
    Q: Subgroup
    G: Subgroup
    injective_only: bool
    classes: list[Homomorphism]
    class_of: dict[Table, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def aut(self) -> AutomorphismData:
        return automorphism_classes(self.Q)

    @cached_property
    def _inverse_tables(self) -> dict[tuple[int, ...], dict[int, int]]:
        return {}

    def _inverse(self, alpha: Homomorphism) -> dict[int, int]:
        key = alpha.images
        inv = self._inverse_tables.get(key)
        if inv is None:
            inv = {y: x for x, y in zip(self.Q.elements, alpha.images)}
            self._inverse_tables[key] = inv
        return inv

    def act(self, alpha: Homomorphism, i: int) -> int:
        """Class index of ``[rho_i o alpha^-1]``."""
        inv = self._inverse(alpha)
        rho = self.classes[i].as_dict()
        return self.class_of[tuple(rho[inv[x]] for x in self.Q.elements)]

    def action_of(self, alpha: Homomorphism) -> tuple[int, ...]:
        inv = self._inverse(alpha)
        pre = [inv[x] for x in self.Q.elements]
        pos = self.Q.pos
        idx = [pos[x] for x in pre]
        return tuple(self.class_of[tuple(rho.images[k] for k in idx)] for rho in self.classes)

    @cached_property
    def out_action(self) -> dict[str, tuple[int, ...]]:
        """Permutation of class indices for each generator of Out(Q)."""
        aut = self.aut
        return {f"out{i}": self.action_of(aut.out[i]) for i in aut.out_generators}

    def orbits(self) -> list[list[int]]:
        parent = list(range(len(self.classes)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for perm in self.out_action.values():
            for i, j in enumerate(perm):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in range(len(parent)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())


def rep_set(Q: GroupLike, G: GroupLike, injective_only: bool = False) -> RepSet:
    """Hom(Q, G) (or the injective part) modulo conjugation in G."""
    Q, T = as_subgroup(Q), as_subgroup(G)
    cache = Q.__dict__.setdefault("_rep_cache", {})
    key = (id(T.group), T.member_set, injective_only)
    if key in cache:
        return cache[key]
    inner = _inner_maps(T)
    reps = []
    orbits = []
    seen: set[Table] = set()
    for hom in homomorphisms(Q, T, injective_only):
        if hom.images in seen:
            continue
        orbit = {tuple(ch[v] for v in hom.images) for ch in inner}
        seen |= orbit
        reps.append(min(orbit))
        orbits.append(orbit)
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    classes, class_of = [], {}
    for new_i, old_i in enumerate(order):
        classes.append(Homomorphism(Q, T, reps[old_i]))
        for t in orbits[old_i]:
            class_of[t] = new_i
    result = RepSet(Q, T, injective_only, classes, class_of)
    cache[key] = result
    return result


@dataclass(eq=False)
class MatrixModuleFp:
    """A module over F_p given by one invertible matrix per acting generator.

    Permutation modules keep their permutations in ``perms`` and build the
    matrices on demand.
    """

    p: int
    dim: int
    acting_generators: list[str]
    perms: list[tuple[int, ...]] | None = None
    _matrices: list[np.ndarray] | None = field(default=None, repr=False)

    @classmethod
    def from_matrices(cls, p: int, labels: list[str], matrices: list[np.ndarray],
                      dim: int | None = None) -> MatrixModuleFp:
        mats = [np.array(m, dtype=np.int64) % p for m in matrices]
        if dim is None:
            if not mats:
                raise ValueError("dimension needed when there are no acting generators")
            dim = mats[0].shape[0]
        if any(m.shape != (dim, dim) for m in mats):
            raise ValueError(f"matrices must be {dim} x {dim}")
        return cls(p, dim, list(labels), None, mats)

    @property
    def matrices(self) -> list[np.ndarray]:
        if self._matrices is None:
            mats = []
            for perm in self.perms or []:
                M = np.zeros((self.dim, self.dim), dtype=np.int64)
                # basis vector e_i goes to e_{perm[i]}
                M[list(perm), list(range(self.dim))] = 1
                mats.append(M)
            self._matrices = mats
        return self._matrices

    @property
    def is_permutation(self) -> bool:
        return self.perms is not None


def linearize(X: RepSet, p: int) -> MatrixModuleFp:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    labels = list(X.out_action)
    return MatrixModuleFp(p, len(X), labels, [X.out_action[k] for k in labels])


def _joint_group(M: MatrixModuleFp, N: MatrixModuleFp, limit: int) -> list[tuple[tuple, tuple]] | None:
    """Elements of the group generated by the pairs (M_g, N_g), for permutation modules."""
    ident = (tuple(range(M.dim)), tuple(range(N.dim)))
    gens = list(zip(M.perms, N.perms))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a, b in frontier:
            for s, t in gens:
                c = (tuple(s[i] for i in a), tuple(t[i] for i in b))
                if c not in seen:
                    seen.add(c)
                    if len(seen) > limit:
                        return None
                    nxt.append(c)
        frontier = nxt
    return sorted(seen)


def _perm_order(perm: tuple[int, ...]) -> int:
    import math

    seen, order = set(), 1
    for s in range(len(perm)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        order = order * n // math.gcd(order, n)
    return order


def _orbital_basis(M: MatrixModuleFp, N: MatrixModuleFp) -> list[np.ndarray]:
    """Intertwiners F_p X -> F_p Y: indicator matrices of orbits on Y x X."""
    nx, ny = M.dim, N.dim
    parent = list(range(nx * ny))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, t in zip(M.perms, N.perms):
        for y in range(ny):
            for x in range(nx):
                a, b = find(y * nx + x), find(t[y] * nx + s[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for k in range(nx * ny):
        orbits.setdefault(find(k), []).append(k)
    basis = []
    for cells in orbits.values():
        B = np.zeros((ny, nx), dtype=np.int64)
        for k in cells:
            B[k // nx, k % nx] = 1
        basis.append(B)
    return basis


def intertwiner_basis(M: MatrixModuleFp, N: MatrixModuleFp) -> list[np.ndarray]:
    """A basis of {T : T M_g = N_g T for every acting generator g}."""
    _check_compatible(M, N)
    if M.is_permutation and N.is_permutation:
        return _orbital_basis(M, N)
    m, n, p = M.dim, N.dim, M.p
    if m == 0 or n == 0:
        return []
    # row-major vec(T): vec(T A) = (I kron A^T) vec T, vec(B T) = (B kron I) vec T
    blocks = [np.kron(np.eye(n, dtype=np.int64), A.T) - np.kron(B, np.eye(m, dtype=np.int64))
              for A, B in zip(M.matrices, N.matrices)]
    if not blocks:
        return [v.reshape(n, m) for v in linalg_fp.nullspace(np.zeros((0, n * m), dtype=np.int64), p)]
    system = np.vstack(blocks) % p
    return [v.reshape(n, m) for v in linalg_fp.nullspace(system, p)]


def _check_compatible(M: MatrixModuleFp, N: MatrixModuleFp):
    if M.p != N.p:
        raise FieldMismatch(f"modules over F_{M.p} and F_{N.p}")
    if M.acting_generators != N.acting_generators:
        raise ActionMismatch("modules are acted on by different generator lists")


def _combine(basis: list[np.ndarray], coeffs, p: int) -> np.ndarray:
    T = np.zeros_like(basis[0])
    for c, B in zip(coeffs, basis):
        if c:
            T = T + int(c) * B
    return T % p


def _extension_field_test(basis: list[np.ndarray], p: int, rng: random.Random) -> bool:
    """Look for an invertible intertwiner over a large extension of F_p.

    An element of F_{p^e} is written as an e x e matrix over F_p, so the
    combination sum t_i B_i over the extension becomes sum B_i kron T_i
    over F_p; it is invertible iff the extension-field determinant is
    nonzero. By Noether-Deuring, isomorphism over the extension implies
    isomorphism over F_p, so a hit is a certificate.
    """
    n = basis[0].shape[0]
    e = 1
    while p ** e < 64 * max(n, 1):
        e += 1
    C = linalg_fp.companion(linalg_fp.irreducible_polynomial(p, e), p)
    powers = [np.eye(e, dtype=np.int64)]
    for _ in range(e - 1):
        powers.append((powers[-1] @ C) % p)
    for _ in range(EXTENSION_TRIES):
        big = np.zeros((n * e, n * e), dtype=np.int64)
        for B in basis:
            T = sum(rng.randrange(p) * P for P in powers) % p
            big = (big + np.kron(B, T)) % p
        if linalg_fp.is_invertible(big, p):
            return True
    return False


def _fixed_points(perm: tuple[int, ...]) -> int:
    return sum(1 for i, j in enumerate(perm) if i == j)


def modules_isomorphic(M: MatrixModuleFp, N: MatrixModuleFp, seed: int | None = None) -> bool:
    """Decide whether two F_p-modules over the same acting generators are isomorphic."""
    _check_compatible(M, N)
    p = M.p
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    if M.is_permutation and N.is_permutation:
        if M.perms == N.perms:
            return True
        joint = _joint_group(M, N, limit=max(1, 2_000_000 // M.dim))
        if joint is not None:
            # Brauer characters of permutation modules are fixed-point counts
            for a, b in joint:
                if _perm_order(a) % p and _perm_order(b) % p:
                    if _fixed_points(a) != _fixed_points(b):
                        return False
            if len(joint) % p:
                return True
    elif all((A == B).all() for A, B in zip(M.matrices, N.matrices)):
        return True
    basis = intertwiner_basis(M, N)
    if not basis:
        return False
    if len(intertwiner_basis(M, M)) != len(basis) or len(intertwiner_basis(N, N)) != len(basis):
        return False
    rng = random.Random(get_settings().seed if seed is None else seed)
    for _ in range(RANDOM_TRIES):
        T = _combine(basis, [rng.randrange(p) for _ in basis], p)
        if linalg_fp.is_invertible(T, p):
            return True
    if _extension_field_test(basis, p, rng):
        return True
    k = len(basis)
    if p ** k <= EXHAUSTIVE_LIMIT:
        # projective enumeration: first nonzero coefficient equal to 1
        for lead in range(k):
            for tail in itertools.product(range(p), repeat=k - lead - 1):
                T = _combine(basis[lead:], (1,) + tail, p)
                if linalg_fp.is_invertible(T, p):
                    return True
    return False


def out_sets_isomorphic(X: RepSet, Y: RepSet) -> bool:
    """Isomorphism of Out(Q)-sets: orbits matched by equal point stabilizers."""
    if X.Q != Y.Q:
        raise QMismatch("Rep sets over different Q")
    if len(X) != len(Y):
        return False
    outs = X.aut.out

    def stabilizer(R: RepSet, i: int) -> frozenset[int]:
        return frozenset(k for k, alpha in enumerate(outs) if R.act(alpha, i) == i)

    x_orbits, y_orbits = X.orbits(), Y.orbits()
    if sorted(map(len, x_orbits)) != sorted(map(len, y_orbits)):
        return False
    unmatched = list(y_orbits)
    for orb in x_orbits:
        stab = stabilizer(X, orb[0])
        for cand in unmatched:
            if len(cand) != len(orb):
                continue
            if any(all(Y.act(outs[k], y) == y for k in stab) for y in cand):
                unmatched.remove(cand)
                break
        else:
            return False
    return True


def rep_to_dict(X: RepSet, p: int | None = None) -> dict:
    A, B = X.Q.group, X.G.group
    out = {
        "Q": X.Q.label(),
        "G": X.G.label(),
        "injective_only": X.injective_only,
        "action_convention": ACTION_CONVENTION,
        "classes": [
            {"generator_images": [[A.perm(g).cycles(), B.perm(rho(g)).cycles()] for g in X.Q.gens]}
            for rho in X.classes
        ],
        "out_order": len(X.aut.out),
        "out_generators": {
            label: [[A.perm(g).cycles(), A.perm(X.aut.out[int(label[3:])](g)).cycles()]
                    for g in X.Q.gens]
            for label in X.out_action
        },
        "action": {label: list(perm) for label, perm in X.out_action.items()},
    }
    if p is not None:
        out["prime"] = p
        out["dim"] = len(X)
    return out
