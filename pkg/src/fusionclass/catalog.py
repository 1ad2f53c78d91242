"""Built-in group catalog and the plain-text catalog file format.

A catalog file holds blank-line separated records::

    name D8
    degree 4
    gen (0 1 2 3)
    gen (0 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .errors import CatalogFormatError, UnknownGroup
from .groups import FiniteGroup, Permutation, closure, is_p_power


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: FiniteGroup
    source: str = "builtin"


def _cycle(points: Iterable[int], degree: int) -> Permutation:
    pts = list(points)
    images = list(range(degree))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        images[a] = b
    return Permutation(tuple(images))


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return closure([Permutation.identity(1)], "C1")
    return closure([_cycle(range(n), n)], f"C{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given order, acting on the vertices of a regular polygon."""
    n = order // 2
    rot = _cycle(range(n), n)
    refl = Permutation(tuple((-i) % n for i in range(n)))
    return closure([rot, refl], f"D{order}")


def quaternion() -> FiniteGroup:
    # left-regular action of Q8 with elements ordered 1,-1,i,-i,j,-j,k,-k
    i = Permutation((2, 3, 1, 0, 6, 7, 5, 4))
    j = Permutation((4, 5, 7, 6, 1, 0, 2, 3))
    return closure([i, j], "Q8")


def symmetric(n: int) -> FiniteGroup:
    if n == 2:
        return closure([_cycle([0, 1], 2)], "S2")
    return closure([_cycle(range(n), n), _cycle([0, 1], n)], f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [_cycle([0, 1, k], n) for k in range(2, n)]
    return closure(gens, f"A{n}")


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    degree = p * rank
    gens = [_cycle(range(k * p, (k + 1) * p), degree) for k in range(rank)]
    return closure(gens, "x".join([f"C{p}"] * rank))


@lru_cache(maxsize=None)
def _builtin() -> tuple[FiniteGroup, ...]:
    groups = [cyclic(n) for n in range(1, 13)]
    groups += [dihedral(o) for o in (8, 10, 12, 14, 16)]
    groups.append(quaternion())
    groups += [symmetric(n) for n in (3, 4, 5)]
    groups += [alternating(n) for n in (4, 5)]
    groups += [elementary_abelian(p, r) for p in (2, 3) for r in (2, 3)]
    return tuple(groups)


def builtin_catalog() -> dict[str, CatalogEntry]:
    return {g.name: CatalogEntry(g.name, g) for g in _builtin()}


def p_group_catalog(p: int, max_order: int) -> list[FiniteGroup]:
    """Built-in p-groups (including the trivial group) of order at most ``max_order``."""
    return [g for g in _builtin()
            if g.order <= max_order and is_p_power(g.order, p)]


def parse_catalog(text: str, source: str = "<string>") -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    for block in _records(text):
        name, degree, gens = None, None, []
        for lineno, line in block:
            key, _, rest = line.partition(" ")
            rest = rest.strip()
            if key == "name":
                name = rest
            elif key == "degree":
                try:
                    degree = int(rest)
                except ValueError:
                    raise CatalogFormatError(f"{source}:{lineno}: bad degree {rest!r}") from None
            elif key == "gen":
                gens.append((lineno, rest))
            else:
                raise CatalogFormatError(f"{source}:{lineno}: unknown field {key!r}")
        if name is None or degree is None or degree < 1:
            raise CatalogFormatError(f"{source}: record needs 'name' and a positive 'degree'")
        if name in entries:
            raise CatalogFormatError(f"{source}: duplicate group name {name!r}")
        perms = []
        for lineno, txt in gens:
            try:
                perms.append(Permutation.from_cycles(txt, degree))
            except ValueError as exc:
                raise CatalogFormatError(f"{source}:{lineno}: {exc}") from None
        if not perms:
            perms = [Permutation.identity(degree)]
        entries[name] = CatalogEntry(name, closure(perms, name), source)
    return entries


def _records(text: str):
    block = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block


def load_catalog(path: str | Path) -> dict[str, CatalogEntry]:
    path = Path(path)
    return parse_catalog(path.read_text(), str(path))


def format_catalog(groups: Iterable[FiniteGroup]) -> str:
    records = []
    for g in groups:
        lines = [f"name {g.name}", f"degree {g.degree}"]
        lines += [f"gen {s.cycles()}" for s in g.generators]
        records.append("\n".join(lines))
    return "\n\n".join(records) + "\n"


def lookup(name: str, catalog: dict[str, CatalogEntry] | None = None) -> FiniteGroup:
    catalog = builtin_catalog() if catalog is None else catalog
    try:
        return catalog[name].group
    except KeyError:
        raise UnknownGroup(f"unknown group {name!r}") from None
