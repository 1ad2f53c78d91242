"""Enumeration caps and the seed for randomized searches.

Settings live in a context variable so that callers (the CLI, tests) can
scope overrides without threading a parameter through every function::

    with use_settings(max_order=720):
        closure(gens)
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import asdict, dataclass, replace
from typing import Iterator


@dataclass(frozen=True)
class Settings:
    max_order: int = 5040
    max_subgroup_ambient: int = 512
    max_hom_source: int = 128
    max_biset: int = 10000
    seed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


_current: contextvars.ContextVar[Settings] = contextvars.ContextVar(
    "fusionclass_settings", default=Settings()
)


def get_settings() -> Settings:
    return _current.get()


@contextlib.contextmanager
def use_settings(settings: Settings | None = None, **overrides) -> Iterator[Settings]:
    base = settings if settings is not None else _current.get()
    new = replace(base, **overrides) if overrides else base
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)
