"""Fault injection for exercising the acceptance runner's failure path.

Only ``"sphere-off-by-one"`` is recognized: sphere membership gains one
point whose norm is ``t + 1``.
"""
from contextlib import contextmanager

KNOWN = frozenset({"sphere-off-by-one"})
_active = set()


def active(name: str) -> bool:
    return name in _active


@contextmanager
def inject(name: str):
    if name not in KNOWN:
        raise ValueError(f"unknown fault {name!r}; known: {sorted(KNOWN)}")
    _active.add(name)
    try:
        yield
    finally:
        _active.discard(name)
