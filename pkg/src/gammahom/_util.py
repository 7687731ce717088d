"""Small shared helpers: deterministic ordering, union-find, rational formatting."""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Hashable, Iterable

DEFAULT_ENUM_LIMIT = 2**20
ENUM_LIMIT_ENV = "GAMMAHOM_ENUM_LIMIT"


def enum_limit() -> int:
    """Per-degree enumeration guard, overridable from the environment."""
    raw = os.environ.get(ENUM_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    return int(raw)


class EnumerationLimitError(RuntimeError):
    """Raised when an enumeration would exceed the configured size guard."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: enumeration size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def sort_key(x):
    # total order on the label types used in this package
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, (int, Fraction)):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(sort_key(y) for y in x))
    if isinstance(x, frozenset):
        return (4, tuple(sorted(sort_key(y) for y in x)))
    return (5, repr(x))


def sorted_labels(items: Iterable) -> list:
    return sorted(items, key=sort_key)


class Partition:
    """Union-find with path compression; classes are reported by their least member."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {}
        for x in items:
            self._parent[x] = x

    def add(self, x) -> None:
        self._parent.setdefault(x, x)

    def __contains__(self, x) -> bool:
        return x in self._parent

    def find(self, x):
        parent = self._parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if sort_key(rb) < sort_key(ra):
            ra, rb = rb, ra
        self._parent[rb] = ra
        return True

    def classes(self) -> dict:
        """Map each element to the least member of its class."""
        groups: dict = {}
        for x in self._parent:
            groups.setdefault(self.find(x), []).append(x)
        rep = {}
        for members in groups.values():
            least = min(members, key=sort_key)
            for m in members:
                rep[m] = least
        return rep


def fmt_q(q) -> str:
    """Serialize a rational as "p/q" in lowest terms (integers without denominator)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_q(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def render_label(x) -> str:
    """Deterministic human-readable text for a label, used in JSON output."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool) or x is None:
        return str(x)
    if isinstance(x, (int, Fraction)):
        return fmt_q(x)
    if hasattr(x, "collapsed") and hasattr(x, "gen"):
        inner = render_label(x.gen)
        c = x.collapsed
        return inner if not c else "s" + "".join(str(j) for j in reversed(c)) + "(" + inner + ")"
    if isinstance(x, tuple):
        return "(" + ",".join(render_label(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(render_label(y) for y in sorted_labels(x)) + "}"
    if hasattr(x, "support"):
        items = sorted_labels(x.support)
        return "{" + ",".join(f"{render_label(k)}:{fmt_q(x.support[k])}" for k in items) + "}"
    return repr(x)
