"""Presheaves on the two-object category ([0], [1]): 2-sets, M-sets and Ω.

A 2-set is a pair of finite sets ``F0`` (vertices) and ``F1`` (edges) with
boundaries ``b0, b1: F1 -> F0`` and a common section ``s: F0 -> F1``.  The
equivalent description is a right action of the three-element monoid
``{1, m0, m1}`` with ``m_j x = m_j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from ._util import Partition, sorted_labels
from .gamma import FinPointedSet
from .simplicial import LevelwiseSimplicialSet, omega_n_levels


class TwoSetError(ValueError):
    pass


# Edge names of the subobject classifier.  Orientation: b0 is the source.
TRUE, FALSE = "True", "False"
REPAIR, DOUBT, CHECK = "Repair", "Doubt", "Check"
CLASSIFIER_EDGES = (FALSE, TRUE, REPAIR, DOUBT, CHECK)


@dataclass(frozen=True)
class TwoSet:
    F0: tuple
    F1: tuple
    b0: Mapping
    b1: Mapping
    s: Mapping
    base: Hashable = None  # a vertex when the 2-set is pointed

    def __post_init__(self):
        object.__setattr__(self, "F0", tuple(self.F0))
        object.__setattr__(self, "F1", tuple(self.F1))
        for name in ("b0", "b1", "s"):
            object.__setattr__(self, name, dict(getattr(self, name)))
        self.validate()

    @property
    def pointed(self) -> bool:
        return self.base is not None

    def validate(self) -> None:
        V, E = set(self.F0), set(self.F1)
        if len(V) != len(self.F0) or len(E) != len(self.F1):
            raise TwoSetError("labels must be distinct")
        for name in ("b0", "b1"):
            b = getattr(self, name)
            for e in self.F1:
                if b.get(e, _MISSING) not in V:
                    raise TwoSetError(f"{name} is not a map F1 -> F0 at {e!r}")
        for v in self.F0:
            e = self.s.get(v, _MISSING)
            if e not in E:
                raise TwoSetError(f"s is not a map F0 -> F1 at {v!r}")
            if self.b0[e] != v or self.b1[e] != v:
                raise TwoSetError(f"b_j s = id fails at {v!r}")
        if self.pointed and self.base not in V:
            raise TwoSetError(f"base {self.base!r} is not a vertex")

    def degenerate_edges(self) -> frozenset:
        return frozenset(self.s.values())

    def to_json(self) -> dict:
        out = {
            "F0": list(self.F0),
            "F1": list(self.F1),
            "b0": {_key(e): self.b0[e] for e in self.F1},
            "b1": {_key(e): self.b1[e] for e in self.F1},
            "s": {_key(v): self.s[v] for v in self.F0},
        }
        if self.pointed:
            out["base"] = self.base
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TwoSet":
        try:
            F0 = [_freeze(v) for v in data["F0"]]
            F1 = [_freeze(e) for e in data["F1"]]
            lookup0 = {_key(v): v for v in F0}
            lookup1 = {_key(e): e for e in F1}
            b0 = {lookup1[k]: _freeze(v) for k, v in data["b0"].items()}
            b1 = {lookup1[k]: _freeze(v) for k, v in data["b1"].items()}
            s = {lookup0[k]: _freeze(v) for k, v in data["s"].items()}
        except KeyError as exc:
            raise TwoSetError(f"2-set JSON: missing field or unknown label {exc}") from None
        return cls(F0, F1, b0, b1, s, base=_freeze(data.get("base")))

    @classmethod
    def load(cls, path) -> "TwoSet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


_MISSING = object()


def _freeze(v):
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def _key(v) -> str:
    return v if isinstance(v, str) else json.dumps(_thaw(v))


def _thaw(v):
    return [_thaw(x) for x in v] if isinstance(v, tuple) else v


@dataclass(frozen=True)
class MSet:
    """A finite set with a right action of ``{1, m0, m1}``."""

    carrier: tuple
    act0: Mapping
    act1: Mapping

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "act0", dict(self.act0))
        object.__setattr__(self, "act1", dict(self.act1))
        acts = (self.act0, self.act1)
        members = set(self.carrier)
        for x in self.carrier:
            for a in acts:
                if a.get(x, _MISSING) not in members:
                    raise TwoSetError(f"action undefined at {x!r}")
            for i, j in itertools.product(range(2), repeat=2):
                if acts[i][acts[j][x]] != acts[j][x]:
                    raise TwoSetError(f"action law act{i}∘act{j} = act{j} fails at {x!r}")


def twoset_to_mset(T: TwoSet) -> MSet:
    """Carrier ``F1`` with ``T_j = s ∘ b_j``."""
    return MSet(T.F1, {e: T.s[T.b0[e]] for e in T.F1}, {e: T.s[T.b1[e]] for e in T.F1})


def mset_to_twoset(M: MSet, base=None) -> TwoSet:
    """Vertices are the common range of the two actions, included as degenerate edges."""
    r0 = sorted_labels({M.act0[x] for x in M.carrier})
    r1 = set(M.act1[x] for x in M.carrier)
    if set(r0) != r1:
        raise TwoSetError("ranges of act0 and act1 differ")
    return TwoSet(r0, M.carrier, M.act0, M.act1, {v: v for v in r0}, base=base)


def is_morphism(G: TwoSet, H: TwoSet, f0: Mapping, f1: Mapping) -> bool:
    for e in G.F1:
        if f0[G.b0[e]] != H.b0[f1[e]] or f0[G.b1[e]] != H.b1[f1[e]]:
            return False
    return all(f1[G.s[v]] == H.s[f0[v]] for v in G.F0)


def all_morphisms(G: TwoSet, H: TwoSet):
    """Enumerate every 2-set morphism ``G -> H`` as ``(f0, f1)`` dicts."""
    for img0 in itertools.product(H.F0, repeat=len(G.F0)):
        f0 = dict(zip(G.F0, img0))
        degenerate = {G.s[v]: H.s[f0[v]] for v in G.F0}
        free = [e for e in G.F1 if e not in degenerate]
        choices = []
        for e in free:
            src, tgt = f0[G.b0[e]], f0[G.b1[e]]
            choices.append([x for x in H.F1 if H.b0[x] == src and H.b1[x] == tgt])
        for img1 in itertools.product(*choices):
            f1 = dict(degenerate)
            f1.update(zip(free, img1))
            yield f0, f1


def components(T: TwoSet):
    """Vertices modulo the equivalence generated by the edges.

    Returns ``(classes, rep)`` where ``rep`` maps each vertex to the least
    member of its class.  ``classes`` is a :class:`FinPointedSet` when ``T``
    is pointed, otherwise a sorted tuple of representatives.
    """
    uf = Partition(T.F0)
    for e in T.F1:
        uf.union(T.b0[e], T.b1[e])
    rep = uf.classes()
    reps = sorted_labels(set(rep.values()))
    if T.pointed:
        b = rep[T.base]
        reps.remove(b)
        return FinPointedSet((b, *reps), b), rep
    return tuple(reps), rep


def subobject_classifier() -> TwoSet:
    F0 = (FALSE, TRUE)
    b0 = {FALSE: FALSE, TRUE: TRUE, REPAIR: FALSE, DOUBT: TRUE, CHECK: TRUE}
    b1 = {FALSE: FALSE, TRUE: TRUE, REPAIR: TRUE, DOUBT: FALSE, CHECK: TRUE}
    return TwoSet(F0, CLASSIFIER_EDGES, b0, b1, {FALSE: FALSE, TRUE: TRUE})


@dataclass(frozen=True)
class SubTwoSet:
    vertices: frozenset
    edges: frozenset


def check_subobject(G: TwoSet, sub: SubTwoSet) -> None:
    V, E = set(G.F0), set(G.F1)
    if not sub.vertices <= V or not sub.edges <= E:
        raise TwoSetError("subobject labels are not in G")
    for e in sub.edges:
        for b in (G.b0, G.b1):
            if b[e] not in sub.vertices:
                raise TwoSetError(f"subobject not closed under boundaries at edge {e!r}")
    for v in sub.vertices:
        if G.s[v] not in sub.edges:
            raise TwoSetError(f"subobject not closed under s at vertex {v!r}")


def subobject_from_labels(G: TwoSet, labels: Iterable) -> SubTwoSet:
    """Read a mixed list of vertex and edge labels; degenerate edges of listed vertices are added."""
    labels = set(labels)
    vertices = frozenset(v for v in G.F0 if v in labels)
    edges = frozenset(e for e in G.F1 if e in labels) | {G.s[v] for v in vertices}
    unknown = labels - set(G.F0) - set(G.F1)
    if unknown:
        raise TwoSetError(f"unknown labels {sorted_labels(unknown)}")
    sub = SubTwoSet(vertices, frozenset(edges))
    check_subobject(G, sub)
    return sub


def classify(G: TwoSet, sub: SubTwoSet):
    """The classifying morphism ``G -> Ω`` of a subobject, as ``(f0, f1)``."""
    check_subobject(G, sub)
    f0 = {v: TRUE if v in sub.vertices else FALSE for v in G.F0}
    f1 = {}
    for e in G.F1:
        if e in sub.edges:
            f1[e] = TRUE
            continue
        src, tgt = G.b0[e] in sub.vertices, G.b1[e] in sub.vertices
        if src and tgt:
            f1[e] = CHECK
        elif src:
            f1[e] = DOUBT
        elif tgt:
            f1[e] = REPAIR
        else:
            f1[e] = FALSE
    return f0, f1


def preimage_of_true(G: TwoSet, f0: Mapping, f1: Mapping) -> SubTwoSet:
    return SubTwoSet(frozenset(v for v in G.F0 if f0[v] == TRUE),
                     frozenset(e for e in G.F1 if f1[e] == TRUE))


def all_subobjects(G: TwoSet):
    for r in range(len(G.F0) + 1):
        for verts in itertools.combinations(G.F0, r):
            V = frozenset(verts)
            forced = {G.s[v] for v in V}
            optional = [e for e in G.F1 if e not in forced and G.b0[e] in V and G.b1[e] in V]
            for r2 in range(len(optional) + 1):
                for extra in itertools.combinations(optional, r2):
                    yield SubTwoSet(V, frozenset(forced | set(extra)))


def small_twosets(max_edges: int):
    """All 2-sets with ``|F1| <= max_edges`` on vertex labels ``0..n-1`` (not up to isomorphism)."""
    for n0 in range(0, max_edges + 1):
        V = tuple(range(n0))
        for extra in range(0, max_edges - n0 + 1):
            ends = list(itertools.product(V, V))
            for choice in itertools.combinations_with_replacement(range(len(ends)), extra):
                edges = [("s", v) for v in V] + [("e", i) for i in range(extra)]
                b0 = {("s", v): v for v in V}
                b1 = dict(b0)
                for i, c in enumerate(choice):
                    b0[("e", i)], b1[("e", i)] = ends[c]
                yield TwoSet(V, edges, b0, b1, {v: ("s", v) for v in V})


def quiver_to_twoset(V: Sequence, E: Sequence, d0: Mapping, d1: Mapping) -> TwoSet:
    """``F0 = V`` and ``F1 = V ⊔ E``; edges are tagged ``("V", v)`` and ``("E", e)``."""
    F1 = [("V", v) for v in V] + [("E", e) for e in E]
    b0 = {("V", v): v for v in V}
    b1 = dict(b0)
    for e in E:
        b0[("E", e)] = d0[e]
        b1[("E", e)] = d1[e]
    return TwoSet(tuple(V), F1, b0, b1, {v: ("V", v) for v in V})


def pi2_zero(X: LevelwiseSimplicialSet) -> TwoSet:
    X.require_cap(1, "π^(2)_0")
    L0, L1 = X.levels[0], X.levels[1]
    return TwoSet(L0.elements, L1.elements, X.faces[1][0], X.faces[1][1], X.degeneracies[0][0],
                  base=L0.base)


def pi2_n(X: LevelwiseSimplicialSet, n: int) -> TwoSet:
    lv = omega_n_levels(X, n)
    return TwoSet(lv.set0.elements, lv.set1.elements, lv.left, lv.right, lv.section, base=lv.set0.base)


def is_isomorphic(G: TwoSet, H: TwoSet) -> bool:
    """Brute-force isomorphism test for small 2-sets."""
    if len(G.F0) != len(H.F0) or len(G.F1) != len(H.F1):
        return False
    for f0, f1 in all_morphisms(G, H):
        if len(set(f0.values())) == len(G.F0) and len(set(f1.values())) == len(G.F1):
            if G.pointed and H.pointed and f0[G.base] != H.base:
                continue
            return True
    return False
