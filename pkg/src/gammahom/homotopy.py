"""Combinatorial homotopy π^comb_n, composition F∘X and the homology Γ-set H_n(X, F).

``H_n(X, F)(k_+)`` is the set of n-simplices of ``F∘(X ∧ k_+)`` whose faces are
all at the base, modulo the equivalence generated by the two last faces of the
(n+1)-simplices of ``Ω^n``.  Two evaluation routes are provided:

* ``direct`` enumerates the constrained simplices of ``F∘(X ∧ k_+)`` lazily
  (via ``F.kernel``) and closes the relation with union-find;
* ``segal`` is available when ``F`` turns wedges into products (HA, HB).  It
  computes the k = 1 quotient once and identifies a class at arity k with the
  k-tuple of classes of its wedge summands, which is the product law for
  π^comb applied to ``F∘(X ∧ k_+) = (F∘X)^k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ._util import (EnumerationLimitError, Partition, enum_limit, render_label,
                    sorted_labels)
from .gamma import (FinPointedSet, GammaMorphism, GammaSet, NaturalTransformation, PointedMap,
                    all_gamma_morphisms, compose_gamma_morphisms)
from .simplicial import (LevelwiseSimplicialSet, SimplicialMap,
                         TruncatedSimplicialSet, omega_n_levels, smash_with_k)
from .twosets import TwoSet, components


class DescentError(RuntimeError):
    """An induced map is not constant on equivalence classes."""


class FunctorialityError(RuntimeError):
    pass


def _levelwise(X) -> LevelwiseSimplicialSet:
    return X.to_levelwise() if isinstance(X, TruncatedSimplicialSet) else X


def compose_coeffs(F: GammaSet, X: LevelwiseSimplicialSet) -> LevelwiseSimplicialSet:
    """``F∘X`` degreewise, with structure maps ``F(d_i)`` and ``F(s_j)``."""
    X = _levelwise(X)
    limit = enum_limit()
    for q, L in enumerate(X.levels):
        size = F.size(L)
        if size is not None and size > limit:
            raise EnumerationLimitError(f"{F.name}∘X in degree {q}", size, limit)
    levels = [F.eval(L) for L in X.levels]
    faces = [[]]
    for q in range(1, X.dim_cap + 1):
        faces.append([{v: F.apply(X.face_map(q, i), v) for v in levels[q]} for i in range(q + 1)])
    degens = []
    for q in range(X.dim_cap):
        degens.append([{v: F.apply(X.degeneracy_map(q, j), v) for v in levels[q]} for j in range(q + 1)])
    degens.append([])
    return LevelwiseSimplicialSet(levels, faces, degens)


@dataclass
class Quotient:
    """A pointed quotient of ``set0``; ``rep`` sends each element to its class representative."""

    classes: FinPointedSet
    rep: dict
    size0: int = 0
    size1: int = 0

    def __len__(self):
        return len(self.classes)


def _quotient_from_partition(uf: Partition, base, size0: int, size1: int) -> Quotient:
    rep = uf.classes()
    b = rep[base]
    others = sorted_labels(set(rep.values()) - {b})
    return Quotient(FinPointedSet((b, *others), b), rep, size0, size1)


def pi_comb_0(X: LevelwiseSimplicialSet) -> FinPointedSet:
    return pi_comb_quotient(X, 0).classes


def pi_comb_quotient(X: LevelwiseSimplicialSet, n: int) -> Quotient:
    X = _levelwise(X)
    lv = omega_n_levels(X, n)
    uf = Partition(lv.set0)
    for z in lv.set1:
        uf.union(lv.left[z], lv.right[z])
    return _quotient_from_partition(uf, lv.set0.base, len(lv.set0), len(lv.set1))


def pi_comb_n(X: LevelwiseSimplicialSet, n: int) -> FinPointedSet:
    return pi_comb_quotient(X, n).classes


# -- lazy evaluation of the Ω^n levels of F∘Y --------------------------------


def _distinct_maps(maps: Sequence[PointedMap]) -> list:
    seen, out = set(), []
    for f in maps:
        key = tuple(f.table[x] for x in f.source)
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def _level_maps(Y: LevelwiseSimplicialSet, n: int):
    """Maps cutting out degrees 0 and 1 of ``Ω^n(F∘Y)`` inside ``F(Y_n)`` and ``F(Y_{n+1})``."""
    Y.require_cap(n + 1, f"levels of Ω^{n}")
    if n == 0:
        return [], []
    kill0 = [Y.face_map(n, j) for j in range(n + 1)]
    top = [Y.face_map(n + 1, j) for j in range(n + 2)]
    kill1 = top[:n] + _distinct_maps([f.then(g) for f in top for g in kill0])
    return kill0, kill1


def _bounded(it, what: str):
    limit = enum_limit()
    count = 0
    for v in it:
        count += 1
        if count > limit:
            raise EnumerationLimitError(what, count, limit)
        yield v


def kernel_quotient(F: GammaSet, Y: LevelwiseSimplicialSet, n: int) -> Quotient:
    """``π^comb_n(F∘Y)`` without materializing ``F∘Y``."""
    kill0, kill1 = _level_maps(Y, n)
    set0 = list(_bounded(F.kernel(Y.levels[n], kill0), f"{F.name}: degree-{n} simplices of Ω^{n}"))
    uf = Partition(set0)
    dl = Y.face_map(n + 1, n)
    dr = Y.face_map(n + 1, n + 1)
    size1 = 0
    for z in _bounded(F.kernel(Y.levels[n + 1], kill1), f"{F.name}: degree-{n + 1} simplices of Ω^{n}"):
        size1 += 1
        uf.union(F.apply(dl, z), F.apply(dr, z))
    return _quotient_from_partition(uf, F.base(Y.levels[n]), len(set0), size1)


def kernel_two_set(F: GammaSet, Y: LevelwiseSimplicialSet, n: int) -> TwoSet:
    """``π^(2)_n(F∘Y)`` from the constrained enumeration."""
    kill0, kill1 = _level_maps(Y, n)
    set0 = list(_bounded(F.kernel(Y.levels[n], kill0), f"{F.name}: degree-{n} simplices of Ω^{n}"))
    set1 = list(_bounded(F.kernel(Y.levels[n + 1], kill1), f"{F.name}: degree-{n + 1} simplices of Ω^{n}"))
    dl, dr, sn = Y.face_map(n + 1, n), Y.face_map(n + 1, n + 1), Y.degeneracy_map(n, n)
    return TwoSet(set0, set1, {z: F.apply(dl, z) for z in set1}, {z: F.apply(dr, z) for z in set1},
                  {v: F.apply(sn, v) for v in set0}, base=F.base(Y.levels[n]))


# -- homology tables ---------------------------------------------------------


def smash_level_map(Xk: LevelwiseSimplicialSet, Xm: LevelwiseSimplicialSet, q: int, phi: GammaMorphism) -> PointedMap:
    """``id ∧ φ`` in degree ``q`` for the ``(x, j)`` labelling of ``X ∧ k_+``."""
    src, tgt = Xk.levels[q], Xm.levels[q]
    table = {src.base: tgt.base}
    for y in src.non_base:
        x, j = y
        t = phi.table[j]
        table[y] = tgt.base if t == 0 else (x, t)
    return PointedMap(src, tgt, table)


def homology(X, F: GammaSet, n: int, k: int) -> FinPointedSet:
    """``H_n(X, F)(k_+)`` by direct enumeration; elements are class representatives."""
    LX = _levelwise(X)
    return kernel_quotient(F, smash_with_k(LX, k), n).classes


def _morphism_key(phi: GammaMorphism):
    return (phi.k, phi.m, phi.table)


@dataclass
class GammaSetTable:
    """A Γ-set restricted to arities ``0..kmax``: values and all actions between them."""

    kmax: int
    values: dict
    actions: dict  # (k, m, table) -> {value: value}
    method: str = ""
    notes: list = field(default_factory=list)

    def action(self, phi: GammaMorphism) -> dict:
        return self.actions[_morphism_key(phi)]

    def sizes(self) -> list:
        return [len(self.values[k]) for k in range(self.kmax + 1)]

    def check_functoriality(self) -> None:
        for k in range(self.kmax + 1):
            ident = self.action(GammaMorphism.identity(k))
            if any(ident[v] != v for v in self.values[k]):
                raise FunctorialityError(f"identity of {k}_+ does not act trivially")
        mors = {k: [GammaMorphism(*key) for key in self.actions if key[0] == k] for k in range(self.kmax + 1)}
        for f_key, f_tab in self.actions.items():
            f = GammaMorphism(*f_key)
            for g in mors[f.m]:
                g_tab = self.action(g)
                gf = self.action(compose_gamma_morphisms(f, g))
                for v in self.values[f.k]:
                    if gf[v] != g_tab[f_tab[v]]:
                        raise FunctorialityError(f"action of {g.table}∘{f.table} differs at {v!r}")

    def to_json(self) -> dict:
        values = {str(k): [render_label(v) for v in self.values[k]] for k in range(self.kmax + 1)}
        base = {str(k): render_label(self.values[k].base) for k in range(self.kmax + 1)}
        actions = []
        for key in sorted(self.actions):
            tab = self.actions[key]
            actions.append({
                "morphism": {"k": key[0], "m": key[1], "table": list(key[2])},
                "table": {render_label(v): render_label(tab[v]) for v in self.values[key[0]]},
            })
        return {"method": self.method, "values": values, "base": base, "actions": actions}


def gamma_table_of(F: GammaSet, kmax: int) -> GammaSetTable:
    """The Γ-set ``F`` itself, restricted to arities ``<= kmax``."""
    values = {k: F.eval(FinPointedSet.k_plus(k)) for k in range(kmax + 1)}
    actions = {}
    for k in range(kmax + 1):
        for m in range(kmax + 1):
            for phi in all_gamma_morphisms(k, m):
                f = phi.as_pointed_map()
                actions[_morphism_key(phi)] = {v: F.apply(f, v) for v in values[k]}
    return GammaSetTable(kmax, values, actions, method="values")


def _direct_table(LX, F, n, kmax, check_descent: bool) -> GammaSetTable:
    smashed = {k: smash_with_k(LX, k) for k in range(kmax + 1)}
    quotients = {k: kernel_quotient(F, smashed[k], n) for k in range(kmax + 1)}
    values = {k: quotients[k].classes for k in quotients}
    actions = {}
    for k in range(kmax + 1):
        for m in range(kmax + 1):
            rep_m = quotients[m].rep
            for phi in all_gamma_morphisms(k, m):
                f = smash_level_map(smashed[k], smashed[m], n, phi)
                tab = {}
                for v in values[k]:
                    tab[v] = rep_m[F.apply(f, v)]
                if check_descent:
                    for v, r in quotients[k].rep.items():
                        if rep_m[F.apply(f, v)] != tab[r]:
                            raise DescentError(f"action of {phi.table} does not descend at {v!r}")
                actions[_morphism_key(phi)] = tab
    return GammaSetTable(kmax, values, actions, method="direct")


class SegalClassifier:
    """Classes of ``H_n(X, F)(k_+)`` as joins of k classes at arity one."""

    def __init__(self, LX: LevelwiseSimplicialSet, F: GammaSet, n: int):
        if not getattr(F, "special", False):
            raise ValueError(f"{F.name} does not turn wedges into products")
        self.F, self.n, self.LX = F, n, LX
        self.one = smash_with_k(LX, 1)
        self.base_quotient = kernel_quotient(F, self.one, n)
        self._smashed = {1: self.one}
        self._proj: dict = {}
        self._incl: dict = {}

    def smashed(self, k: int) -> LevelwiseSimplicialSet:
        if k not in self._smashed:
            self._smashed[k] = smash_with_k(self.LX, k)
        return self._smashed[k]

    def projection(self, k: int, j: int) -> PointedMap:
        if (k, j) not in self._proj:
            phi = GammaMorphism(k, 1, tuple(1 if t == j else 0 for t in range(k + 1)))
            self._proj[k, j] = smash_level_map(self.smashed(k), self.one, self.n, phi)
        return self._proj[k, j]

    def inclusion(self, k: int, j: int) -> PointedMap:
        if (k, j) not in self._incl:
            phi = GammaMorphism(1, k, (0, j))
            self._incl[k, j] = smash_level_map(self.one, self.smashed(k), self.n, phi)
        return self._incl[k, j]

    def join(self, k: int, parts: Sequence):
        return self.F.segal_join([self.F.apply(self.inclusion(k, j), p) for j, p in enumerate(parts, start=1)])

    def coordinates(self, k: int, v) -> tuple:
        rep = self.base_quotient.rep
        return tuple(rep[self.F.apply(self.projection(k, j), v)] for j in range(1, k + 1))

    def classify(self, k: int, v):
        return self.join(k, self.coordinates(k, v))

    def values(self, k: int) -> FinPointedSet:
        cls = self.base_quotient.classes
        base = self.F.base(self.smashed(k).levels[self.n])
        elems = [self.join(k, parts) for parts in itertools.product(cls.elements, repeat=k)]
        elems.remove(base)
        return FinPointedSet((base, *sorted_labels(elems)), base)


def _segal_table(LX, F, n, kmax) -> GammaSetTable:
    seg = SegalClassifier(LX, F, n)
    values = {k: seg.values(k) for k in range(kmax + 1)}
    actions = {}
    for k in range(kmax + 1):
        for m in range(kmax + 1):
            for phi in all_gamma_morphisms(k, m):
                f = smash_level_map(seg.smashed(k), seg.smashed(m), n, phi)
                actions[_morphism_key(phi)] = {v: seg.classify(m, F.apply(f, v)) for v in values[k]}
    return GammaSetTable(kmax, values, actions, method="segal")


def homology_gamma(X, F: GammaSet, n: int, kmax: int = 3, method: str = "auto",
                   check_descent: bool = True) -> GammaSetTable:
    """``H_n(X, F)`` on arities ``0..kmax`` with all Γ-actions; functoriality is verified."""
    LX = _levelwise(X)
    if method == "auto":
        method = "segal" if getattr(F, "special", False) else "direct"
    if method == "direct":
        table = _direct_table(LX, F, n, kmax, check_descent)
    elif method == "segal":
        table = _segal_table(LX, F, n, kmax)
    else:
        raise ValueError(f"unknown method {method!r}")
    table.check_functoriality()
    return table


def table_isomorphism_check(T: GammaSetTable, U: GammaSetTable, bijections: Mapping) -> None:
    """Verify that the given degreewise maps ``T.values[k] -> U.values[k]`` form an isomorphism."""
    for k in range(T.kmax + 1):
        b = bijections[k]
        image = [b[v] for v in T.values[k]]
        if len(set(image)) != len(image) or set(image) != set(U.values[k]):
            raise AssertionError(f"arity {k}: not a bijection onto the target values")
        if b[T.values[k].base] != U.values[k].base:
            raise AssertionError(f"arity {k}: base point not preserved")
    for key, tab in T.actions.items():
        utab = U.actions[key]
        bk, bm = bijections[key[0]], bijections[key[1]]
        for v in T.values[key[0]]:
            if bm[tab[v]] != utab[bk[v]]:
                raise AssertionError(f"action {key} not intertwined at {v!r}")


def gamma_two_set(X, F: GammaSet, n: int, kmax: int = 3):
    """Per-arity ``π^(2)_n(F∘(X ∧ k_+))`` with the Γ-actions on vertices and edges."""
    LX = _levelwise(X)
    smashed = {k: smash_with_k(LX, k) for k in range(kmax + 1)}
    two = {k: kernel_two_set(F, smashed[k], n) for k in range(kmax + 1)}
    actions = {}
    for k in range(kmax + 1):
        for m in range(kmax + 1):
            for phi in all_gamma_morphisms(k, m):
                f0 = smash_level_map(smashed[k], smashed[m], n, phi)
                f1 = smash_level_map(smashed[k], smashed[m], n + 1, phi)
                actions[_morphism_key(phi)] = ({v: F.apply(f0, v) for v in two[k].F0},
                                               {z: F.apply(f1, z) for z in two[k].F1})
    return two, actions


def components_table(two: Mapping, actions: Mapping, kmax: int) -> GammaSetTable:
    """Apply the components functor arity by arity."""
    comps = {k: components(two[k]) for k in range(kmax + 1)}
    values = {k: comps[k][0] for k in comps}
    out = {}
    for key, (f0, _) in actions.items():
        rep_m = comps[key[1]][1]
        out[key] = {v: rep_m[f0[v]] for v in values[key[0]]}
    return GammaSetTable(kmax, values, out, method="components")


# -- induced maps ------------------------------------------------------------


def induced_by_space(f: SimplicialMap, F: GammaSet, n: int, k: int) -> dict:
    """``H_n(f, F)(k_+)`` as a map between class representatives."""
    X, Y = f.source, f.target
    Xk, Yk = smash_with_k(X, k), smash_with_k(Y, k)
    qx, qy = kernel_quotient(F, Xk, n), kernel_quotient(F, Yk, n)
    comp = f.components[n]
    table = {Xk.base(n): Yk.base(n)}
    for y in Xk.levels[n].non_base:
        x, j = y
        t = comp[x]
        table[y] = Yk.base(n) if t == Y.base(n) else (t, j)
    fk = PointedMap(Xk.levels[n], Yk.levels[n], table)
    out = {}
    for v, r in qx.rep.items():
        image = qy.rep[F.apply(fk, v)]
        if out.setdefault(r, image) != image:
            raise DescentError(f"H_n(f) does not descend at {v!r}")
    return out


def induced_by_coeff(h: NaturalTransformation, X: LevelwiseSimplicialSet, n: int, k: int) -> dict:
    """``H_n(X, h)(k_+)`` as a map between class representatives."""
    Xk = smash_with_k(_levelwise(X), k)
    qs, qt = kernel_quotient(h.source, Xk, n), kernel_quotient(h.target, Xk, n)
    L = Xk.levels[n]
    out = {}
    for v, r in qs.rep.items():
        image = qt.rep[h(L, v)]
        if out.setdefault(r, image) != image:
            raise DescentError(f"H_n(X, h) does not descend at {v!r}")
    return out
