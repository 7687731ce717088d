"""Finite pointed sets, morphisms of Γ^op, and Γ-sets (s-modules).

A Γ-set is handled through its extension to an endofunctor of finite pointed
sets: ``eval`` enumerates ``F(X)`` and ``apply`` pushes an element along a
pointed map.  Values of the built-in functors are hashable and canonical:

* ``S`` (the unit s): an element of ``X`` itself;
* ``HA``: a ``frozenset`` of ``(x, a)`` pairs, ``x`` non-base, ``a != 0``;
* ``HB``: a ``frozenset`` of non-base elements (the base point is implicit);
* ``HRLambda`` / ``HR1``: a :class:`RationalWeighting`.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from ._util import EnumerationLimitError, enum_limit, parse_q, sort_key, sorted_labels


class GammaError(ValueError):
    """Malformed Γ^op morphism, monoid table or pointed map."""


@dataclass(frozen=True)
class FinPointedSet:
    elements: tuple
    base: Hashable
    _members: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        members = frozenset(self.elements)
        if len(members) != len(self.elements):
            raise GammaError("pointed set labels must be pairwise distinct")
        if self.base not in members:
            raise GammaError(f"base point {self.base!r} is not an element")
        object.__setattr__(self, "_members", members)

    @classmethod
    def of(cls, elements: Iterable, base) -> "FinPointedSet":
        """Build from any iterable, ordering the labels deterministically."""
        elements = sorted_labels(set(elements) | {base})
        elements.remove(base)
        return cls((base, *elements), base)

    @classmethod
    def k_plus(cls, k: int) -> "FinPointedSet":
        if k < 0:
            raise GammaError("k_+ needs k >= 0")
        return cls(tuple(range(k + 1)), 0)

    @property
    def non_base(self) -> tuple:
        return tuple(x for x in self.elements if x != self.base)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._members


def point() -> FinPointedSet:
    return FinPointedSet(("*",), "*")


def smash_pointed(X: FinPointedSet, Y: FinPointedSet) -> FinPointedSet:
    """Smash product; non-base elements are the pairs ``(x, y)``."""
    base = (X.base, Y.base)
    pairs = [(x, y) for x in X.non_base for y in Y.non_base]
    return FinPointedSet((base, *pairs), base)


@dataclass(frozen=True)
class PointedMap:
    """A base-preserving map between finite pointed sets."""

    source: FinPointedSet
    target: FinPointedSet
    table: Mapping

    def __post_init__(self):
        if self.table.get(self.source.base, self.target.base) != self.target.base:
            raise GammaError("pointed map must send base to base")

    @classmethod
    def from_function(cls, source, target, fn: Callable) -> "PointedMap":
        table = {x: fn(x) for x in source}
        table[source.base] = target.base
        return cls(source, target, table)

    def validate(self) -> None:
        for x in self.source:
            if x not in self.table:
                raise GammaError(f"pointed map undefined on {x!r}")
            if self.table[x] not in self.target:
                raise GammaError(f"image {self.table[x]!r} of {x!r} is not in the target")

    def __call__(self, x):
        return self.table[x]

    def then(self, g: "PointedMap") -> "PointedMap":
        """The composite ``g ∘ self``."""
        return PointedMap(self.source, g.target, {x: g.table[y] for x, y in self.table.items()})

    @classmethod
    def identity(cls, X: FinPointedSet) -> "PointedMap":
        return cls(X, X, {x: x for x in X})


@dataclass(frozen=True)
class GammaMorphism:
    """A morphism ``k_+ -> m_+`` of Γ^op, stored as its value table on 0..k."""

    k: int
    m: int
    table: tuple

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if self.k < 0 or self.m < 0:
            raise GammaError("arities must be non-negative")
        if len(table) != self.k + 1:
            raise GammaError(f"table must have {self.k + 1} entries, got {len(table)}")
        if table[0] != 0:
            raise GammaError("Γ^op morphisms fix the base point: table[0] must be 0")
        if any(v < 0 or v > self.m for v in table):
            raise GammaError(f"table values must lie in 0..{self.m}")

    @classmethod
    def identity(cls, k: int) -> "GammaMorphism":
        return cls(k, k, tuple(range(k + 1)))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def as_pointed_map(self) -> PointedMap:
        return PointedMap(FinPointedSet.k_plus(self.k), FinPointedSet.k_plus(self.m),
                          dict(enumerate(self.table)))

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "table": list(self.table)}

    @classmethod
    def from_json(cls, data: Mapping) -> "GammaMorphism":
        return cls(int(data["k"]), int(data["m"]), tuple(data["table"]))


def compose_gamma_morphisms(f: GammaMorphism, g: GammaMorphism) -> GammaMorphism:
    """Return ``g ∘ f``."""
    if f.m != g.k:
        raise GammaError(f"cannot compose: target arity {f.m} != source arity {g.k}")
    return GammaMorphism(f.k, g.m, tuple(g.table[v] for v in f.table))


def all_gamma_morphisms(k: int, m: int) -> Iterator[GammaMorphism]:
    for rest in itertools.product(range(m + 1), repeat=k):
        yield GammaMorphism(k, m, (0, *rest))


# -- monoids -----------------------------------------------------------------


class FiniteMonoid:
    """A finite commutative monoid with zero, given by an explicit addition table."""

    def __init__(self, elements: Sequence, zero, add: Mapping | Sequence[Sequence], name: str = ""):
        self.elements = tuple(elements)
        self.zero = zero
        self.name = name or f"monoid[{len(self.elements)}]"
        if len(set(self.elements)) != len(self.elements):
            raise GammaError("monoid elements must be distinct")
        if zero not in self.elements:
            raise GammaError("zero is not an element")
        if isinstance(add, Mapping):
            table = dict(add)
        else:
            # row-major: add[i][j] = elements[i] + elements[j]
            if len(add) != len(self.elements) or any(len(r) != len(self.elements) for r in add):
                raise GammaError("addition table has the wrong shape")
            table = {(a, b): add[i][j]
                     for i, a in enumerate(self.elements) for j, b in enumerate(self.elements)}
        self._add = table
        self._validate()

    def _validate(self) -> None:
        els = self.elements
        members = set(els)
        for a in els:
            for b in els:
                if (a, b) not in self._add:
                    raise GammaError(f"addition undefined on ({a!r}, {b!r})")
                if self._add[a, b] not in members:
                    raise GammaError(f"{a!r} + {b!r} is not an element")
        for a in els:
            if self._add[self.zero, a] != a:
                raise GammaError(f"zero is not a unit: 0 + {a!r} != {a!r}")
            for b in els:
                if self._add[a, b] != self._add[b, a]:
                    raise GammaError(f"not commutative at ({a!r}, {b!r})")
                for c in els:
                    if self._add[self._add[a, b], c] != self._add[a, self._add[b, c]]:
                        raise GammaError(f"not associative at ({a!r}, {b!r}, {c!r})")

    def add(self, a, b):
        return self._add[a, b]

    def total(self, values: Iterable):
        acc = self.zero
        for v in values:
            acc = self._add[acc, v]
        return acc

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteMonoid({self.name})"

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "zero": self.zero,
            "add": [[self._add[a, b] for b in self.elements] for a in self.elements],
        }

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "FiniteMonoid":
        try:
            elements = [_freeze(e) for e in data["elements"]]
            add = [[_freeze(e) for e in row] for row in data["add"]]
            return cls(elements, _freeze(data["zero"]), add, name=name)
        except KeyError as exc:
            raise GammaError(f"monoid JSON is missing field {exc}") from None

    @classmethod
    def load(cls, path) -> "FiniteMonoid":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), name=str(path))


def _freeze(v):
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def cyclic_group(m: int) -> FiniteMonoid:
    els = list(range(m))
    return FiniteMonoid(els, 0, [[(a + b) % m for b in els] for a in els], name=f"Z/{m}")


def boolean_monoid() -> FiniteMonoid:
    return FiniteMonoid([0, 1], 0, [[0, 1], [1, 1]], name="B")


def product_monoid(A: FiniteMonoid, B: FiniteMonoid) -> FiniteMonoid:
    els = [(a, b) for a in A.elements for b in B.elements]
    table = {(x, y): (A.add(x[0], y[0]), B.add(x[1], y[1])) for x in els for y in els}
    return FiniteMonoid(els, (A.zero, B.zero), table, name=f"{A.name}x{B.name}")


# -- Γ-sets --------------------------------------------------------------------


class NotEnumerableError(TypeError):
    """The Γ-set has infinite values; only membership can be decided."""


class GammaSet:
    """Base class for Γ-sets viewed as endofunctors of finite pointed sets."""

    name = "F"
    #: Segal maps ``F(E ∧ k_+) -> F(E)^k`` are bijections (see ``segal_join``).
    special = False

    def eval(self, X: FinPointedSet) -> FinPointedSet:
        raise NotImplementedError

    def size(self, X: FinPointedSet) -> int | None:
        return None

    def base(self, X: FinPointedSet):
        raise NotImplementedError

    def apply(self, f: PointedMap, v):
        raise NotImplementedError

    def contains(self, X: FinPointedSet, v) -> bool:
        return v in self.eval(X)

    def push(self, f: PointedMap) -> PointedMap:
        """``F(f)`` as an explicit pointed map (requires enumerable values)."""
        source = self.eval(f.source)
        target = self.eval(f.target)
        return PointedMap(source, target, {v: self.apply(f, v) for v in source})

    def kernel(self, X: FinPointedSet, maps: Sequence[PointedMap]) -> Iterator:
        """Enumerate ``{v in F(X) : F(f)(v) = * for every f in maps}``."""
        for v in self.eval(X):
            if all(self.apply(f, v) == self.base(f.target) for f in maps):
                yield v

    def __call__(self, X: FinPointedSet) -> FinPointedSet:
        return self.eval(X)

    def __repr__(self):
        return self.name


class UnitGammaSet(GammaSet):
    """The unit s: the inclusion of Γ^op into pointed sets."""

    name = "s"

    def eval(self, X):
        return X

    def size(self, X):
        return len(X)

    def base(self, X):
        return X.base

    def apply(self, f, v):
        return f(v)

    def contains(self, X, v):
        return v in X

    def kernel(self, X, maps):
        yield X.base
        for x in X.non_base:
            if all(f(x) == f.target.base for f in maps):
                yield x


class HA(GammaSet):
    """The Eilenberg-MacLane Γ-set of a finite commutative monoid with zero."""

    special = True

    def __init__(self, monoid: FiniteMonoid):
        self.monoid = monoid
        self.name = f"H({monoid.name})"

    def size(self, X):
        return len(self.monoid) ** (len(X) - 1)

    def base(self, X):
        return frozenset()

    def eval(self, X):
        size = self.size(X)
        if size > enum_limit():
            raise EnumerationLimitError(f"{self.name} on a {len(X)}-point set", size, enum_limit())
        nonzero = [a for a in self.monoid.elements if a != self.monoid.zero]
        coords = X.non_base
        values = []
        for combo in itertools.product([self.monoid.zero, *nonzero], repeat=len(coords)):
            values.append(frozenset((x, a) for x, a in zip(coords, combo) if a != self.monoid.zero))
        return FinPointedSet(tuple(values), frozenset())

    def contains(self, X, v):
        return isinstance(v, frozenset) and all(
            x in X and x != X.base and a in self.monoid.elements and a != self.monoid.zero
            for x, a in v) and len({x for x, _ in v}) == len(v)

    def apply(self, f, v):
        add, zero = self.monoid.add, self.monoid.zero
        tbase = f.target.base
        acc: dict = {}
        for x, a in v:
            t = f.table[x]
            if t == tbase:
                continue
            acc[t] = add(acc[t], a) if t in acc else a
        return frozenset((t, a) for t, a in acc.items() if a != zero)

    def kernel(self, X, maps):
        monoid = self.monoid
        zero = monoid.zero
        coords = X.non_base
        fibers = set()
        for f in maps:
            groups: dict = defaultdict(list)
            tbase = f.target.base
            for x in coords:
                t = f.table[x]
                if t != tbase:
                    groups[t].append(x)
            fibers.update(frozenset(g) for g in groups.values())
        fibers = sorted(fibers, key=lambda s: (len(s), sort_key(tuple(sorted_labels(s)))))
        order, seen = [], set()
        for fib in fibers:
            for x in sorted_labels(fib):
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        order.extend(x for x in coords if x not in seen)
        pos = {x: i for i, x in enumerate(order)}
        checks: dict = defaultdict(list)
        for fib in fibers:
            idx = sorted(pos[x] for x in fib)
            checks[idx[-1]].append(idx[:-1])
        elements = monoid.elements
        n = len(order)
        assignment = [zero] * n

        def extend(i):
            if i == n:
                yield frozenset((order[j], a) for j, a in enumerate(assignment) if a != zero)
                return
            constraints = checks.get(i, ())
            for a in elements:
                ok = True
                for others in constraints:
                    if monoid.add(monoid.total(assignment[j] for j in others), a) != zero:
                        ok = False
                        break
                if ok:
                    assignment[i] = a
                    yield from extend(i + 1)
            assignment[i] = zero

        yield from extend(0)

    def segal_join(self, parts: Sequence):
        """Sum of values with pairwise disjoint supports (inverse of the Segal map)."""
        return frozenset().union(*parts)


class HB(GammaSet):
    """Finite subsets containing the base point, pushed forward by direct image."""

    name = "HB"
    special = True

    def size(self, X):
        return 2 ** (len(X) - 1)

    def base(self, X):
        return frozenset()

    def eval(self, X):
        if self.size(X) > enum_limit():
            raise EnumerationLimitError(f"HB on a {len(X)}-point set", self.size(X), enum_limit())
        coords = X.non_base
        values = [frozenset(c) for r in range(len(coords) + 1)
                  for c in itertools.combinations(coords, r)]
        return FinPointedSet(tuple(values), frozenset())

    def contains(self, X, v):
        return isinstance(v, frozenset) and all(x in X and x != X.base for x in v)

    def apply(self, f, v):
        tbase = f.target.base
        return frozenset(t for t in (f.table[x] for x in v) if t != tbase)

    def kernel(self, X, maps):
        killed = [x for x in X.non_base if all(f.table[x] == f.target.base for f in maps)]
        for r in range(len(killed) + 1):
            for c in itertools.combinations(killed, r):
                yield frozenset(c)

    def segal_join(self, parts):
        return frozenset().union(*parts)

    @staticmethod
    def as_subset(X: FinPointedSet, v) -> frozenset:
        """The subset of ``X`` (base included) an element stands for."""
        return frozenset(v) | {X.base}


@dataclass(frozen=True)
class RationalWeighting:
    """A finitely supported rational weighting of non-base labels."""

    support: Mapping

    def __post_init__(self):
        clean = {}
        for x, q in dict(self.support).items():
            q = parse_q(q)
            if q == 0:
                raise GammaError(f"zero weight stored for {x!r}")
            clean[x] = q
        object.__setattr__(self, "support", clean)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "RationalWeighting":
        acc: dict = {}
        for x, q in pairs:
            acc[x] = acc.get(x, Fraction(0)) + parse_q(q)
        return cls({x: q for x, q in acc.items() if q != 0})

    def mass(self) -> Fraction:
        return sum((abs(q) for q in self.support.values()), Fraction(0))

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __eq__(self, other):
        return isinstance(other, RationalWeighting) and self.support == other.support


def hr_lambda_contains(w: RationalWeighting, lam) -> bool:
    """Membership in ``||HR||_λ``: total absolute mass strictly below λ."""
    lam = parse_q(lam)
    if lam <= 0:
        raise GammaError("λ must be positive")
    return w.mass() < lam


def hr1_algebra_contains(w: RationalWeighting) -> bool:
    """Membership in ``||HR||_1``: total absolute mass at most 1."""
    return w.mass() <= 1


class _HRBase(GammaSet):
    def eval(self, X):
        raise NotEnumerableError(f"{self.name} has infinitely many values; use contains()")

    def kernel(self, X, maps):
        raise NotEnumerableError(f"{self.name} has infinitely many values")

    def base(self, X):
        return RationalWeighting({})

    def apply(self, f, v: RationalWeighting):
        tbase = f.target.base
        return RationalWeighting.from_pairs((f.table[x], q) for x, q in v.support.items()
                                            if f.table[x] != tbase)

    def _in_domain(self, X, v) -> bool:
        return isinstance(v, RationalWeighting) and all(x in X and x != X.base for x in v.support)


class HRLambda(_HRBase):
    """Rational weightings of ℓ¹ mass strictly below ``lam``."""

    def __init__(self, lam):
        self.lam = parse_q(lam)
        if self.lam <= 0:
            raise GammaError("λ must be positive")
        self.name = f"||HR||_{self.lam}"

    def contains(self, X, v):
        return self._in_domain(X, v) and hr_lambda_contains(v, self.lam)


class HR1(_HRBase):
    """Rational weightings of ℓ¹ mass at most 1."""

    name = "||HR||_1"

    def contains(self, X, v):
        return self._in_domain(X, v) and hr1_algebra_contains(v)


class ComposedGammaSet(GammaSet):
    """``outer ∘ inner`` as an endofunctor of finite pointed sets."""

    def __init__(self, outer: GammaSet, inner: GammaSet):
        self.outer = outer
        self.inner = inner
        self.name = f"{outer.name}∘{inner.name}"

    def eval(self, X):
        return self.outer.eval(self.inner.eval(X))

    def base(self, X):
        return self.outer.base(self.inner.eval(X))

    def apply(self, f, v):
        return self.outer.apply(self.inner.push(f), v)


@dataclass(frozen=True)
class NaturalTransformation:
    """A morphism of Γ-sets, given by its components ``X, v -> h_X(v)``."""

    source: GammaSet
    target: GammaSet
    component: Callable

    def __call__(self, X: FinPointedSet, v):
        return self.component(X, v)


def monoid_hom_transformation(phi: Mapping, A: FiniteMonoid, B: FiniteMonoid) -> NaturalTransformation:
    """``H(phi): HA -> HB'`` for a monoid homomorphism given as a table."""
    for a in A.elements:
        for b in A.elements:
            if phi[A.add(a, b)] != B.add(phi[a], phi[b]):
                raise GammaError("not a monoid homomorphism")
    if phi[A.zero] != B.zero:
        raise GammaError("a monoid homomorphism must preserve zero")

    def comp(X, v):
        return frozenset((x, phi[a]) for x, a in v if phi[a] != B.zero)

    return NaturalTransformation(HA(A), HA(B), comp)


def unit_to_hb() -> NaturalTransformation:
    """``s -> HB`` sending ``x`` to ``{*, x}``."""
    return NaturalTransformation(UnitGammaSet(), HB(),
                                 lambda X, x: frozenset() if x == X.base else frozenset({x}))


def unit_to_ha(A: FiniteMonoid, a) -> NaturalTransformation:
    """``s -> HA`` sending ``x`` to the map that is ``a`` at ``x``."""
    def comp(X, x):
        if x == X.base or a == A.zero:
            return frozenset()
        return frozenset({(x, a)})

    return NaturalTransformation(UnitGammaSet(), HA(A), comp)


def ha_gamma_set(A: FiniteMonoid) -> HA:
    return HA(A)


def hb_gamma_set() -> HB:
    return HB()
