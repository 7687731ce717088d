"""Finite pointed simplicial sets, truncated at an explicit dimension cap.

Two representations are provided:

* :class:`TruncatedSimplicialSet` stores nondegenerate generators and their
  faces.  Every simplex is a canonical pair ``(generator, sigma)`` where
  ``sigma`` is a monotone surjection ``[n] -> [m]`` (Eilenberg-Zilber form).
* :class:`LevelwiseSimplicialSet` stores every simplex of every degree with
  explicit face and degeneracy tables.  Ω, products and coefficient
  composition all work on this form.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .gamma import FinPointedSet, PointedMap


class SimplicialError(ValueError):
    """Structurally invalid simplicial data or insufficient dimension cap."""


class SimplicialIdentityError(SimplicialError):
    """A simplicial identity fails; ``identity`` names it, ``witness`` is the simplex."""

    def __init__(self, identity: str, witness, lhs, rhs):
        super().__init__(f"simplicial identity {identity} fails on {witness!r}: {lhs!r} != {rhs!r}")
        self.identity = identity
        self.witness = witness
        self.lhs = lhs
        self.rhs = rhs


class Simplex(NamedTuple):
    gen: Hashable
    sigma: tuple  # monotone surjection [n] -> [m], as its value list

    @property
    def degree(self) -> int:
        return len(self.sigma) - 1

    @property
    def collapsed(self) -> tuple:
        s = self.sigma
        return tuple(j for j in range(len(s) - 1) if s[j] == s[j + 1])

    @property
    def is_nondegenerate(self) -> bool:
        return not self.collapsed

    @classmethod
    def from_collapsed(cls, gen, gen_degree: int, collapsed: Iterable[int]) -> "Simplex":
        collapsed = sorted(set(collapsed))
        n = gen_degree + len(collapsed)
        if collapsed and (collapsed[0] < 0 or collapsed[-1] >= n):
            raise SimplicialError(f"collapsed positions {collapsed} out of range for degree {n}")
        sigma = [0]
        for j in range(n):
            sigma.append(sigma[-1] + (0 if j in collapsed else 1))
        return cls(gen, tuple(sigma))

    def __repr__(self):
        if self.is_nondegenerate:
            return f"{self.gen!r}"
        return f"s{list(self.collapsed)}({self.gen!r})"


def coface(n: int, i: int) -> tuple:
    """The monotone injection ``[n-1] -> [n]`` skipping ``i``."""
    return tuple(v for v in range(n + 1) if v != i)


def codegeneracy(n: int, j: int) -> tuple:
    """The monotone surjection ``[n+1] -> [n]`` hitting ``j`` twice."""
    return tuple(v if v <= j else v - 1 for v in range(n + 2))


def surjections(q: int, p: int) -> list:
    """All monotone surjections ``[q] -> [p]`` as value tuples."""
    out = []
    for steps in itertools.combinations(range(q), p):
        sigma = [0]
        for j in range(q):
            sigma.append(sigma[-1] + (1 if j in steps else 0))
        out.append(tuple(sigma))
    return out


class TruncatedSimplicialSet:
    """Generator-and-face presentation of a pointed simplicial set up to ``dim_cap``."""

    def __init__(self, dim_cap: int, generators: Mapping[int, Sequence], faces: Mapping,
                 base: Hashable = "*", validate: bool = True):
        if dim_cap < 0:
            raise SimplicialError("dim_cap must be non-negative")
        self.dim_cap = dim_cap
        self.base = base
        self.generators = {m: tuple(generators.get(m, ())) for m in range(dim_cap + 1)}
        self.degree_of = {}
        for m, gens in self.generators.items():
            for g in gens:
                if g in self.degree_of:
                    raise SimplicialError(f"generator {g!r} listed twice")
                self.degree_of[g] = m
        extra = [m for m in generators if m > dim_cap and generators[m]]
        if extra:
            raise SimplicialError(f"generators above dim_cap {dim_cap} in degrees {extra}")
        if base not in self.generators[0]:
            raise SimplicialError(f"base point {base!r} must be a degree-0 generator")
        self.faces = {g: tuple(Simplex(f.gen, tuple(f.sigma)) for f in faces.get(g, ()))
                      for g in self.degree_of}
        self._cache: dict = {}
        if validate:
            self.validate()

    # -- structure ---------------------------------------------------------

    def _check_structure(self) -> None:
        for g, m in self.degree_of.items():
            fs = self.faces[g]
            expected = m + 1 if m > 0 else 0
            if len(fs) != expected:
                raise SimplicialError(f"generator {g!r} of degree {m} needs {expected} faces, has {len(fs)}")
            for i, f in enumerate(fs):
                if f.gen not in self.degree_of:
                    raise SimplicialError(f"face d{i}({g!r}) refers to unknown generator {f.gen!r}")
                if f.degree != m - 1:
                    raise SimplicialError(f"face d{i}({g!r}) has degree {f.degree}, expected {m - 1}")
                p = self.degree_of[f.gen]
                s = f.sigma
                if s[0] != 0 or s[-1] != p or any(b - a not in (0, 1) for a, b in zip(s, s[1:])):
                    raise SimplicialError(f"face d{i}({g!r}) is not a surjection onto [{p}]")

    def validate(self) -> None:
        """Check structure and the face identities ``d_i d_j = d_{j-1} d_i`` (i < j)."""
        self._check_structure()
        for m in range(2, self.dim_cap + 1):
            for g in self.generators[m]:
                x = Simplex(g, tuple(range(m + 1)))
                for j in range(m + 1):
                    for i in range(j):
                        lhs = self.face(self.face(x, j), i)
                        rhs = self.face(self.face(x, i), j - 1)
                        if lhs != rhs:
                            raise SimplicialIdentityError(f"d{i}d{j} = d{j - 1}d{i}", g, lhs, rhs)

    def nondegenerate(self, gen) -> Simplex:
        m = self.degree_of[gen]
        return Simplex(gen, tuple(range(m + 1)))

    def base_simplex(self, q: int) -> Simplex:
        return Simplex(self.base, (0,) * (q + 1))

    def apply(self, s: Simplex, theta: Sequence[int]) -> Simplex:
        """``X(theta)(s)`` for a monotone ``theta: [k] -> [n]``, in canonical form."""
        key = (s, tuple(theta))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        gen, sigma = s
        tau = tuple(sigma[t] for t in theta)
        while True:
            m = self.degree_of[gen]
            image = set(tau)
            if len(image) == m + 1:
                break
            a = max(set(range(m + 1)) - image)
            f = self.faces[gen][a]
            shifted = tuple(v if v < a else v - 1 for v in tau)
            gen, tau = f.gen, tuple(f.sigma[v] for v in shifted)
        out = Simplex(gen, tau)
        self._cache[key] = out
        return out

    def face(self, s: Simplex, i: int) -> Simplex:
        n = s.degree
        if n < 1 or not 0 <= i <= n:
            raise SimplicialError(f"face index {i} out of range for a {n}-simplex")
        return self.apply(s, coface(n, i))

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        n = s.degree
        if not 0 <= j <= n:
            raise SimplicialError(f"degeneracy index {j} out of range for a {n}-simplex")
        return self.apply(s, codegeneracy(n, j))

    def simplices(self, q: int) -> list:
        out = [self.base_simplex(q)]
        for p in range(min(q, self.dim_cap) + 1):
            sur = surjections(q, p)
            for g in self.generators[p]:
                if g == self.base:
                    continue
                out.extend(Simplex(g, s) for s in sur)
        return out

    def count_nondegenerate(self) -> list:
        return [len(self.generators[m]) for m in range(self.dim_cap + 1)]

    # -- constructions -----------------------------------------------------

    def to_levelwise(self) -> "LevelwiseSimplicialSet":
        D = self.dim_cap
        levels = [FinPointedSet(tuple(self.simplices(q)), self.base_simplex(q)) for q in range(D + 1)]
        faces = [[]]
        for q in range(1, D + 1):
            faces.append([{x: self.face(x, i) for x in levels[q]} for i in range(q + 1)])
        degens = []
        for q in range(D):
            degens.append([{x: self.degeneracy(x, j) for x in levels[q]} for j in range(q + 1)])
        degens.append([])
        return LevelwiseSimplicialSet(levels, faces, degens)

    def smash_with_k(self, k: int) -> "TruncatedSimplicialSet":
        if k < 0:
            raise SimplicialError("k must be non-negative")
        gens = {m: [] for m in range(self.dim_cap + 1)}
        gens[0].append(self.base)
        faces = {}

        def tag(s: Simplex, j):
            return s if s.gen == self.base else Simplex((s.gen, j), s.sigma)

        for m in range(self.dim_cap + 1):
            for g in self.generators[m]:
                if g == self.base:
                    continue
                for j in range(1, k + 1):
                    gens[m].append((g, j))
                    faces[(g, j)] = [tag(f, j) for f in self.faces[g]]
        return TruncatedSimplicialSet(self.dim_cap, gens, faces, base=self.base, validate=False)

    def with_cap(self, dim_cap: int) -> "TruncatedSimplicialSet":
        gens = {m: list(self.generators.get(m, ())) for m in range(dim_cap + 1)}
        return TruncatedSimplicialSet(dim_cap, gens, {g: self.faces[g] for m in gens for g in gens[m]},
                                      base=self.base, validate=False)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        def ref(s: Simplex):
            return {"gen": _label_out(s.gen), "collapsed": list(s.collapsed)}

        return {
            "dim_cap": self.dim_cap,
            "base": _label_out(self.base),
            "generators": {str(m): [_label_out(g) for g in gens]
                           for m, gens in self.generators.items() if gens},
            "faces": {_label_key(g): [ref(f) for f in self.faces[g]]
                      for g in self.degree_of if self.faces[g]},
        }

    @classmethod
    def from_json(cls, data: Mapping, validate: bool = True) -> "TruncatedSimplicialSet":
        try:
            dim_cap = int(data["dim_cap"])
            raw_gens = data["generators"]
            raw_faces = data.get("faces", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise SimplicialError(f"simplicial-set JSON: bad or missing field ({exc})") from None
        base = _label_in(data.get("base", "*"))
        gens = {int(m): [_label_in(g) for g in labels] for m, labels in raw_gens.items()}
        degree_of = {g: m for m, labels in gens.items() for g in labels}
        faces = {}
        for key, refs in raw_faces.items():
            g = _label_from_key(key, degree_of)
            fs = []
            for r in refs:
                h = _label_in(r["gen"])
                if h not in degree_of:
                    raise SimplicialError(f"face of {g!r} refers to unknown generator {h!r}")
                fs.append(Simplex.from_collapsed(h, degree_of[h], r.get("collapsed", [])))
            faces[g] = fs
        return cls(dim_cap, gens, faces, base=base, validate=validate)

    @classmethod
    def load(cls, path, validate: bool = True) -> "TruncatedSimplicialSet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), validate=validate)


def _label_out(g):
    return list(_label_out(x) for x in g) if isinstance(g, tuple) else g


def _label_in(g):
    return tuple(_label_in(x) for x in g) if isinstance(g, list) else g


def _label_key(g) -> str:
    return g if isinstance(g, str) else json.dumps(_label_out(g))


def _label_from_key(key: str, known: Mapping):
    if key in known:
        return key
    try:
        parsed = _label_in(json.loads(key))
    except json.JSONDecodeError:
        raise SimplicialError(f"faces given for unknown generator {key!r}") from None
    if parsed not in known:
        raise SimplicialError(f"faces given for unknown generator {key!r}")
    return parsed


# -- levelwise form ----------------------------------------------------------


class LevelwiseSimplicialSet:
    """Every simplex of degree ``0..dim_cap`` with explicit structure maps.

    ``faces[q][i]`` maps ``X_q -> X_{q-1}``; ``degeneracies[q][j]`` maps
    ``X_q -> X_{q+1}`` (absent at the top degree).
    """

    def __init__(self, levels: Sequence[FinPointedSet], faces: Sequence[Sequence[Mapping]],
                 degeneracies: Sequence[Sequence[Mapping]]):
        self.levels = list(levels)
        self.faces = [list(f) for f in faces]
        self.degeneracies = [list(s) for s in degeneracies]
        if len(self.faces) != len(self.levels) or len(self.degeneracies) != len(self.levels):
            raise SimplicialError("levels, faces and degeneracies must cover the same degrees")

    @property
    def dim_cap(self) -> int:
        return len(self.levels) - 1

    def base(self, q: int):
        return self.levels[q].base

    def sizes(self) -> list:
        return [len(L) for L in self.levels]

    def face(self, q: int, i: int, x):
        return self.faces[q][i][x]

    def degeneracy(self, q: int, j: int, x):
        return self.degeneracies[q][j][x]

    def face_map(self, q: int, i: int) -> PointedMap:
        return PointedMap(self.levels[q], self.levels[q - 1], self.faces[q][i])

    def degeneracy_map(self, q: int, j: int) -> PointedMap:
        return PointedMap(self.levels[q], self.levels[q + 1], self.degeneracies[q][j])

    def iterated_face(self, q: int, x, keep: Sequence[int]):
        """Restrict a ``q``-simplex to the sub-face spanned by the vertices in ``keep``."""
        keep = set(keep)
        for i in range(q, -1, -1):
            if i not in keep:
                x = self.faces[q][i][x]
                q -= 1
        return x

    def vertices(self, q: int, x) -> list:
        return [self.iterated_face(q, x, (v,)) for v in range(q + 1)]

    def require_cap(self, needed: int, what: str) -> None:
        if self.dim_cap < needed:
            raise SimplicialError(f"{what} needs dim_cap >= {needed}, have {self.dim_cap}")

    def check_identities(self):
        """Return the first violated simplicial identity as a ``SimplicialIdentityError``, or None."""
        D = self.dim_cap
        for q in range(D + 1):
            b = self.base(q)
            for i in range(q + 1 if q else 0):
                if self.faces[q][i].get(b) != self.base(q - 1):
                    return SimplicialIdentityError(f"d{i}(*) = *", b, self.faces[q][i].get(b), self.base(q - 1))
            if q < D:
                for j in range(q + 1):
                    if self.degeneracies[q][j].get(b) != self.base(q + 1):
                        return SimplicialIdentityError(f"s{j}(*) = *", b, self.degeneracies[q][j].get(b),
                                                       self.base(q + 1))
        for q in range(D + 1):
            d, s = self.faces, self.degeneracies
            for x in self.levels[q]:
                if q >= 2:
                    for j in range(q + 1):
                        for i in range(j):
                            lhs, rhs = d[q - 1][i][d[q][j][x]], d[q - 1][j - 1][d[q][i][x]]
                            if lhs != rhs:
                                return SimplicialIdentityError(f"d{i}d{j} = d{j - 1}d{i}", x, lhs, rhs)
                if q < D:
                    for j in range(q + 1):
                        y = s[q][j][x]
                        for i in range(q + 2):
                            lhs = d[q + 1][i][y]
                            if i < j:
                                rhs, name = s[q - 1][j - 1][d[q][i][x]], f"d{i}s{j} = s{j - 1}d{i}"
                            elif i in (j, j + 1):
                                rhs, name = x, f"d{i}s{j} = id"
                            else:
                                rhs, name = s[q - 1][j][d[q][i - 1][x]], f"d{i}s{j} = s{j}d{i - 1}"
                            if lhs != rhs:
                                return SimplicialIdentityError(name, x, lhs, rhs)
                if q + 1 < D:
                    for j in range(q + 1):
                        for i in range(j + 1):
                            lhs = s[q + 1][i][s[q][j][x]]
                            rhs = s[q + 1][j + 1][s[q][i][x]]
                            if lhs != rhs:
                                return SimplicialIdentityError(f"s{i}s{j} = s{j + 1}s{i}", x, lhs, rhs)
        return None

    def validate(self) -> None:
        err = self.check_identities()
        if err is not None:
            raise err

    def is_isomorphic_levels(self, other: "LevelwiseSimplicialSet") -> bool:
        return self.sizes() == other.sizes()


def smash_with_k(X, k: int):
    """``X ∧ k_+`` in the same representation as ``X``; non-base simplices are ``(x, j)``."""
    if isinstance(X, TruncatedSimplicialSet):
        return X.smash_with_k(k)
    if k < 0:
        raise SimplicialError("k must be non-negative")

    def tag(q, x, j):
        return X.base(q) if x == X.base(q) else (x, j)

    levels = [FinPointedSet((L.base, *((x, j) for x in L.non_base for j in range(1, k + 1))), L.base)
              for L in X.levels]
    faces = [[]]
    for q in range(1, X.dim_cap + 1):
        faces.append([{y: (X.base(q - 1) if y == levels[q].base else tag(q - 1, X.faces[q][i][y[0]], y[1]))
                       for y in levels[q]} for i in range(q + 1)])
    degens = []
    for q in range(X.dim_cap):
        degens.append([{y: (X.base(q + 1) if y == levels[q].base else tag(q + 1, X.degeneracies[q][j][y[0]], y[1]))
                        for y in levels[q]} for j in range(q + 1)])
    degens.append([])
    return LevelwiseSimplicialSet(levels, faces, degens)


def product(X: LevelwiseSimplicialSet, Y: LevelwiseSimplicialSet) -> LevelwiseSimplicialSet:
    """Degreewise cartesian product with componentwise structure maps."""
    if X.dim_cap != Y.dim_cap:
        raise SimplicialError(f"dimension caps differ: {X.dim_cap} vs {Y.dim_cap}")
    levels = []
    for LX, LY in zip(X.levels, Y.levels):
        b = (LX.base, LY.base)
        pairs = [(x, y) for x in LX for y in LY if (x, y) != b]
        levels.append(FinPointedSet((b, *pairs), b))
    faces = [[]]
    for q in range(1, X.dim_cap + 1):
        faces.append([{(x, y): (X.faces[q][i][x], Y.faces[q][i][y]) for (x, y) in levels[q]}
                      for i in range(q + 1)])
    degens = []
    for q in range(X.dim_cap):
        degens.append([{(x, y): (X.degeneracies[q][j][x], Y.degeneracies[q][j][y]) for (x, y) in levels[q]}
                       for j in range(q + 1)])
    degens.append([])
    return LevelwiseSimplicialSet(levels, faces, degens)


def _shifted(X: LevelwiseSimplicialSet, carriers: Sequence[Sequence], shift: int) -> LevelwiseSimplicialSet:
    """Structure ``(d_j, s_j) := (d_{j+shift}, s_{j+shift})`` on subsets of ``X_{k+shift}``."""
    levels = [FinPointedSet(tuple(c), X.base(k + shift)) for k, c in enumerate(carriers)]
    top = len(levels) - 1
    faces = [[]]
    for k in range(1, top + 1):
        q = k + shift
        faces.append([{x: X.faces[q][j + shift][x] for x in levels[k]} for j in range(k + 1)])
    degens = []
    for k in range(top):
        q = k + shift
        degens.append([{x: X.degeneracies[q][j + shift][x] for x in levels[k]} for j in range(k + 1)])
    degens.append([])
    return LevelwiseSimplicialSet(levels, faces, degens)


def path_space(X: LevelwiseSimplicialSet) -> LevelwiseSimplicialSet:
    """``(PX)_k = X_{k+1}`` with face and degeneracy indices shifted by one."""
    X.require_cap(1, "the path space")
    return _shifted(X, [X.levels[k + 1].elements for k in range(X.dim_cap)], 1)


def omega(X: LevelwiseSimplicialSet) -> LevelwiseSimplicialSet:
    """The loop endofunctor: simplices of ``X_{k+1}`` with ``d_0 x = *`` and all vertices at the base."""
    X.require_cap(1, "Ω")
    carriers = []
    for k in range(X.dim_cap):
        q = k + 1
        b0 = X.base(0)
        keep = [x for x in X.levels[q]
                if X.faces[q][0][x] == X.base(q - 1) and all(v == b0 for v in X.vertices(q, x))]
        carriers.append(keep)
    return _shifted(X, carriers, 1)


def omega_power(X: LevelwiseSimplicialSet, n: int) -> LevelwiseSimplicialSet:
    for _ in range(n):
        X = omega(X)
    return X


def omega_closed_form(X: LevelwiseSimplicialSet, n: int, k: int) -> list:
    """Level ``k`` of ``Ω^n X`` described directly inside ``X_{n+k}``."""
    q = n + k
    X.require_cap(q, f"level {k} of Ω^{n}")
    if n == 0:
        return list(X.levels[k].elements)
    out = []
    low = X.base(n - 1)
    for x in X.levels[q]:
        if any(X.faces[q][j][x] != X.base(q - 1) for j in range(n)):
            continue
        if all(X.iterated_face(q, x, keep) == low for keep in itertools.combinations(range(q + 1), n)):
            out.append(x)
    return out


@dataclass(frozen=True)
class OmegaLevels:
    """Degrees 0 and 1 of ``Ω^n X`` with the two boundaries and the section."""

    n: int
    set0: FinPointedSet
    set1: FinPointedSet
    left: Mapping     # d_n : set1 -> set0
    right: Mapping    # d_{n+1}
    section: Mapping  # s_n : set0 -> set1


def omega_n_levels(X: LevelwiseSimplicialSet, n: int) -> OmegaLevels:
    X.require_cap(n + 1, f"levels of Ω^{n}")
    if n == 0:
        set0 = X.levels[0]
        set1 = X.levels[1]
    else:
        low = X.base(n - 1)
        d = X.faces
        set0 = FinPointedSet(tuple(x for x in X.levels[n] if all(d[n][j][x] == low for j in range(n + 1))),
                             X.base(n))
        b_n = X.base(n)
        keep = []
        for z in X.levels[n + 1]:
            if any(d[n + 1][j][z] != b_n for j in range(n)):
                continue
            if all(d[n][i][d[n + 1][j][z]] == low for j in range(n + 2) for i in range(n + 1)):
                keep.append(z)
        set1 = FinPointedSet(tuple(keep), X.base(n + 1))
    left = {z: X.faces[n + 1][n][z] for z in set1}
    right = {z: X.faces[n + 1][n + 1][z] for z in set1}
    section = {x: X.degeneracies[n][n][x] for x in set0}
    return OmegaLevels(n, set0, set1, left, right, section)


# -- standard spaces ---------------------------------------------------------


def standard_simplex(n: int, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """Δ[n], pointed at the vertex 0; generators are the strictly increasing vertex tuples."""
    D = n + 1 if dim_cap is None else dim_cap
    if n < 0 or n > D:
        raise SimplicialError(f"Δ[{n}] needs 0 <= n <= dim_cap ({D})")
    gens = {m: [c for c in itertools.combinations(range(n + 1), m + 1)] for m in range(D + 1)}
    faces = {}
    for m in range(1, D + 1):
        for c in gens[m]:
            faces[c] = [Simplex(c[:i] + c[i + 1:], tuple(range(m))) for i in range(m + 1)]
    return TruncatedSimplicialSet(D, gens, faces, base=(0,))


def sphere(n: int, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """``S^n = Δ[n]/∂Δ[n]`` with base ``"*"`` and one non-base generator ``"id"``."""
    D = n + 2 if dim_cap is None else dim_cap
    if n < 0 or n > D - 1:
        raise SimplicialError(f"S^{n} needs 0 <= n <= dim_cap - 1 (dim_cap = {D})")
    gens = {0: ["*"]}
    gens.setdefault(n, []).append("id")
    faces = {"id": [Simplex("*", (0,) * n) for _ in range(n + 1)] if n > 0 else []}
    return TruncatedSimplicialSet(D, gens, faces)


def wedge_of_circles(r: int, dim_cap: int = 2) -> TruncatedSimplicialSet:
    names = [f"a{i}" for i in range(1, r + 1)]
    faces = {a: [Simplex("*", (0,)), Simplex("*", (0,))] for a in names}
    return TruncatedSimplicialSet(dim_cap, {0: ["*"], 1: names}, faces)


def minimal_torus(dim_cap: int = 3) -> TruncatedSimplicialSet:
    """One vertex, edges a, b, c = a·b, triangles U = (a, b | c) and L = (b, a | c)."""
    v = Simplex("*", (0,))
    e = lambda g: Simplex(g, (0, 1))
    faces = {g: [v, v] for g in "abc"}
    faces["U"] = [e("b"), e("c"), e("a")]
    faces["L"] = [e("a"), e("c"), e("b")]
    return TruncatedSimplicialSet(dim_cap, {0: ["*"], 1: ["a", "b", "c"], 2: ["U", "L"]}, faces)


def discrete_pointed(X: FinPointedSet, dim_cap: int = 2) -> LevelwiseSimplicialSet:
    """A pointed set viewed as a constant simplicial set."""
    levels = [X] * (dim_cap + 1)
    ident = {x: x for x in X}
    faces = [[]] + [[ident] * (q + 1) for q in range(1, dim_cap + 1)]
    degens = [[ident] * (q + 1) for q in range(dim_cap)] + [[]]
    return LevelwiseSimplicialSet(levels, faces, degens)


def point_space(dim_cap: int = 2) -> TruncatedSimplicialSet:
    return TruncatedSimplicialSet(dim_cap, {0: ["*"]}, {})


@dataclass(frozen=True)
class SimplicialMap:
    """A pointed simplicial map between levelwise sets, given degreewise."""

    source: LevelwiseSimplicialSet
    target: LevelwiseSimplicialSet
    components: Sequence[Mapping]

    def at(self, q: int) -> PointedMap:
        return PointedMap(self.source.levels[q], self.target.levels[q], self.components[q])

    def check(self) -> None:
        X, Y, f = self.source, self.target, self.components
        for q in range(1, X.dim_cap + 1):
            for i in range(q + 1):
                for x in X.levels[q]:
                    if f[q - 1][X.faces[q][i][x]] != Y.faces[q][i][f[q][x]]:
                        raise SimplicialError(f"map does not commute with d{i} at {x!r}")


def truncated_map(X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet, on_generators: Mapping) -> SimplicialMap:
    """Extend a generator assignment ``g -> Simplex of Y`` to a map of levelwise forms."""
    LX, LY = X.to_levelwise(), Y.to_levelwise()
    comps = []
    for q in range(X.dim_cap + 1):
        table = {}
        for s in LX.levels[q]:
            if s.gen == X.base:
                table[s] = LY.base(q)
            else:
                table[s] = Y.apply(on_generators[s.gen], s.sigma)
        comps.append(table)
    f = SimplicialMap(LX, LY, comps)
    f.check()
    return f
