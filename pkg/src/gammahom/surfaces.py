"""The genus-g surface as g hexagonal blocks around a common centre, its explicit
normalized fundamental cycle, boundary certificates and the λ-threshold test.

Simplices are affine vertex tuples whose vertices lie in a single block's
closed vertex set, taken modulo the outer-edge pairings of each block.  Block
``w`` has local vertices ``0..5``; local ``l >= 1`` is global ``l + 4w`` with
``4g + 1`` read as ``1``.  The pairings, in local labels, are

* tuples supported on ``{3, 4}`` equal tuples on ``{1, 2}`` via ``4 -> 1, 3 -> 2``;
* tuples supported on ``{4, 5}`` equal tuples on ``{2, 3}`` via ``5 -> 2, 4 -> 3``;
* every constant tuple at an outer vertex equals the one at vertex 1.

The base point is the centre 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._util import parse_q, sorted_labels
from .chains import ChainComplex, QChain
from .gamma import FinPointedSet
from .simplicial import LevelwiseSimplicialSet

DIM_CAP = 3
# orientation constants: the pairing of outer edges inside one block
PAIR_TO_12 = {4: 1, 3: 2}
PAIR_TO_23 = {5: 2, 4: 3}


class SurfaceError(ValueError):
    pass


class SurfaceModel:
    """Levelwise simplicial model of the genus-``g`` surface (or of one open block)."""

    def __init__(self, g: int, closed: bool = True, dim_cap: int = DIM_CAP):
        if closed and g < 2:
            raise SurfaceError("closed surface models need genus g >= 2")
        self.g = g
        self.closed = closed
        self.dim_cap = dim_cap
        self.blocks = [tuple(self.glob(w, l) for l in range(6)) for w in range(g)]
        self.X = self._build()
        self.complex = ChainComplex(self.X)

    # -- labels ----------------------------------------------------------------

    def glob(self, w: int, l: int) -> int:
        if l == 0:
            return 0
        v = l + 4 * w
        if self.closed and v == 4 * self.g + 1:
            return 1
        return v

    def local(self, w: int, v: int) -> int:
        return self.blocks[w].index(v)

    def canon(self, t: Sequence[int]) -> tuple:
        t = tuple(t)
        support = set(t)
        if len(support) == 1:
            v = t[0]
            return (1,) * len(t) if v != 0 else t
        if 0 in support or len(support) != 2:
            return t
        for w, verts in enumerate(self.blocks):
            if support <= set(verts):
                loc = {self.local(w, v) for v in support}
                if loc == {3, 4}:
                    return tuple(self.glob(w, PAIR_TO_12[self.local(w, v)]) for v in t)
                if loc == {4, 5}:
                    return tuple(self.glob(w, PAIR_TO_23[self.local(w, v)]) for v in t)
        return t

    def simplex(self, t: Sequence[int]) -> tuple:
        """``Δ'(t)``: the canonical simplex for an affine tuple."""
        t = tuple(t)
        if not any(set(t) <= set(b) for b in self.blocks):
            raise SurfaceError(f"tuple {t} is not supported in a single block")
        return self.canon(t)

    def base(self, q: int) -> tuple:
        return (0,) * (q + 1)

    # -- construction --------------------------------------------------------

    def _build(self) -> LevelwiseSimplicialSet:
        levels = []
        for q in range(self.dim_cap + 1):
            simplices = set()
            for verts in self.blocks:
                for t in itertools.product(verts, repeat=q + 1):
                    simplices.add(self.canon(t))
            levels.append(FinPointedSet.of(simplices, self.base(q)))
        faces = [[]]
        for q in range(1, self.dim_cap + 1):
            faces.append([{x: self.canon(x[:i] + x[i + 1:]) for x in levels[q]} for i in range(q + 1)])
        degens = []
        for q in range(self.dim_cap):
            degens.append([{x: self.canon(x[:j + 1] + x[j:]) for x in levels[q]} for j in range(q + 1)])
        degens.append([])
        X = LevelwiseSimplicialSet(levels, faces, degens)
        return X

    def identities_error(self):
        return self.X.check_identities()

    # -- chains --------------------------------------------------------------

    def chain(self, terms) -> QChain:
        terms = list(terms)
        q = len(terms[0][0]) - 1 if terms else 0
        base = self.base(q)
        return QChain.of(q, ((self.simplex(t), v) for t, v in terms if self.simplex(t) != base))

    def adjacent(self, i: int, j: int) -> int:
        """The block in which ``(i, j)`` is a pair of consecutive outer vertices."""
        for w in range(self.g):
            for l in range(1, 5):
                if self.glob(w, l) == i and self.glob(w, l + 1) == j:
                    return w
        raise SurfaceError(f"({i}, {j}) is not a pair of consecutive outer vertices")

    def outer_pairs(self, w: int) -> list:
        return [(self.glob(w, l), self.glob(w, l + 1)) for l in range(1, 5)]


def build_block() -> SurfaceModel:
    """One hexagonal block with its own outer-edge pairings (no wraparound)."""
    return SurfaceModel(1, closed=False)


def build_surface(g: int) -> SurfaceModel:
    return SurfaceModel(g, closed=True)


def c0ij_terms(i: int, j: int) -> list:
    return [((0, i, j), 1), ((i, j, 0), 1), ((j, 0, i), 2),
            ((j, i, 0), -1), ((0, j, i), -1), ((i, 0, j), -2)]


def chain_c0ij(model: SurfaceModel, i: int, j: int) -> QChain:
    model.adjacent(i, j)
    return model.chain(c0ij_terms(i, j))


def chain_block(model: SurfaceModel, w: int) -> QChain:
    if not 0 <= w < model.g:
        raise SurfaceError(f"block index {w} outside 0..{model.g - 1}")
    total = QChain.zero(2)
    for i, j in model.outer_pairs(w):
        total = total + chain_c0ij(model, i, j)
    return total


def fundamental_normalized_cycle(model: SurfaceModel) -> QChain:
    c = QChain.zero(2)
    for w in range(model.g):
        c = c + chain_block(model, w)
    C = model.complex
    for j in range(3):
        if not C.face(c, j).is_zero():
            raise SurfaceError(f"internal error: d{j} of the fundamental chain is nonzero")
    return c


# -- displayed face identities -------------------------------------------------


def piece_face_rhs(model: SurfaceModel, i: int, j: int) -> list:
    """The three right-hand sides for ``d_0, d_1, d_2`` of ``c(0, i, j)``."""
    e = lambda a, b: (a, b)
    rows = [
        [(e(0, i), 2), (e(0, j), -2), (e(i, 0), -1), (e(j, 0), 1), (e(i, j), 1), (e(j, i), -1)],
        [(e(0, i), -1), (e(0, j), 1), (e(i, 0), 1), (e(j, 0), -1), (e(j, i), 2), (e(i, j), -2)],
        [(e(0, i), 1), (e(0, j), -1), (e(j, 0), 2), (e(i, 0), -2), (e(i, j), 1), (e(j, i), -1)],
    ]
    return [model.chain(r) for r in rows]


def check_piece_faces(model: SurfaceModel, i: int, j: int) -> list:
    c = chain_c0ij(model, i, j)
    rhs = piece_face_rhs(model, i, j)
    return [model.complex.face(c, k) == rhs[k] for k in range(3)]


def block_face_rhs(model: SurfaceModel, w: int) -> list:
    a, b = model.glob(w, 1), model.glob(w, 5)
    rows = [
        [((0, a), 2), ((0, b), -2), ((a, 0), -1), ((b, 0), 1)],
        [((0, a), -1), ((0, b), 1), ((a, 0), 1), ((b, 0), -1)],
        [((0, a), 1), ((0, b), -1), ((a, 0), -2), ((b, 0), 2)],
    ]
    return [model.chain(r) for r in rows]


def check_block_faces(model: SurfaceModel, w: int) -> list:
    c = chain_block(model, w)
    rhs = block_face_rhs(model, w)
    return [model.complex.face(c, k) == rhs[k] for k in range(3)]


def signed_pairing(c: QChain, oriented: Sequence[int]) -> Fraction:
    """Sum of coefficients of the vertex permutations of ``oriented``, weighted by their sign."""
    oriented = tuple(oriented)
    total = Fraction(0)
    for x, v in c.coeffs.items():
        if len(x) == len(oriented) and sorted(x) == sorted(oriented) and len(set(x)) == len(x):
            perm = [oriented.index(a) for a in x]
            total += v * _perm_sign(perm)
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def block_tuple_classes(model: SurfaceModel, w: int, q: int, adjacent_repeats: bool = False) -> set:
    """Simplices of degree ``q`` coming from tuples over block ``w``.

    With ``adjacent_repeats=False`` only tuples without equal neighbours are
    used (the nondegenerate ones); the model itself keeps both kinds.
    """
    out = set()
    for t in itertools.product(model.blocks[w], repeat=q + 1):
        if adjacent_repeats or all(a != b for a, b in zip(t, t[1:])):
            out.add(model.simplex(t))
    return out


def triangles(model: SurfaceModel) -> list:
    return [(0, i, j) for w in range(model.g) for i, j in model.outer_pairs(w)]


def euler_characteristic(model: SurfaceModel) -> dict:
    """Cells of the triangulation after identification: ``V - E + F``."""
    verts = {model.simplex((v,)) for w in range(model.g) for v in model.blocks[w]}
    edges = set()
    for (_, i, j) in triangles(model):
        for a, b in ((0, i), (0, j), (i, j)):
            edges.add(frozenset(model.simplex((a, b))))
    faces = len(triangles(model))
    return {"V": len(verts), "E": len(edges), "F": faces, "chi": len(verts) - len(edges) + faces}


# -- class certificates --------------------------------------------------------------


def pair_chain(model: SurfaceModel, a: int, b: int) -> QChain:
    """``Δ'(a,b,a) + Δ'(a,a,a)``, whose boundary is ``Δ'(a,b) + Δ'(b,a)``."""
    return model.chain([((a, b, a), 1), ((a, a, a), 1)])


def support_tuples(model: SurfaceModel, vertices: Sequence[int], q: int) -> list:
    base = model.base(q)
    out = {model.simplex(t) for t in itertools.product(vertices, repeat=q + 1)}
    out.discard(base)
    return sorted_labels(out)


@dataclass
class TriangleCertificate:
    triangle: tuple
    literal_found: bool
    literal_supports_tried: list
    literal_target_is_cycle: bool
    correction: QChain
    psi: QChain | None
    psi_support: str
    notes: list = field(default_factory=list)


def class_certificate(model: SurfaceModel, i: int, j: int) -> TriangleCertificate:
    """Boundary certificates relating ``c(0,i,j)`` to ``8 Δ'(0,i,j)``.

    The literal equation ``∂ψ = c(0,i,j) - 8Δ'(0,i,j)`` is attempted on tuples
    over ``{0,i,j}`` and then over the block's vertex set.  Its right-hand
    side has boundary ``-4(Δ'(0,i)+Δ'(i,0)) + 4(Δ'(0,j)+Δ'(j,0)) - 4(Δ'(i,j)+Δ'(j,i))``,
    so the solve is expected to fail; the corrected equation subtracts
    ``r = -4 e(0,i) + 4 e(0,j) - 4 e(i,j)`` with ``e`` from :func:`pair_chain`.
    """
    C = model.complex
    w = model.adjacent(i, j)
    c = chain_c0ij(model, i, j)
    target = c - model.chain([((0, i, j), 8)])
    supports = [("triangle", [0, i, j]), ("block", list(model.blocks[w]))]
    tried, found = [], False
    for name, verts in supports:
        tried.append(name)
        psi = C.boundary_certificate(target, support_tuples(model, verts, 3), require_cycle=False)
        if psi is not None:
            found = True
            break
    r = pair_chain(model, 0, i).scale(-4) + pair_chain(model, 0, j).scale(4) + pair_chain(model, i, j).scale(-4)
    corrected = target - r
    psi, used = None, ""
    for name, verts in supports:
        psi = C.boundary_certificate(corrected, support_tuples(model, verts, 3))
        if psi is not None:
            used = name
            break
    return TriangleCertificate((0, i, j), found, tried, C.is_cycle(target), r, psi, used)


def triangulation_cycle(model: SurfaceModel):
    """``t = Σ Δ'(0,i,i+1)``, the pairs making up ``∂t``, and the cycle ``t - Σ e``."""
    C = model.complex
    t = model.chain([(tri, 1) for tri in triangles(model)])
    dt = C.boundary(t)
    pairs = []
    remaining = dict(dt.coeffs)
    correction = QChain.zero(2)
    for x in sorted_labels(remaining):
        v = remaining.get(x, 0)
        if not v:
            continue
        a, b = x
        y = model.simplex((b, a))
        if remaining.get(y, 0) != v:
            raise SurfaceError(f"∂t does not pair {x} with {y}")
        pairs.append((x, y, v))
        remaining[x] = 0
        remaining[y] = remaining.get(y, 0) - v
        correction = correction + pair_chain(model, a, b).scale(v)
    if any(remaining.values()):
        raise SurfaceError("∂t is not a sum of reversed pairs")
    cycle = t - correction
    if not C.is_cycle(cycle):
        raise SurfaceError("internal error: corrected triangulation chain is not a cycle")
    return t, pairs, cycle


# -- bounds and the threshold decision --------------------------------------------


def cyclic_cover_bound(g: int, n: int) -> Fraction:
    """Upper bound ``4 g' / n`` transferred from the degree-``n`` cyclic cover of genus ``n(g-1)+1``."""
    if g < 2 or n < 1:
        raise SurfaceError("need g >= 2 and n >= 1")
    return Fraction(4 * (n * (g - 1) + 1), n)


def gromov_value(g: int) -> Fraction:
    """The cited lower bound 4(g-1); not recomputed here."""
    return Fraction(4 * (g - 1))


@dataclass
class ThresholdDecision:
    decision: object  # True, False or "Unknown"
    lam: Fraction
    upper_bound: Fraction
    upper_source: str
    lower_bound: Fraction
    explanation: str


def lambda_threshold_decision(g: int, lam, n_max: int, lp_value=None) -> ThresholdDecision:
    lam = parse_q(lam)
    if lam <= 0:
        raise SurfaceError("λ must be positive")
    if n_max < 1:
        raise SurfaceError("n_max must be at least 1")
    best_n = min(range(1, n_max + 1), key=lambda n: (cyclic_cover_bound(g, n), n))
    upper = cyclic_cover_bound(g, best_n)
    source = f"cyclic cover of degree {best_n}"
    if lp_value is not None and Fraction(lp_value) < upper:
        upper, source = Fraction(lp_value), "LP normalized seminorm of c/8 on the model"
    lower = gromov_value(g)
    if lam <= lower:
        return ThresholdDecision(False, lam, upper, source, lower,
                                 f"λ <= 4(g-1) = {lower} (cited bound, not computed)")
    if lam > upper:
        first = next((n for n in range(1, n_max + 1) if cyclic_cover_bound(g, n) < lam), None)
        why = f"a normalized cycle of norm {upper} < λ exists ({source})"
        if first is not None:
            why += f"; smallest sufficient cover degree n = {first}"
        return ThresholdDecision(True, lam, upper, source, lower, why)
    return ThresholdDecision("Unknown", lam, upper, source, lower,
                             f"4(g-1) = {lower} < λ <= {upper}: no certificate within n <= {n_max}")
