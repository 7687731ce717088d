"""Rational chains on a levelwise simplicial set: boundary, Moore normalization,
rational homology and the ℓ¹ / normalized seminorms computed by exact LP."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from ._util import fmt_q, parse_q, render_label, sorted_labels
from .lp import LinearProgram, solve_lp
from .simplicial import LevelwiseSimplicialSet


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class QChain:
    """A finitely supported rational combination of non-base simplices of one degree."""

    degree: int
    coeffs: Mapping

    def __post_init__(self):
        clean = {x: Fraction(v) for x, v in dict(self.coeffs).items() if v != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, degree: int) -> "QChain":
        return cls(degree, {})

    @classmethod
    def of(cls, degree: int, terms: Iterable) -> "QChain":
        acc: dict = {}
        for x, v in terms:
            acc[x] = acc.get(x, Fraction(0)) + Fraction(v)
        return cls(degree, acc)

    def norm(self) -> Fraction:
        return sum((abs(v) for v in self.coeffs.values()), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "QChain") -> "QChain":
        self._same(other)
        out = dict(self.coeffs)
        for x, v in other.coeffs.items():
            out[x] = out.get(x, Fraction(0)) + v
        return QChain(self.degree, out)

    def __sub__(self, other: "QChain") -> "QChain":
        return self + other.scale(-1)

    def __neg__(self) -> "QChain":
        return self.scale(-1)

    def scale(self, r) -> "QChain":
        r = Fraction(r)
        return QChain(self.degree, {x: r * v for x, v in self.coeffs.items()})

    def _same(self, other):
        if self.degree != other.degree:
            raise ChainError(f"degrees differ: {self.degree} vs {other.degree}")

    def __eq__(self, other):
        return isinstance(other, QChain) and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def to_json(self) -> dict:
        items = sorted_labels(self.coeffs)
        return {"degree": self.degree, "coeffs": {render_label(x): fmt_q(self.coeffs[x]) for x in items}}


class ChainComplex:
    """The standard (unnormalized) rational chain complex of a pointed simplicial set.

    The basis in degree q is every non-base q-simplex, degenerate ones included;
    faces landing on the base simplex contribute zero.
    """

    def __init__(self, X: LevelwiseSimplicialSet):
        self.X = X
        self._labels: dict = {}
        self._nondeg: dict = {}

    @property
    def dim_cap(self) -> int:
        return self.X.dim_cap

    def basis(self, q: int) -> tuple:
        return self.X.levels[q].non_base

    def simplex_by_label(self, q: int, text: str):
        if q not in self._labels:
            self._labels[q] = {render_label(x): x for x in self.basis(q)}
        try:
            return self._labels[q][text]
        except KeyError:
            raise ChainError(f"no non-base {q}-simplex labelled {text!r}") from None

    def chain_from_json(self, data: Mapping) -> QChain:
        try:
            q = int(data["degree"])
            raw = data["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ChainError(f"chain JSON: bad or missing field ({exc})") from None
        if q < 0 or q > self.dim_cap:
            raise ChainError(f"chain degree {q} outside 0..{self.dim_cap}")
        return QChain(q, {self.simplex_by_label(q, k): parse_q(v) for k, v in raw.items()})

    def check(self, c: QChain) -> None:
        base = self.X.base(c.degree)
        members = self.X.levels[c.degree]
        for x in c.coeffs:
            if x == base or x not in members:
                raise ChainError(f"{x!r} is not a non-base {c.degree}-simplex")

    # -- structure maps ----------------------------------------------------

    def face(self, c: QChain, i: int) -> QChain:
        q = c.degree
        if q < 1 or not 0 <= i <= q:
            raise ChainError(f"face d{i} undefined in degree {q}")
        base = self.X.base(q - 1)
        table = self.X.faces[q][i]
        return QChain.of(q - 1, ((table[x], v) for x, v in c.coeffs.items() if table[x] != base))

    def degeneracy(self, c: QChain, j: int) -> QChain:
        q = c.degree
        if q >= self.dim_cap or not 0 <= j <= q:
            raise ChainError(f"degeneracy s{j} undefined in degree {q} (cap {self.dim_cap})")
        table = self.X.degeneracies[q][j]
        return QChain.of(q + 1, ((table[x], v) for x, v in c.coeffs.items()))

    def boundary(self, c: QChain) -> QChain:
        q = c.degree
        if q == 0:
            return QChain.zero(-1)
        out: dict = {}
        base = self.X.base(q - 1)
        for i in range(q + 1):
            sign = -1 if i % 2 else 1
            table = self.X.faces[q][i]
            for x, v in c.coeffs.items():
                y = table[x]
                if y != base:
                    out[y] = out.get(y, Fraction(0)) + sign * v
        return QChain(q - 1, out)

    def is_cycle(self, c: QChain) -> bool:
        return c.degree == 0 or self.boundary(c).is_zero()

    def in_moore(self, c: QChain) -> bool:
        """Membership in ``NA_n``: ``d_j c = 0`` for ``j < n``."""
        return all(self.face(c, j).is_zero() for j in range(c.degree))

    def all_faces_vanish(self, c: QChain) -> bool:
        return c.degree == 0 or all(self.face(c, j).is_zero() for j in range(c.degree + 1))

    # -- normalization -------------------------------------------------------

    def normalize(self, c: QChain) -> QChain:
        """Apply ``(Id - s_j d_j)`` for ``j = 0, ..., n-1`` in increasing order; lands in ``NA_n``."""
        n = c.degree
        for j in range(n):
            c = c - self.degeneracy(self.face(c, j), j)
        return c

    def normalize_as_printed(self, c: QChain) -> QChain:
        """The composite of ``Id - s_{j+1} d_{j+1}``, ``j = 0..n-2``, with those indices taken literally."""
        n = c.degree
        for j in range(n - 1):
            c = c - self.degeneracy(self.face(c, j + 1), j + 1)
        return c

    # -- homology over Q -------------------------------------------------------

    def nondegenerate(self, q: int) -> tuple:
        if q not in self._nondeg:
            if q == 0:
                self._nondeg[q] = self.basis(0)
            else:
                image = set()
                for j in range(q):
                    image.update(self.X.degeneracies[q - 1][j].values())
                self._nondeg[q] = tuple(x for x in self.basis(q) if x not in image)
        return self._nondeg[q]

    def _reduced_boundary_rows(self, q: int) -> list:
        """Columns of ``∂_q`` on the nondegenerate quotient, as dicts over ``nondegenerate(q-1)``."""
        keep = set(self.nondegenerate(q - 1))
        cols = []
        for x in self.nondegenerate(q):
            d = self.boundary(QChain(q, {x: 1}))
            cols.append({y: v for y, v in d.coeffs.items() if y in keep})
        return cols

    def homology_Q(self, n: int):
        """``(betti, cycles)``: the rank of ``H_n(X; Q)`` (reduced) and normalized representing cycles."""
        self.X.require_cap(n + 1, f"H_{n}")
        nd_n = list(self.nondegenerate(n))
        if n == 0:
            kernel = [{x: Fraction(1)} for x in nd_n]
        else:
            cols = self._reduced_boundary_rows(n)
            rows = _transpose_cols(cols, nd_n)
            kernel = linalg.nullspace(rows, nd_n)
        span = linalg.EchelonBasis()
        for v in self._reduced_boundary_rows(n + 1):
            span.add(v)
        chosen = [vec for vec in kernel if span.add(vec)]
        cycles = []
        for vec in chosen:
            z = self.normalize(QChain(n, vec))
            if not (self.is_cycle(z) and self.in_moore(z)):
                raise ChainError("internal error: lifted class is not a normalized cycle")
            cycles.append(z)
        return len(chosen), cycles

    # -- boundaries ----------------------------------------------------------

    def boundary_certificate(self, c: QChain, support: Sequence | None = None,
                             require_cycle: bool = True) -> QChain | None:
        """A chain ``ψ`` (supported on ``support`` if given) with ``∂ψ = c``, or None."""
        n = c.degree
        self.X.require_cap(n + 1, "a boundary certificate")
        self.check(c)
        if require_cycle and not self.is_cycle(c):
            raise ChainError("the chain is not a cycle")
        cols = list(self.basis(n + 1) if support is None else support)
        rows_of: dict = {}
        for k, y in enumerate(cols):
            for x, v in self.boundary(QChain(n + 1, {y: 1})).coeffs.items():
                rows_of.setdefault(x, {})[k] = v
        targets = set(rows_of) | set(c.coeffs)
        order = sorted_labels(targets)
        rows = [rows_of.get(x, {}) for x in order]
        b = [c.coeffs.get(x, Fraction(0)) for x in order]
        sol = linalg.solve(rows, b, list(range(len(cols))))
        if sol is None:
            return None
        psi = QChain(n + 1, {cols[k]: v for k, v in sol.items()})
        if self.boundary(psi) != c:
            raise ChainError("internal error: certificate does not verify")
        return psi

    def is_homologous_zero(self, c: QChain) -> QChain | None:
        return self.boundary_certificate(c)

    # -- seminorms ----------------------------------------------------------------

    def _seminorm_lp(self, c: QChain, normalized: bool):
        n = c.degree
        self.X.require_cap(n + 1, "a seminorm")
        self.check(c)
        if not self.is_cycle(c):
            raise ChainError("seminorms are defined on cycles")
        sigma = list(self.basis(n))
        tau = list(self.basis(n + 1))
        ns, nt = len(sigma), len(tau)
        spos = {x: k for k, x in enumerate(sigma)}
        # variables: u (ns), v (ns), psi (nt, free)
        rows = [dict() for _ in range(ns)]
        for k in range(ns):
            rows[k][k] = 1
            rows[k][ns + k] = -1
        for t, y in enumerate(tau):
            for x, val in self.boundary(QChain(n + 1, {y: 1})).coeffs.items():
                rows[spos[x]][2 * ns + t] = -val
        b = [c.coeffs.get(x, Fraction(0)) for x in sigma]
        if normalized and n >= 1:
            base = self.X.base(n - 1)
            for i in range(n + 1):
                table = self.X.faces[n][i]
                extra: dict = {}
                for k, x in enumerate(sigma):
                    y = table[x]
                    if y == base:
                        continue
                    row = extra.setdefault(y, {})
                    row[k] = row.get(k, 0) + 1
                    row[ns + k] = row.get(ns + k, 0) - 1
                for y in sorted_labels(extra):
                    rows.append(extra[y])
                    b.append(Fraction(0))
        objective = [1] * (2 * ns) + [0] * nt
        lower = [0] * (2 * ns) + [None] * nt
        res = solve_lp(LinearProgram(objective, rows, b, lower=lower))
        phi = QChain(n, {x: res.x[k] - res.x[ns + k] for k, x in enumerate(sigma)})
        return res.value, phi, res

    def l1_seminorm(self, c: QChain):
        """``min ‖c + ∂ψ‖₁`` over the model; returns ``(value, optimal representative)``."""
        value, phi, _ = self._seminorm_lp(c, normalized=False)
        return value, phi

    def normalized_seminorm(self, c: QChain):
        """Same minimum over representatives with every face ``d_i φ = 0``."""
        value, phi, _ = self._seminorm_lp(c, normalized=True)
        if not self.all_faces_vanish(phi):
            raise ChainError("internal error: witness is not normalized")
        return value, phi


def _transpose_cols(cols: Sequence[Mapping], col_labels: Sequence) -> list:
    """Turn a list of column dicts (indexed like ``col_labels``) into row dicts keyed by label."""
    rows: dict = {}
    for label, col in zip(col_labels, cols):
        for r, v in col.items():
            rows.setdefault(r, {})[label] = v
    return [rows[r] for r in sorted_labels(rows)]


def lambda_membership_value(complex_: ChainComplex, classes: Sequence[QChain], lam) -> tuple:
    """``(Σ_j ‖c_j‖^nor < λ, the sum)`` with exact comparison."""
    lam = parse_q(lam)
    if lam <= 0:
        raise ChainError("λ must be positive")
    total = Fraction(0)
    for c in classes:
        total += complex_.normalized_seminorm(c)[0]
    return total < lam, total
