"""Exact rational linear algebra on sparse rows.

Rows are dicts ``{column: Fraction}``.  Large systems are handled by picking
pivots modulo a 61-bit prime (fast), solving the resulting square system over
the rationals, and then verifying the answer exactly.  A pivot choice that is
nonsingular mod p is nonsingular over Q, and every returned solution or
insolvability witness is checked in exact arithmetic, so the prime only
affects speed, never correctness.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from flint import fmpq, fmpq_mat, nmod_mat

PRIME = 2**61 - 1


def _q(x) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _frac(e) -> Fraction:
    return Fraction(int(e.p), int(e.q))


def _integer_rows(rows: Sequence[Mapping], extra: Sequence | None = None):
    """Scale each row (and its right-hand side) to integers; dependencies are unchanged."""
    out, rhs = [], []
    for i, row in enumerate(rows):
        vals = list(row.values())
        if extra is not None:
            vals.append(Fraction(extra[i]))
        den = lcm(*(Fraction(v).denominator for v in vals)) if vals else 1
        out.append({c: int(Fraction(v) * den) for c, v in row.items()})
        if extra is not None:
            rhs.append(int(Fraction(extra[i]) * den))
    return out, rhs


def _modp_matrix(rows: Sequence[Mapping], cols: Sequence, rhs: Sequence | None = None) -> nmod_mat:
    index = {c: j for j, c in enumerate(cols)}
    width = len(cols) + (1 if rhs is not None else 0)
    flat = [0] * (len(rows) * width)
    for i, row in enumerate(rows):
        base = i * width
        for c, v in row.items():
            j = index.get(c)
            if j is not None:
                flat[base + j] = v % PRIME
        if rhs is not None:
            flat[base + width - 1] = rhs[i] % PRIME
    return nmod_mat(len(rows), width, flat, PRIME)


def _pivot_columns(M: nmod_mat) -> list:
    if M.nrows() == 0 or M.ncols() == 0:
        return []
    R, rank = M.rref()
    pivots = []
    ncols = M.ncols()
    for i in range(rank):
        for j in range(ncols):
            if int(R[i, j]) != 0:
                pivots.append(j)
                break
    return pivots


def _transpose(rows: Sequence[Mapping], cols: Sequence) -> list:
    keep = set(cols)
    out = [dict() for _ in cols]
    pos = {c: j for j, c in enumerate(cols)}
    for i, row in enumerate(rows):
        for c, v in row.items():
            if c in keep:
                out[pos[c]][i] = v
    return out


def residual_is_zero(rows: Sequence[Mapping], x: Mapping, b: Sequence) -> bool:
    for i, row in enumerate(rows):
        acc = Fraction(0)
        for c, v in row.items():
            xv = x.get(c)
            if xv:
                acc += Fraction(v) * xv
        if acc != Fraction(b[i]):
            return False
    return True


def _square_solve(rows: Sequence[Mapping], row_ids: Sequence[int], cols: Sequence, b: Sequence) -> dict | None:
    r = len(cols)
    if r == 0:
        return {}
    pos = {c: j for j, c in enumerate(cols)}
    flat = [fmpq(0)] * (r * r)
    for a, i in enumerate(row_ids):
        for c, v in rows[i].items():
            j = pos.get(c)
            if j is not None:
                flat[a * r + j] = _q(v)
    M = fmpq_mat(r, r, flat)
    rhs = fmpq_mat(r, 1, [_q(b[i]) for i in row_ids])
    try:
        sol = M.solve(rhs)
    except ZeroDivisionError:
        return None
    return {c: _frac(sol[j, 0]) for j, c in enumerate(cols) if sol[j, 0] != 0}


def _solve_modular(rows: Sequence[Mapping], b: Sequence, cols: Sequence, certify: bool = True):
    """Try to solve ``A x = b``; returns ``("ok", x)``, ``("no", y)`` or ``("unknown", None)``.

    ``("no", y)`` carries a verified witness: ``y A = 0`` and ``y b = 1``.
    """
    irows, ib = _integer_rows(rows, b)
    pivots = _pivot_columns(_modp_matrix(irows, cols, ib))
    n = len(cols)
    if n in pivots:
        if not certify:
            return "unknown", None
        tr = _transpose(irows, cols) + [{i: v for i, v in enumerate(ib) if v}]
        target = [0] * n + [1]
        status, y = _solve_modular(tr, target, list(range(len(rows))), certify=False)
        return ("no", y) if status == "ok" else ("unknown", None)
    pcols = [cols[j] for j in pivots]
    ok, x = _solve_modular_direct(irows, ib, pcols)
    if ok and residual_is_zero(irows, x, ib):
        return "ok", x
    return "unknown", None


def _solve_modular_direct(irows, ib, pcols):
    """Square solve on pivot columns ``pcols`` and independent rows chosen mod p."""
    if not pcols:
        return True, {}
    tr = _transpose(irows, pcols)
    row_ids = _pivot_columns(_modp_matrix(tr, list(range(len(irows)))))
    if len(row_ids) < len(pcols):
        return False, None
    x = _square_solve(irows, row_ids, pcols, ib)
    return x is not None, x


def _solve_dense(rows: Sequence[Mapping], b: Sequence, cols: Sequence):
    pos = {c: j for j, c in enumerate(cols)}
    n = len(cols)
    flat = []
    for i, row in enumerate(rows):
        line = [fmpq(0)] * (n + 1)
        for c, v in row.items():
            if c in pos:
                line[pos[c]] = _q(v)
        line[n] = _q(b[i])
        flat.extend(line)
    if not rows:
        return {}
    R, rank = fmpq_mat(len(rows), n + 1, flat).rref()
    x = {}
    for i in range(rank):
        lead = next(j for j in range(n + 1) if R[i, j] != 0)
        if lead == n:
            return None
        val = _frac(R[i, n])
        if val:
            x[cols[lead]] = val
    return x


def solve(rows: Sequence[Mapping], b: Sequence, cols: Sequence | None = None,
          dense_limit: int = 40000) -> dict | None:
    """An exact solution of ``A x = b`` restricted to ``cols`` (free variables set to 0), or None."""
    if cols is None:
        cols = sorted({c for row in rows for c in row}, key=repr)
    cols = list(cols)
    if len(rows) * (len(cols) + 1) <= dense_limit:
        return _solve_dense(rows, b, cols)
    status, vec = _solve_modular(rows, b, cols)
    if status == "ok":
        return vec
    if status == "no":
        return None
    return _solve_dense(rows, b, cols)


def rank(rows: Sequence[Mapping], cols: Sequence) -> int:
    """Exact rank over Q."""
    if not rows or not cols:
        return 0
    pos = {c: j for j, c in enumerate(cols)}
    flat = [fmpq(0)] * (len(rows) * len(cols))
    for i, row in enumerate(rows):
        for c, v in row.items():
            flat[i * len(cols) + pos[c]] = _q(v)
    return fmpq_mat(len(rows), len(cols), flat).rank()


def nullspace(rows: Sequence[Mapping], cols: Sequence) -> list:
    """A basis (list of dicts) of ``{x : A x = 0}`` over Q, from the reduced row echelon form."""
    cols = list(cols)
    n = len(cols)
    if not rows:
        return [{c: Fraction(1)} for c in cols]
    pos = {c: j for j, c in enumerate(cols)}
    flat = [fmpq(0)] * (len(rows) * n)
    for i, row in enumerate(rows):
        for c, v in row.items():
            flat[i * n + pos[c]] = _q(v)
    R, r = fmpq_mat(len(rows), n, flat).rref()
    leads = []
    for i in range(r):
        leads.append(next(j for j in range(n) if R[i, j] != 0))
    free = [j for j in range(n) if j not in set(leads)]
    basis = []
    for f in free:
        vec = {cols[f]: Fraction(1)}
        for i, lj in enumerate(leads):
            v = R[i, f]
            if v != 0:
                vec[cols[lj]] = -_frac(v)
        basis.append(vec)
    return basis


def square_solve_dense(M: Sequence[Sequence], b: Sequence) -> list | None:
    """Solve a small dense square system exactly; None when singular."""
    n = len(M)
    if n == 0:
        return []
    A = fmpq_mat(n, n, [_q(v) for row in M for v in row])
    try:
        sol = A.solve(fmpq_mat(n, 1, [_q(v) for v in b]))
    except ZeroDivisionError:
        return None
    return [_frac(sol[i, 0]) for i in range(n)]


class EchelonBasis:
    """Incrementally maintained echelon form over Q for independence tests."""

    def __init__(self):
        self.rows: dict = {}  # pivot -> row with coefficient 1 at the pivot

    def reduce(self, vec: Mapping) -> dict:
        v = {c: Fraction(a) for c, a in vec.items() if a}
        while v:
            hit = None
            for c in sorted(v, key=repr):
                if c in self.rows:
                    hit = c
                    break
            if hit is None:
                return v
            f = v[hit]
            for c, a in self.rows[hit].items():
                val = v.get(c, Fraction(0)) - f * a
                if val:
                    v[c] = val
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; True when it was independent of the rows so far."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v, key=repr)
        lead = v[pivot]
        self.rows[pivot] = {c: a / lead for c, a in v.items()}
        return True

    def __len__(self):
        return len(self.rows)
