"""Exact rational linear programming.

``solve_lp`` converts a problem to standard form ``min c·x, A x = b, x >= 0``
and runs a two-phase tableau simplex over ``Fraction`` with Bland's rule.
Large problems may instead start from the optimal basis reported by HiGHS
(floating point); that basis is re-solved exactly, its primal feasibility and
reduced costs are checked in rational arithmetic, and the exact simplex
continues from it if the check fails.  The returned optimum is always exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from flint import fmpq, fmpq_mat

log = logging.getLogger(__name__)

WARM_START_SIZE = 20000  # rows * columns above which HiGHS supplies the starting basis


class LPInfeasible(Exception):
    pass


class LPUnbounded(Exception):
    pass


class LPError(ValueError):
    pass


def _row(r, n: int) -> dict:
    if isinstance(r, Mapping):
        out = {int(j): Fraction(v) for j, v in r.items() if v != 0}
    else:
        if len(r) != n:
            raise LPError(f"constraint row has {len(r)} entries, expected {n}")
        out = {j: Fraction(v) for j, v in enumerate(r) if v != 0}
    if any(j < 0 or j >= n for j in out):
        raise LPError("constraint row refers to a variable out of range")
    return out


@dataclass
class LinearProgram:
    """``min objective·x`` s.t. ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``lower <= x <= upper``.

    Rows may be dense lists or sparse ``{index: value}`` dicts.  Bounds default
    to ``x >= 0``; a ``None`` bound is infinite.
    """

    objective: Sequence
    A_eq: Sequence = ()
    b_eq: Sequence = ()
    A_ub: Sequence = ()
    b_ub: Sequence = ()
    lower: Sequence | None = None
    upper: Sequence | None = None

    def __post_init__(self):
        n = len(self.objective)
        self.objective = [Fraction(v) for v in self.objective]
        if len(self.A_eq) != len(self.b_eq) or len(self.A_ub) != len(self.b_ub):
            raise LPError("constraint matrix and right-hand side lengths differ")
        self.A_eq = [_row(r, n) for r in self.A_eq]
        self.A_ub = [_row(r, n) for r in self.A_ub]
        self.b_eq = [Fraction(v) for v in self.b_eq]
        self.b_ub = [Fraction(v) for v in self.b_ub]
        self.lower = [Fraction(0)] * n if self.lower is None else [None if v is None else Fraction(v) for v in self.lower]
        self.upper = [None] * n if self.upper is None else [None if v is None else Fraction(v) for v in self.upper]
        if len(self.lower) != n or len(self.upper) != n:
            raise LPError("bounds must have one entry per variable")
        for lo, hi in zip(self.lower, self.upper):
            if lo is not None and hi is not None and lo > hi:
                raise LPError("a lower bound exceeds its upper bound")

    @property
    def nvars(self) -> int:
        return len(self.objective)


@dataclass
class LPResult:
    value: Fraction
    x: list
    pivots: int = 0
    method: str = "tableau"
    notes: list = field(default_factory=list)


@dataclass
class _Standard:
    c: list
    rows: list
    b: list
    const: Fraction
    recover: list  # per original variable: (offset, [(std column, coefficient)])


def _standardize(p: LinearProgram) -> _Standard:
    cols = 0
    recover = []
    extra_rows, extra_b = [], []
    for lo, hi in zip(p.lower, p.upper):
        if lo is not None:
            j = cols
            cols += 1
            recover.append((lo, [(j, Fraction(1))]))
            if hi is not None:
                s = cols
                cols += 1
                extra_rows.append({j: Fraction(1), s: Fraction(1)})
                extra_b.append(hi - lo)
        elif hi is not None:
            recover.append((hi, [(cols, Fraction(-1))]))
            cols += 1
        else:
            recover.append((Fraction(0), [(cols, Fraction(1)), (cols + 1, Fraction(-1))]))
            cols += 2
    rows, b = [], []

    def translate(row, rhs):
        out: dict = {}
        for i, a in row.items():
            off, terms = recover[i]
            rhs -= a * off
            for j, coef in terms:
                out[j] = out.get(j, 0) + a * coef
        return {j: v for j, v in out.items() if v != 0}, rhs

    for row, rhs in zip(p.A_eq, p.b_eq):
        r, v = translate(row, rhs)
        rows.append(r)
        b.append(v)
    for row, rhs in zip(p.A_ub, p.b_ub):
        r, v = translate(row, rhs)
        r[cols] = Fraction(1)
        cols += 1
        rows.append(r)
        b.append(v)
    rows.extend(extra_rows)
    b.extend(extra_b)
    c = [Fraction(0)] * cols
    const = Fraction(0)
    for i, ci in enumerate(p.objective):
        off, terms = recover[i]
        const += ci * off
        for j, coef in terms:
            c[j] += ci * coef
    return _Standard(c, rows, b, const, recover)


def _recover(p: LinearProgram, std: _Standard, xs: Sequence) -> list:
    return [off + sum((coef * xs[j] for j, coef in terms), Fraction(0)) for off, terms in std.recover]


# -- exact tableau simplex ---------------------------------------------------


class _Tableau:
    """Dense tableau over ``Fraction``; columns ``0..n-1`` structural, ``n..n+m-1`` artificial."""

    def __init__(self, rows, b, n):
        m = len(rows)
        self.m, self.n = m, n
        self.T = []
        self.rhs = []
        for i, (row, bi) in enumerate(zip(rows, b)):
            sign = -1 if bi < 0 else 1
            line = [Fraction(0)] * (n + m)
            for j, v in row.items():
                line[j] = sign * v
            line[n + i] = Fraction(1)
            self.T.append(line)
            self.rhs.append(sign * bi)
        self.basis = [n + i for i in range(m)]
        self.pivots = 0

    def is_artificial(self, j) -> bool:
        return j >= self.n

    def reduced_costs(self, cost):
        r = list(cost)
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.T[i]
                for j in range(len(r)):
                    if row[j]:
                        r[j] -= cb * row[j]
        return r

    def pivot(self, i, j):
        T = self.T
        prow = T[i]
        pv = prow[j]
        if pv != 1:
            inv = 1 / pv
            T[i] = prow = [v * inv for v in prow]
            self.rhs[i] *= inv
        for k in range(self.m):
            if k != i:
                f = T[k][j]
                if f:
                    row = T[k]
                    T[k] = [a - f * b if b else a for a, b in zip(row, prow)]
                    self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def run(self, cost, pinned: bool):
        """Bland's rule; returns the final reduced-cost row.  Raises LPUnbounded.

        Artificial columns never enter.  With ``pinned`` (phase two) a basic
        artificial is held at zero and leaves on any nonzero pivot entry.
        """
        r = self.reduced_costs(cost)
        while True:
            enter = None
            for j in range(self.n + self.m):
                if r[j] < 0 and not self.is_artificial(j):
                    enter = j
                    break
            if enter is None:
                return r
            best, leave = None, None
            for i in range(self.m):
                a = self.T[i][enter]
                if not a:
                    continue
                if pinned and self.is_artificial(self.basis[i]):
                    ratio = Fraction(0)  # artificial pinned at zero must leave
                elif a > 0:
                    ratio = self.rhs[i] / a
                else:
                    continue
                if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                    best, leave = ratio, i
            if leave is None:
                raise LPUnbounded("objective is unbounded below")
            self.pivot(leave, enter)
            factor = r[enter]
            prow = self.T[leave]
            r = [rv - factor * pv if pv else rv for rv, pv in zip(r, prow)]

    def solution(self) -> list:
        x = [Fraction(0)] * (self.n + self.m)
        for i, bj in enumerate(self.basis):
            x[bj] = self.rhs[i]
        return x


def _phase_two(tab: _Tableau, c: Sequence) -> None:
    cost = list(c) + [Fraction(0)] * tab.m
    tab.run(cost, pinned=True)


def _cold_solve(std: _Standard) -> _Tableau:
    n, m = len(std.c), len(std.rows)
    tab = _Tableau(std.rows, std.b, n)
    if m:
        phase1 = [Fraction(0)] * n + [Fraction(1)] * m
        tab.run(phase1, pinned=False)
        infeas = sum((tab.rhs[i] for i, bj in enumerate(tab.basis) if bj >= n), Fraction(0))
        if infeas > 0:
            raise LPInfeasible("no point satisfies the constraints")
    _phase_two(tab, std.c)
    return tab


# -- warm start from a floating-point basis ---------------------------------


def _highs_basis(std: _Standard):
    import highspy
    import numpy as np

    n, m = len(std.c), len(std.rows)
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("random_seed", 0)
    lp = highspy.HighsLp()
    lp.num_col_, lp.num_row_ = n, m
    lp.col_cost_ = np.array([float(v) for v in std.c])
    lp.col_lower_ = np.zeros(n)
    lp.col_upper_ = np.full(n, highspy.kHighsInf)
    lp.row_lower_ = lp.row_upper_ = np.array([float(v) for v in std.b])
    cols: list = [[] for _ in range(n)]
    for i, row in enumerate(std.rows):
        for j, v in row.items():
            cols[j].append((i, float(v)))
    start, index, value = [0], [], []
    for entries in cols:
        for i, v in entries:
            index.append(i)
            value.append(v)
        start.append(len(index))
    lp.a_matrix_.format_ = highspy.MatrixFormat.kColwise
    lp.a_matrix_.start_ = np.array(start, dtype=np.int32)
    lp.a_matrix_.index_ = np.array(index, dtype=np.int32)
    lp.a_matrix_.value_ = np.array(value)
    h.passModel(lp)
    h.run()
    status = h.modelStatusToString(h.getModelStatus())
    if status != "Optimal":
        return None, status
    basis = h.getBasis()
    kb = highspy.HighsBasisStatus.kBasic
    structural = [j for j, s in enumerate(basis.col_status) if s == kb]
    artificial = [n + i for i, s in enumerate(basis.row_status) if s == kb]
    return structural + artificial, status


def _exact_basis_check(std: _Standard, basis: Sequence):
    """Exact basic solution and reduced costs for ``basis``; None when singular."""
    n, m = len(std.c), len(std.rows)
    if len(basis) != m:
        return None
    pos = {bj: k for k, bj in enumerate(basis)}
    flat = [fmpq(0)] * (m * m)
    for i, row in enumerate(std.rows):
        for j, v in row.items():
            k = pos.get(j)
            if k is not None:
                flat[i * m + k] = fmpq(v.numerator, v.denominator)
    for bj, k in pos.items():
        if bj >= n:
            flat[(bj - n) * m + k] = fmpq(1)
    B = fmpq_mat(m, m, flat)
    try:
        xb = B.solve(fmpq_mat(m, 1, [fmpq(v.numerator, v.denominator) for v in std.b]))
        cb = [std.c[bj] if bj < n else Fraction(0) for bj in basis]
        y = B.transpose().solve(fmpq_mat(m, 1, [fmpq(v.numerator, v.denominator) for v in cb]))
    except ZeroDivisionError:
        return None
    frac = lambda e: Fraction(int(e.p), int(e.q))
    xb = [frac(xb[k, 0]) for k in range(m)]
    y = [frac(y[i, 0]) for i in range(m)]
    reduced = list(std.c)
    for i, row in enumerate(std.rows):
        if y[i]:
            for j, v in row.items():
                reduced[j] -= y[i] * v
    return xb, reduced


def _warm_solve(std: _Standard):
    basis, status = _highs_basis(std)
    if basis is None:
        return None, f"HiGHS status {status}; falling back to the exact two-phase simplex"
    checked = _exact_basis_check(std, basis)
    if checked is None:
        return None, "HiGHS basis is singular in exact arithmetic; falling back"
    xb, reduced = checked
    n = len(std.c)
    basic = set(basis)
    primal_ok = all(v >= 0 if bj < n else v == 0 for bj, v in zip(basis, xb))
    dual_ok = all(reduced[j] >= 0 for j in range(n) if j not in basic)
    if primal_ok and dual_ok:
        x = [Fraction(0)] * n
        for bj, v in zip(basis, xb):
            if bj < n:
                x[bj] = v
        return x, "HiGHS basis verified optimal in exact arithmetic"
    if not primal_ok:
        return None, "HiGHS basis is not primal feasible in exact arithmetic; falling back"
    tab = _tableau_from_basis(std, basis)
    _phase_two(tab, std.c)
    return tab.solution()[:n], f"exact simplex continued from the HiGHS basis ({tab.pivots} pivots)"


def _tableau_from_basis(std: _Standard, basis: Sequence) -> _Tableau:
    n, m = len(std.c), len(std.rows)
    tab = _Tableau(std.rows, std.b, n)
    for k, bj in enumerate(basis):
        rows = [i for i in range(m) if tab.T[i][bj] != 0 and tab.basis[i] >= n and tab.basis[i] not in basis]
        if bj in tab.basis:
            continue
        if not rows:
            raise LPError("warm-start basis is singular")
        tab.pivot(rows[0], bj)
    return tab


def solve_lp(p: LinearProgram, method: str = "auto") -> LPResult:
    """Exact optimum and witness.  ``method``: ``auto``, ``exact`` (cold start) or ``warm``."""
    std = _standardize(p)
    n, m = len(std.c), len(std.rows)
    notes = []
    xs = None
    pivots = 0
    if method == "warm" or (method == "auto" and m * n > WARM_START_SIZE):
        xs, note = _warm_solve(std)
        notes.append(note)
        used = "warm"
        if xs is None:
            log.debug("warm start rejected (%s); falling back to the exact tableau", note)
    if xs is None:
        tab = _cold_solve(std)
        xs = tab.solution()[:n]
        pivots = tab.pivots
        used = "tableau"
    x = _recover(p, std, xs)
    _verify(p, x)
    value = sum((ci * xi for ci, xi in zip(p.objective, x)), Fraction(0))
    return LPResult(value, x, pivots, used, notes)


def _verify(p: LinearProgram, x: Sequence) -> None:
    for row, rhs in zip(p.A_eq, p.b_eq):
        if sum((v * x[j] for j, v in row.items()), Fraction(0)) != rhs:
            raise LPError("internal error: witness violates an equality")
    for row, rhs in zip(p.A_ub, p.b_ub):
        if sum((v * x[j] for j, v in row.items()), Fraction(0)) > rhs:
            raise LPError("internal error: witness violates an inequality")
    for xi, lo, hi in zip(x, p.lower, p.upper):
        if (lo is not None and xi < lo) or (hi is not None and xi > hi):
            raise LPError("internal error: witness violates a bound")
