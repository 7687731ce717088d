from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gammahom import linalg
from gammahom.lp import LinearProgram, LPInfeasible, LPUnbounded, solve_lp

from oracles import lp_vertex_oracle


def _random_system(rng, m, n, consistent):
    rows = [{j: Fraction(rng.randint(-3, 3)) for j in range(n) if rng.random() < 0.5} for _ in range(m)]
    x = {j: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for j in range(n)}
    b = [sum((v * x[j] for j, v in r.items()), Fraction(0)) for r in rows]
    if not consistent:
        # duplicate a row with a shifted right-hand side
        rows.append(dict(rows[0]))
        b.append(b[0] + 1)
    return rows, b


@pytest.mark.parametrize("seed", range(10))
def test_solve_dense_and_modular(seed):
    rng = random.Random(seed)
    rows, b = _random_system(rng, 30, 40, True)
    cols = list(range(40))
    for limit in (10**9, 0):
        x = linalg.solve(rows, b, cols, dense_limit=limit)
        assert x is not None and linalg.residual_is_zero(rows, x, b)


@pytest.mark.parametrize("seed", range(5))
def test_inconsistent_detected(seed):
    rng = random.Random(100 + seed)
    rows, b = _random_system(rng, 20, 10, False)
    if not rows[0]:
        rows[0] = {0: Fraction(1)}
        rows[-1] = {0: Fraction(1)}
    for limit in (10**9, 0):
        assert linalg.solve(rows, b, list(range(10)), dense_limit=limit) is None


def test_rank_and_nullspace():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: 1}]
    assert linalg.rank(rows, [0, 1, 2]) == 2
    ns = linalg.nullspace(rows, [0, 1, 2])
    assert len(ns) == 1
    v = ns[0]
    assert all(sum(Fraction(a) * v.get(c, 0) for c, a in r.items()) == 0 for r in rows)


def test_lp_small_examples():
    assert solve_lp(LinearProgram([1], [[1]], [1])).value == 1
    p = LinearProgram([1, 1], [[1, -1]], [0], A_ub=[[-1, 0]], b_ub=[-1])
    assert solve_lp(p, method="exact").value == 2
    assert solve_lp(p, method="warm").value == 2


def test_lp_unbounded_and_infeasible():
    with pytest.raises(LPUnbounded):
        solve_lp(LinearProgram([-1], [], [], lower=[0]))
    with pytest.raises(LPInfeasible):
        solve_lp(LinearProgram([1], [[1]], [-1]))


def test_lp_free_and_upper_bounds():
    # min -x - y with x free, x <= 2, y in [0, 3], x + y <= 4
    p = LinearProgram([-1, -1], A_ub=[[1, 1]], b_ub=[4], lower=[None, 0], upper=[2, 3])
    r = solve_lp(p)
    assert r.value == -4


def random_lp(rng, n):
    m_ub = rng.randint(1, 4)
    m_eq = rng.randint(0, 2)
    c = [rng.randint(-5, 5) for _ in range(n)]
    A_ub = [[rng.randint(-3, 4) for _ in range(n)] for _ in range(m_ub)]
    b_ub = [rng.randint(0, 10) for _ in range(m_ub)]
    A_eq = [[rng.randint(-2, 3) for _ in range(n)] for _ in range(m_eq)]
    b_eq = [rng.randint(0, 6) for _ in range(m_eq)]
    upper = [rng.randint(1, 6) for _ in range(n)]
    return c, A_eq, b_eq, A_ub, b_ub, upper


def check_against_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    c, A_eq, b_eq, A_ub, b_ub, upper = random_lp(rng, n)
    expected = lp_vertex_oracle(c, A_eq, b_eq, A_ub, b_ub, upper)
    p = LinearProgram(c, A_eq, b_eq, A_ub, b_ub, upper=upper)
    if expected is None:
        with pytest.raises(LPInfeasible):
            solve_lp(p)
        return None
    got = solve_lp(p)
    assert got.value == expected
    return got.value


@pytest.mark.parametrize("seed", range(40))
def test_lp_against_vertex_enumeration(seed):
    check_against_oracle(seed)
