"""Property-based checks of the algebraic laws the library relies on."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gammahom import linalg
from gammahom._util import Partition, fmt_q, parse_q
from gammahom.chains import QChain
from gammahom.gamma import (FinPointedSet, GammaMorphism, compose_gamma_morphisms, cyclic_group,
                            ha_gamma_set, hb_gamma_set, smash_pointed)
from gammahom.lp import LinearProgram, LPInfeasible, solve_lp
from gammahom.surfaces import build_surface, cyclic_cover_bound
from gammahom.twosets import TwoSet, all_subobjects, classify, preimage_of_true

from oracles import lp_vertex_oracle

SURFACE = build_surface(2)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def morphisms(draw, k=None, m=None):
    k = draw(st.integers(0, 3)) if k is None else k
    m = draw(st.integers(0, 3)) if m is None else m
    table = [0] + [draw(st.integers(0, m)) for _ in range(k)]
    return GammaMorphism(k, m, tuple(table))


@st.composite
def composable_triples(draw):
    a, b, c, d = (draw(st.integers(0, 3)) for _ in range(4))
    return draw(morphisms(a, b)), draw(morphisms(b, c)), draw(morphisms(c, d))


@given(composable_triples())
def test_composition_is_associative(fgh):
    f, g, h = fgh
    left = compose_gamma_morphisms(compose_gamma_morphisms(f, g), h)
    right = compose_gamma_morphisms(f, compose_gamma_morphisms(g, h))
    assert left == right


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_ha_and_hb_are_functors(k, m, data):
    f = data.draw(morphisms(k, m))
    g = data.draw(morphisms(m, data.draw(st.integers(0, 3))))
    gf = compose_gamma_morphisms(f, g).as_pointed_map()
    for F in (ha_gamma_set(cyclic_group(3)), hb_gamma_set()):
        values = list(F.eval(FinPointedSet.k_plus(k)))
        v = data.draw(st.sampled_from(values))
        assert F.apply(gf, v) == F.apply(g.as_pointed_map(), F.apply(f.as_pointed_map(), v))


@given(st.integers(0, 4), st.integers(0, 4))
def test_smash_size(k, m):
    assert len(smash_pointed(FinPointedSet.k_plus(k), FinPointedSet.k_plus(m)).non_base) == k * m


@given(st.integers(2, 4), st.data())
def test_ha_kernel_equals_filter(k, data):
    F = ha_gamma_set(cyclic_group(2))
    X = FinPointedSet.k_plus(k)
    maps = [data.draw(morphisms(k, data.draw(st.integers(1, 2)))).as_pointed_map() for _ in range(2)]
    fast = set(F.kernel(X, maps))
    slow = {v for v in F.eval(X) if all(F.apply(f, v) == frozenset() for f in maps)}
    assert fast == slow


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=15))
def test_partition_matches_naive_closure(pairs):
    P = Partition(range(10))
    for a, b in pairs:
        P.union(a, b)
    rep = P.classes()
    comp = {i: {i} for i in range(10)}
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            u = comp[a] | comp[b]
            for x in u:
                if comp[x] != u:
                    comp[x] = u
                    changed = True
    for i in range(10):
        assert rep[i] == min(comp[i])


@given(rationals)
def test_rational_format_round_trip(q):
    text = fmt_q(q)
    assert parse_q(text) == q
    if q.denominator != 1:
        n, d = text.split("/")
        assert Fraction(int(n), int(d)) == q and int(d) > 0


@given(st.lists(st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=4), max_size=8))
def test_echelon_rank_matches_dense_rank(rows):
    E = linalg.EchelonBasis()
    for r in rows:
        E.add(r)
    assert len(E) == linalg.rank([{c: v for c, v in r.items()} for r in rows], list(range(7)))


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
@given(st.data())
def test_surface_chain_laws(data):
    C = SURFACE.complex
    basis = C.basis(2)
    terms = data.draw(st.lists(st.tuples(st.sampled_from(basis), rationals), min_size=1, max_size=8))
    c = QChain.of(2, terms)
    n = C.normalize(c)
    assert C.in_moore(n)
    assert C.normalize(n) == n
    assert n.norm() <= 4 * c.norm()
    psi = QChain.of(3, [(data.draw(st.sampled_from(C.basis(3))), q) for q in data.draw(st.lists(rationals, max_size=5))])
    assert C.boundary(C.boundary(psi)).is_zero()


@given(st.integers(2, 6), st.integers(1, 300))
def test_cover_bound_decreasing_above_limit(g, n):
    a, b = cyclic_cover_bound(g, n), cyclic_cover_bound(g, n + 1)
    assert a > b > 4 * (g - 1)


@st.composite
def small_twosets(draw):
    nv = draw(st.integers(1, 3))
    V = list(range(nv))
    extra = draw(st.lists(st.tuples(st.sampled_from(V), st.sampled_from(V)), max_size=3))
    F1 = [("s", v) for v in V] + [("e", i) for i in range(len(extra))]
    b0 = {("s", v): v for v in V}
    b1 = dict(b0)
    for i, (a, b) in enumerate(extra):
        b0[("e", i)], b1[("e", i)] = a, b
    return TwoSet(V, F1, b0, b1, {v: ("s", v) for v in V})


@given(small_twosets())
def test_classify_pullback(G):
    for sub in all_subobjects(G):
        f0, f1 = classify(G, sub)
        assert preimage_of_true(G, f0, f1) == sub


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_lp_matches_vertex_oracle(n, data):
    ints = st.integers(-3, 4)
    c = [data.draw(ints) for _ in range(n)]
    m = data.draw(st.integers(1, 3))
    A_ub = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    b_ub = [data.draw(st.integers(0, 8)) for _ in range(m)]
    upper = [data.draw(st.integers(1, 5)) for _ in range(n)]
    expected = lp_vertex_oracle(c, [], [], A_ub, b_ub, upper)
    p = LinearProgram(c, A_ub=A_ub, b_ub=b_ub, upper=upper)
    if expected is None:
        try:
            solve_lp(p)
        except LPInfeasible:
            return
        raise AssertionError("solver found a point in an empty region")
    assert solve_lp(p).value == expected
