from __future__ import annotations

import json
from fractions import Fraction

import pytest

from gammahom.gamma import (
    FinPointedSet, FiniteMonoid, GammaError, GammaMorphism, HR1, HRLambda, PointedMap,
    RationalWeighting, all_gamma_morphisms, boolean_monoid, compose_gamma_morphisms, cyclic_group,
    ha_gamma_set, hb_gamma_set, hr1_algebra_contains, hr_lambda_contains, product_monoid,
    smash_pointed, unit_to_ha, unit_to_hb, UnitGammaSet, NotEnumerableError,
)


def kp(k):
    return FinPointedSet.k_plus(k)


def test_compose_identity():
    i2 = GammaMorphism.identity(2)
    assert compose_gamma_morphisms(i2, i2) == i2


def test_compose_forced_value():
    f = GammaMorphism(1, 2, (0, 2))
    g = GammaMorphism(2, 1, (0, 1, 1))
    assert compose_gamma_morphisms(f, g).table == (0, 1)


def test_swap_is_involution():
    swap = GammaMorphism(2, 2, (0, 2, 1))
    assert compose_gamma_morphisms(swap, swap) == GammaMorphism.identity(2)


def test_morphism_must_fix_base():
    with pytest.raises(GammaError):
        GammaMorphism(1, 1, (1, 1))


def test_morphism_count():
    # pointed maps k_+ -> m_+ are (m+1)^k
    assert len(list(all_gamma_morphisms(3, 2))) == 27
    assert sum(len(list(all_gamma_morphisms(k, m))) for k in range(4) for m in range(4)) == 144


def test_morphism_json_round_trip():
    f = GammaMorphism(3, 2, (0, 2, 0, 1))
    assert GammaMorphism.from_json(json.loads(json.dumps(f.to_json()))) == f


def test_smash_sizes():
    assert len(smash_pointed(kp(2), kp(3)).non_base) == 6
    X = FinPointedSet.of(["a", "b"], "*")
    assert len(smash_pointed(X, kp(1))) == len(X)
    assert len(smash_pointed(X, kp(0))) == 1


def test_ha_values_and_fold():
    A = cyclic_group(2)
    HA = ha_gamma_set(A)
    assert len(HA.eval(kp(2))) == 4
    fold = GammaMorphism(2, 1, (0, 1, 1)).as_pointed_map()
    for a in A.elements:
        for b in A.elements:
            v = frozenset((x, c) for x, c in ((1, a), (2, b)) if c != A.zero)
            s = A.add(a, b)
            assert HA.apply(fold, v) == (frozenset({(1, s)}) if s != A.zero else frozenset())


def test_ha_zero_pushes_to_zero():
    HA = ha_gamma_set(cyclic_group(3))
    for phi in all_gamma_morphisms(2, 2):
        assert HA.apply(phi.as_pointed_map(), frozenset()) == frozenset()


def test_hb_values():
    HB = hb_gamma_set()
    assert len(HB.eval(kp(1))) == 2
    assert len(HB.eval(kp(2))) == 4
    to_base = GammaMorphism(2, 1, (0, 0, 0)).as_pointed_map()
    for v in HB.eval(kp(2)):
        assert HB.apply(to_base, v) == HB.base(kp(1))


def test_functoriality_of_builtins():
    for F in (UnitGammaSet(), hb_gamma_set(), ha_gamma_set(cyclic_group(3))):
        for f in all_gamma_morphisms(2, 2):
            for g in all_gamma_morphisms(2, 1):
                gf = compose_gamma_morphisms(f, g).as_pointed_map()
                for v in F.eval(kp(2)):
                    assert F.apply(gf, v) == F.apply(g.as_pointed_map(), F.apply(f.as_pointed_map(), v))


def test_ha_kernel_matches_filter():
    HA = ha_gamma_set(cyclic_group(2))
    X = kp(3)
    maps = [GammaMorphism(3, 1, (0, 1, 1, 0)).as_pointed_map(), GammaMorphism(3, 1, (0, 0, 1, 1)).as_pointed_map()]
    fast = set(HA.kernel(X, maps))
    slow = {v for v in HA.eval(X) if all(HA.apply(f, v) == frozenset() for f in maps)}
    assert fast == slow and len(fast) == 2


def test_monoid_validation():
    with pytest.raises(GammaError):
        FiniteMonoid([0, 1], 0, [[0, 1], [0, 1]])  # not commutative
    with pytest.raises(GammaError):
        FiniteMonoid([0, 1], 2, [[0, 1], [1, 0]])
    B = boolean_monoid()
    assert B.add(1, 1) == 1
    P = product_monoid(cyclic_group(2), B)
    assert len(P) == 4


def test_monoid_json(tmp_path):
    A = cyclic_group(3)
    path = tmp_path / "z3.json"
    path.write_text(json.dumps(A.to_json()))
    B = FiniteMonoid.load(path)
    assert all(A.add(a, b) == B.add(a, b) for a in A.elements for b in A.elements)


@pytest.mark.parametrize("support,lam,expected", [
    ({}, 1, True),
    ({"a": Fraction(1, 2), "b": Fraction(-1, 3)}, Fraction(5, 6), False),
    ({"a": Fraction(1, 2), "b": Fraction(-1, 3)}, Fraction(6, 7), True),
    ({"a": 1}, 1, False),
])
def test_hr_lambda(support, lam, expected):
    assert hr_lambda_contains(RationalWeighting(support), lam) is expected


@pytest.mark.parametrize("support,expected", [
    ({"a": Fraction(1, 2), "b": Fraction(-1, 2)}, True),
    ({"a": Fraction(1001, 1000)}, False),
    ({}, True),
])
def test_hr1(support, expected):
    assert hr1_algebra_contains(RationalWeighting(support)) is expected


def test_hr_not_enumerable_but_pushes():
    F = HRLambda(1)
    with pytest.raises(NotEnumerableError):
        F.eval(kp(1))
    w = RationalWeighting({1: Fraction(1, 3), 2: Fraction(-1, 3)})
    fold = GammaMorphism(2, 1, (0, 1, 1)).as_pointed_map()
    assert F.apply(fold, w) == RationalWeighting({})
    assert HR1().contains(kp(2), w)


def test_unit_transformations_are_natural():
    A = cyclic_group(3)
    for h, F, G in ((unit_to_hb(), UnitGammaSet(), hb_gamma_set()),
                    (unit_to_ha(A, 1), UnitGammaSet(), ha_gamma_set(A))):
        for phi in all_gamma_morphisms(2, 2):
            f = phi.as_pointed_map()
            for v in F.eval(kp(2)):
                assert G.apply(f, h(kp(2), v)) == h(kp(2), F.apply(f, v))


def test_pointed_map_must_preserve_base():
    with pytest.raises(GammaError):
        PointedMap(kp(1), kp(1), {0: 1, 1: 1})
