import copy

import pytest
from hypothesis import given, strategies as st

from bredon.abelian import FgAbelianGroup
from bredon.mackey import (
    BURNSIDE,
    CONST_Z,
    DUAL_Z,
    MackeyExpr,
    MackeyTable,
    bracket,
    box,
    burnside,
    check_axioms,
    concretize,
    constant_z,
    direct_sum,
    dual_z,
    exactness_witness,
    induce_orbit,
    k_bracket,
    levelwise_equal,
    signature,
    zero_table,
)
from bredon.repring import GroupSpec

Z = FgAbelianGroup.free
C = FgAbelianGroup.cyclic


def values(t):
    return [str(t.value(d)) for d in t.group.divisors]


def test_box_of_constants_and_burnside():
    assert MackeyExpr.of(box(15, [CONST_Z, CONST_Z])) == constant_z(15)
    assert MackeyExpr.of(box(15, {3: BURNSIDE, 5: BURNSIDE})) == burnside(15)
    assert k_bracket(15, 3) == box(15, {3: bracket(3), 5: CONST_Z})
    with pytest.raises(ValueError):
        box(15, [CONST_Z])


def test_concretize_k_bracket():
    t = concretize(MackeyExpr.of(k_bracket(15, 3)))
    assert values(t) == ["0", "Z/3", "0", "Z/3"]
    assert t.restriction(15, 3) == [[1]]
    # the index 5 is 2 modulo 3
    assert t.transfer(3, 15) == [[5 % 3]]


def test_concretize_constant_and_dual():
    z = concretize(constant_z(15))
    zs = concretize(dual_z(15))
    for lo, hi in z.covers():
        assert z.restriction(hi, lo) == [[1]] and z.transfer(lo, hi) == [[hi // lo]]
        assert zs.restriction(hi, lo) == [[hi // lo]] and zs.transfer(lo, hi) == [[1]]
    assert values(z) == values(zs) == ["Z"] * 4


def test_concretize_burnside_ranks():
    t = concretize(burnside(105))
    g = GroupSpec(105)
    assert all(t.value(d) == Z(len(GroupSpec(d).divisors)) for d in g.divisors)


def test_axioms_on_standard_functors():
    a = concretize(burnside(15))
    assert check_axioms(a).ok
    assert not check_axioms(a, is_z_module=True).ok
    z = concretize(constant_z(15))
    assert check_axioms(z).ok and check_axioms(z, is_z_module=True).ok


def test_axiom_mutation_detected():
    t = concretize(constant_z(15))
    t.tr[(3, 15)] = [[4]]
    rep = check_axioms(t)
    assert not rep.ok
    assert "double coset (15, 5, 3)" in rep.violations


factors = st.sampled_from([CONST_Z, DUAL_Z, BURNSIDE, bracket(0), "bracket_p"])


@st.composite
def exprs(draw):
    n = draw(st.sampled_from([15, 21, 35, 105]))
    g = GroupSpec(n)
    atoms = []
    for _ in range(draw(st.integers(1, 3))):
        fs = {}
        for p in g.primes:
            f = draw(factors)
            fs[p] = bracket(p) if f == "bracket_p" else f
        atoms.append(box(n, fs))
    e = MackeyExpr.zero(n)
    for a in atoms:
        e = e + MackeyExpr.of(a)
    return e


@given(exprs())
def test_every_concretized_expr_satisfies_axioms(e):
    assert check_axioms(concretize(e)).ok


@given(exprs())
def test_canonical_and_serialization(e):
    assert e.canonical() == e.canonical().canonical()
    rev = MackeyExpr.zero(e.n)
    for a in reversed(e.atoms):
        rev = rev + MackeyExpr.of(a)
    assert rev == e
    assert MackeyExpr.from_json(e.n, e.to_json()) == e
    t = concretize(e)
    assert MackeyTable.from_text(t.to_text()) == t


@given(exprs())
def test_bracket_vanishes_below_its_prime(e):
    g = GroupSpec(e.n)
    for a in e.atoms:
        single = concretize(MackeyExpr.of(a))
        for p in g.primes:
            if a.factor_at(p) == bracket(p):
                assert all(single.value(d).is_zero() for d in g.divisors if d % p)


def test_direct_sum_matches_expr_sum():
    a, b = MackeyExpr.of(k_bracket(15, 3)), MackeyExpr.of(k_bracket(15, 5))
    assert signature(direct_sum(15, [concretize(a), concretize(b)])) == signature(concretize(a + b))
    assert levelwise_equal(zero_table(15), concretize(MackeyExpr.zero(15)))


def test_induce_orbit_examples():
    inner = concretize(MackeyExpr.of(box(15, [CONST_Z, CONST_Z])))
    assert induce_orbit(15, inner, 15) == inner
    free = induce_orbit(1, concretize(constant_z(1)), 15)
    assert [free.value(d) for d in (1, 3, 5, 15)] == [Z(15), Z(5), Z(3), Z(1)]
    assert check_axioms(free).ok
    k3 = induce_orbit(3, concretize(MackeyExpr.of(box(3, [bracket(3)]))), 15)
    assert [k3.value(d) for d in (1, 3, 5, 15)] == [
        FgAbelianGroup.zero(),
        FgAbelianGroup.from_orders([3] * 5),
        FgAbelianGroup.zero(),
        C(3),
    ]
    assert check_axioms(k3).ok


@pytest.mark.parametrize("n", [3, 15, 21, 35, 105])
def test_exactness(n):
    w = exactness_witness(n)
    assert w.ok
    assert w.cokernel_values[n] == str(C(n))


def test_exactness_levels_15():
    assert exactness_witness(15).cokernel_values == {1: "0", 3: "Z/3", 5: "Z/5", 15: "Z/15"}


def test_expr_text():
    e = MackeyExpr.of(k_bracket(15, 5)) + MackeyExpr.of(k_bracket(15, 3))
    assert str(e) == "K[3]<Z/3> (+) K[5]<Z/5>"
    assert str(constant_z(15)) == "const Z"
    assert str(MackeyExpr.zero(15)) == "0"


def test_table_is_not_mutated_by_copy():
    t = concretize(burnside(15))
    u = copy.deepcopy(t)
    u.tr[(1, 3)] = [[0]]
    assert check_axioms(t).ok
