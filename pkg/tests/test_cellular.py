import pytest
from hypothesis import given, settings, strategies as st

from bredon.abelian import FgAbelianGroup
from bredon.cellular import (
    EquivChainComplex,
    InvalidExponent,
    MackeyAxiomError,
    assemble_functor,
    bredon_cohomology,
    bredon_homology,
    coefficient_table,
    cohomology_functor,
    evaluate,
    homology_functor,
    join,
    mackey_assemble,
    reduce,
    sphere_complex,
)
from bredon.mackey import (
    CONST_Z,
    DUAL_Z,
    MackeyExpr,
    box,
    burnside,
    check_axioms,
    concretize,
    constant_z,
    signature,
)
from bredon.repring import GroupSpec, VirtualRep, fixed_dims, parse_grading
from bredon.verify import sphere_grid
from bredon.zcoeff import z_expr

Z = FgAbelianGroup.free
C = FgAbelianGroup.cyclic


def P(text, n=15):
    return parse_grading(text, GroupSpec(n))


def test_circle_complex_shape():
    c = sphere_complex([6], 15)
    assert c.orbit_counts() == {-1: {15: 1}, 0: {3: 1}, 1: {3: 1}}
    # 2 * 3 = 1 mod 5
    assert c.bd[1] == {0: {0: {3: 1, 0: -1}}}
    assert c.boundary_squared_zero()


def test_empty_sphere():
    c = sphere_complex(VirtualRep.zero(GroupSpec(15)))
    assert c.degrees() == [-1]
    M = concretize(burnside(15))
    for m in (1, 3, 5, 15):
        assert bredon_homology(VirtualRep.zero(GroupSpec(15)), 0, M, m) == M.value(m)
        assert bredon_homology(VirtualRep.zero(GroupSpec(15)), 1, M, m).is_zero()


def test_two_factor_orbit_counts():
    c = sphere_complex(P("xi + xi^3"), reduced=False)
    assert c.orbit_counts() == {
        -1: {15: 1},
        0: {1: 1, 3: 1},
        1: {1: 6, 3: 1},
        2: {1: 10},
        3: {1: 5},
    }
    assert c.boundary_squared_zero()
    assert sphere_complex(P("xi + xi^3")).boundary_squared_zero()


@pytest.mark.parametrize("bad", [[0], [15], [-1], [3, 20]])
def test_invalid_exponents(bad):
    with pytest.raises(InvalidExponent):
        sphere_complex(bad, 15)


def test_rejects_virtual_and_odd_trivial():
    with pytest.raises(ValueError):
        sphere_complex(P("xi - xi^3"))
    with pytest.raises(ValueError):
        sphere_complex(P("xi + 1"))


@settings(max_examples=15)
@given(st.sampled_from([15, 21]), st.data())
def test_boundary_squares_to_zero(n, data):
    g = GroupSpec(n)
    exps = data.draw(st.lists(st.integers(1, n - 1), min_size=1, max_size=2))
    assert sphere_complex(exps, n, reduced=False).boundary_squared_zero()
    c = sphere_complex(exps, n)
    assert c.boundary_squared_zero()
    M = coefficient_table(n, "A")
    for m in g.divisors:
        for variance in ("homology", "cohomology"):
            E = evaluate(c, M, m, variance)
            step = -1 if variance == "homology" else 1
            for q, d in E.maps.items():
                nxt = E.maps.get(q + step)
                if not d or not nxt or not d[0] or not nxt[0]:
                    continue
                prod = [[sum(nxt[i][k] * d[k][j] for k in range(len(d))) for j in range(len(d[0]))] for i in range(len(nxt))]
                tgt = E.orders[q + 2 * step]
                assert all((x % o if o else x) == 0 for row, o in zip(prod, tgt) for x in row)


def _rank(orders):
    return sum(1 for o in orders if o == 0)


@pytest.mark.parametrize("text", ["xi", "xi + xi^3", "xi^5 + xi^3", "2*xi^3"])
def test_euler_characteristic(text):
    V = P(text)
    c = sphere_complex(V)
    M = coefficient_table(15, "A")
    for m in (1, 3, 5, 15):
        E = evaluate(c, M, m)
        chain = sum((-1) ** q * _rank(o) for q, o in E.orders.items())
        homol = sum((-1) ** q * E.homology_at(q).group.free_rank for q in E.orders)
        assert chain == homol


def test_reduction_preserves_homology():
    V = P("xi + xi^3")
    small, big = sphere_complex(V), sphere_complex(V, reduced=False)
    assert small.size() < big.size()
    M = coefficient_table(15, "Z")
    for k in range(V.dim + 2):
        for var in ("homology", "cohomology"):
            a = assemble_functor(small, M, k - 1, var).table
            b = assemble_functor(big, M, k - 1, var).table
            assert signature(a) == signature(b)


@pytest.mark.parametrize("r, base", [(7, 1), (2, 1), (6, 3), (10, 5), (14, 1)])
def test_unit_independence(r, base):
    for k in range(4):
        for m in (1, 3, 5, 15):
            assert bredon_homology(VirtualRep.xi(GroupSpec(15), r), k, "Z", m, C=sphere_complex([r], 15)) == bredon_homology(
                VirtualRep.xi(GroupSpec(15), base), k, "Z", m, C=sphere_complex([base], 15)
            )


def test_lift_independence():
    n, d = 15, 3
    std = sphere_complex([d], n)
    other = EquivChainComplex(
        n,
        {q: dict(c) for q, c in std.cells.items()},
        {1: {0: {0: {1 + 5: 1, 0: -1}}}, 0: {0: {0: {0: 1}}}},
    )
    assert other.boundary_squared_zero()
    M = coefficient_table(n, "A")
    for q in (-1, 0, 1):
        for var in ("homology", "cohomology"):
            assert signature(assemble_functor(std, M, q, var).table) == signature(assemble_functor(other, M, q, var).table)


def test_example_homology_at_top():
    V = P("xi + xi^3")
    assert bredon_homology(V, 2, "Z", 15) == C(15)
    t = mackey_assemble(V, 2, "Z")
    assert signature(t) == signature(concretize(z_expr(fixed_dims(V - 2))))
    assert str(z_expr(fixed_dims(V - 2))) == "K[3]<Z/3> (+) K[5]<Z/5>"


def test_burnside_degree_zero_of_circle():
    assert bredon_homology(P("xi"), 0, "A", 15) == Z(3)


def test_burnside_differs_from_constant():
    V = P("xi")
    assert bredon_homology(V, 0, "A", 15) != bredon_homology(V, 0, "Z", 15)


def test_free_level_is_nonequivariant():
    V = P("xi + xi^3")
    for k in range(6):
        want = Z(1) if k == 4 else FgAbelianGroup.zero()
        assert bredon_homology(V, k, "Z", 1) == want
        assert bredon_cohomology(V, k, "Z", 1) == want


def test_beyond_dimension_vanishes():
    V = P("xi^3")
    for var in ("homology", "cohomology"):
        t = mackey_assemble(V, 5, "Z", var)
        assert all(t.value(d).is_zero() for d in (1, 3, 5, 15))


def test_single_circle_assembly_is_checked():
    t = mackey_assemble(P("xi^3"), 0, "Z")
    assert check_axioms(t).ok
    assert [str(t.value(d)) for d in (1, 3, 5, 15)] == ["0", "0", "Z/5", "Z/5"]


def test_corrupted_coefficients_raise():
    M = concretize(constant_z(15))
    M.tr[(3, 15)] = [[4]]
    with pytest.raises(MackeyAxiomError):
        mackey_assemble(P("xi + xi^3"), 0, M)


@pytest.mark.parametrize("d", [1, 3, 5])
def test_dual_shift_on_coefficients(d):
    n = 15
    g = GroupSpec(n)
    dual = concretize(MackeyExpr.of(box(n, {p: CONST_Z if d % p == 0 else DUAL_Z for p in g.primes})))
    const = concretize(constant_z(n))
    for V in sphere_grid(n, 1):
        for k in range(V.dim + 2):
            a = cohomology_functor(V, k, dual).table
            b = cohomology_functor(V + VirtualRep.xi(g, d), k + 2, const).table
            assert signature(a) == signature(b)


def test_join_is_associative_on_homology():
    n = 15
    a, b, c = (sphere_complex([r], n) for r in (1, 3, 5))
    M = coefficient_table(n, "Z")
    left, right = reduce(join(reduce(join(a, b)), c)), reduce(join(a, reduce(join(b, c))))
    for q in range(-1, 6):
        assert signature(assemble_functor(left, M, q).table) == signature(assemble_functor(right, M, q).table)
