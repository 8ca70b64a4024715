import pytest
from hypothesis import given

from bredon.abelian import FgAbelianGroup
from bredon.cellular import assemble_functor, circle_complex, coefficient_table, suspension_smash
from bredon.mackey import check_axioms, concretize, signature
from bredon.repring import GroupSpec, VirtualRep, duality_partner, fixed_dims, m_alpha, parse_grading
from bredon.verify import engine_level_group, sphere_grid
from bredon.zcoeff import (
    cohomology_Z,
    cohomology_of_rep_sphere,
    homology_of_rep_sphere,
    sphere_boundary_splitting,
    z_expr,
    z_group,
)

from conftest import gradings

G15 = GroupSpec(15)


def P(text, n=15):
    return parse_grading(text, GroupSpec(n))


@pytest.mark.parametrize(
    "text, summary",
    [
        ("xi + xi^3 - 2", "Z/15; K[3]<Z/3> (+) K[5]<Z/5>"),
        ("0", "Z; const Z"),
        ("xi^3 + xi^5 - 2", "Z/15; K[3]<Z/3> (+) K[5]<Z/5>"),
        ("2*xi^3 - 2*xi - 1", "Z/3; K[3]<Z/3>"),
        ("xi + 1", "0; 0"),
        ("xi - 4", "0; 0"),
        ("2 - xi", "Z; Z*"),
    ],
)
def test_examples(text, summary):
    assert cohomology_Z(P(text)).summary() == summary


def test_j_vector_box():
    # fixed dims (0, 0, 2, 2): dual at 5, constant at 3
    ans = cohomology_Z(P("2 - xi^3"))
    assert ans.group_at_top == FgAbelianGroup.free(1)
    t = concretize(ans.mackey)
    assert [t.value(d) for d in G15.divisors] == [FgAbelianGroup.free(1)] * 4
    assert t.restriction(15, 5) == [[1]]
    assert t.restriction(15, 3) == [[5]]
    assert concretize(cohomology_Z(P("xi^3 - 2")).mackey).restriction(15, 3) == [[1]]


def test_homology_table_of_example_sphere():
    V = P("xi + xi^3")
    hom = {m: homology_of_rep_sphere(V, m).summary() for m in range(6)}
    assert hom == {
        0: "Z/5; K[5]<Z/5>",
        1: "0; 0",
        2: "Z/15; K[3]<Z/3> (+) K[5]<Z/5>",
        3: "0; 0",
        4: "Z; const Z",
        5: "0; 0",
    }
    coh = {m: cohomology_of_rep_sphere(V, m).summary() for m in range(6)}
    assert coh[4] == "Z; Z*" and coh[3] == "Z/5; K[5]<Z/5>"
    assert all(coh[m] == "0; 0" for m in (0, 1, 2, 5))


@given(gradings())
def test_mackey_top_matches_group(a):
    ans = cohomology_Z(a)
    assert not ans.representation_dependent
    assert concretize(ans.mackey).value(a.group.n) == ans.group_at_top


@given(gradings())
def test_vanishing_ranges(a):
    fd = fixed_dims(a)
    g = z_group(fd)
    if a.dim > 0 and a.dim % 2:
        assert g.is_zero()
    if a.dim < 0 and a.dim % 2 == 0:
        assert g.is_zero()
    if a.dim < 0 and a.dim % 2 and all(fd[p] <= 1 for p in a.group.primes):
        assert g.is_zero()
    vals = fd.as_tuple()
    if all(v > 0 for v in vals) or all(v < 0 for v in vals):
        assert z_expr(fd).is_zero()


@given(gradings())
def test_torsion_bounds(a):
    t = concretize(z_expr(fixed_dims(a)))
    for d in a.group.divisors:
        grp = t.value(d)
        if a.dim % 2:
            assert grp.is_finite()
        assert all(a.group.n % o == 0 for o in grp.torsion)


@given(gradings())
def test_group_is_cyclic_of_order_m(a):
    g = z_group(fixed_dims(a))
    if a.dim > 0 and a.dim % 2 == 0:
        assert g == FgAbelianGroup.cyclic(m_alpha(a))
    if a.dim == 0:
        assert g == FgAbelianGroup.free(1)


@given(gradings())
def test_torsion_duality(a):
    if a.dim < 0 and a.dim % 2:
        assert z_group(fixed_dims(duality_partner(a))) == z_group(fixed_dims(a))


@given(gradings())
def test_emitted_functors_satisfy_axioms(a):
    assert check_axioms(concretize(z_expr(fixed_dims(a)))).ok


def test_trivial_group_convention():
    g1 = GroupSpec(1)
    assert z_group(fixed_dims(VirtualRep.zero(g1))) == FgAbelianGroup.free(1)
    assert z_group(fixed_dims(VirtualRep.build(g1, 2))).is_zero()
    assert z_group(fixed_dims(VirtualRep.build(g1, -3))).is_zero()


def test_frozen_oracle_values_z(frozen_oracle):
    checked = 0
    for e in frozen_oracle:
        if e["coeff"] != "Z":
            continue
        V = P(e["V"], e["n"])
        alpha = V - e["k"] if e["variance"] == "homology" else e["k"] - V
        fd = fixed_dims(alpha)
        for d, want in e["levels"].items():
            assert str(engine_level_group(fd, int(d), "Z")) == want, (e, d)
            checked += 1
    assert checked == 800


def test_splitting_trivial_and_example():
    c, k = sphere_boundary_splitting(P("2*xi + 3"), 3)
    assert c.is_zero() and k.is_zero()
    c, k = sphere_boundary_splitting(P("xi"), 3)
    assert c.is_zero() and str(k) == "K[3]<Z/3>"
    with pytest.raises(ValueError):
        sphere_boundary_splitting(P("xi"), 7)


@pytest.mark.parametrize("n", [15, 21])
def test_splitting_against_oracle(n):
    g = GroupSpec(n)
    M = coefficient_table(n, "Z")
    for d in g.proper_divisors():
        X = circle_complex(n, d)
        for V in sphere_grid(n, 1):
            C = suspension_smash(X, V)
            for k in range(V.dim + 3):
                c, kp = sphere_boundary_splitting(k - V, d)
                t = assemble_functor(C, M, k, "cohomology").table
                assert signature(t) == signature(concretize(c + kp)), (d, str(V), k)
