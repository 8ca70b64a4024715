import pytest
from hypothesis import given, strategies as st

from bredon.repring import (
    Case,
    FixedDimVector,
    GradingSyntaxError,
    GroupSpec,
    VirtualRep,
    classify,
    duality_partner,
    fixed_dims,
    fold_exponent,
    format_grading,
    j_vector,
    m_alpha,
    nu,
    parse_grading,
    quotient_dims,
    quotient_fixed,
    restrict_dims,
    zeta,
)

from conftest import gradings

G15 = GroupSpec(15)


def P(text, n=15):
    return parse_grading(text, GroupSpec(n))


def test_group_spec():
    g = GroupSpec(105)
    assert g.primes == (3, 5, 7) and len(g.divisors) == 8
    assert g.divisor_of({1, 3}) == 21 and g.index_set(35) == frozenset({2, 3})
    for bad in (9, 12, 0):
        with pytest.raises(ValueError):
            GroupSpec(bad)


def test_fold_exponent():
    assert fold_exponent(14, 15) == 1
    assert fold_exponent(-3, 15) == 3
    assert fold_exponent(7, 15) == 7


@pytest.mark.parametrize(
    "text, dims",
    [
        ("xi + xi^3 - 2", (2, 0, -2, -2)),
        ("0", (0, 0, 0, 0)),
        ("xi^7", (2, 0, 0, 0)),
        ("2*xi^3 - 2*xi - 1", (-1, 3, -1, -1)),
        ("xi^15", (2, 2, 2, 2)),
    ],
)
def test_fixed_dims_examples(text, dims):
    assert fixed_dims(P(text)).as_tuple() == dims


@pytest.mark.parametrize("text, m", [("xi", 15), ("2*xi^3 - 2*xi - 1", 3), ("xi^3 + xi^5 + 3 - 7", 15)])
def test_m_alpha(text, m):
    assert m_alpha(P(text)) == m


def test_j_vector_and_classify():
    assert j_vector(P("2 - xi")) == (1, 1)
    assert j_vector(P("xi - 2")) == (0, 0)
    assert j_vector(P("xi^3 - 2")) == (0, 0)
    assert classify(P("xi^3 + xi^5 - 2")) == Case.MOSTLY_NON_ZERO
    assert classify(P("0")) == Case.MANY_ZEROS
    assert classify(P("xi")) == Case.MANY_ZEROS
    assert classify(P("2*xi^3 - 2*xi - 1")) == Case.NON_ZERO
    assert Case.NON_ZERO.value == "NonZero"


def test_quotient_fixed():
    q = quotient_fixed(P("2*xi^3 - 2*xi - 1"), 3)
    assert q.group.n == 5 and fixed_dims(q).as_tuple() == (3, -1)
    a = P("xi + 4*xi^5 - 3")
    assert quotient_fixed(a, 1) == a
    assert quotient_fixed(a, 15).dim == fixed_dims(a)[15]


def test_zeta_and_nu():
    a = P("xi^3 + xi^5 - 2")
    assert zeta(a, set()) == {1, 2}
    assert zeta(a, {1}) == frozenset()
    assert zeta(P("2*xi^3 - 2*xi - 1"), set()) == frozenset()
    assert nu(P("xi"), 3, {1, 2}, set()) == 0
    assert nu(P("xi + xi^3 - 2"), 5, {1, 2}, set()) == 1
    assert all(nu(P("xi - 4"), p, {1, 2}, set()) == 0 for p in (3, 5))


def test_duality_partner():
    a = P("2*xi^3 - 2*xi - 1")
    assert duality_partner(a) == P("4 + xi - 2*xi^3")
    assert duality_partner(duality_partner(a)) == a


@pytest.mark.parametrize(
    "text, pos",
    [("xi^", 2), ("2*", 2), ("xi^1 +", 5), ("3 + + xi", 2), ("yi", 0), ("xi xi", 3)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(GradingSyntaxError) as e:
        P(text)
    assert e.value.pos == pos


def test_parse_variants():
    assert P("  xi^1+xi^3 -2 ") == P("xi + xi^3 - 2")
    assert P("-xi^14") == P("-xi")
    assert P("xi^0") == P("2")
    assert P("3*xi^-3") == P("3*xi^3")


@given(gradings())
def test_format_parse_roundtrip(a):
    assert parse_grading(format_grading(a), a.group) == a


@given(gradings())
def test_parity_uniform(a):
    assert all(v % 2 == a.dim % 2 for v in fixed_dims(a).as_tuple())


@given(gradings())
def test_fixed_dims_invertible(a):
    fd = fixed_dims(a)
    assert fixed_dims(fd.to_rep()) == fd
    assert fd.to_rep() == a.reduce()


@given(gradings(), st.data())
def test_unit_twist_keeps_dims(a, data):
    n = a.group.n
    from math import gcd

    s = data.draw(st.sampled_from([u for u in range(1, n) if gcd(u, n) == 1]))
    twisted = VirtualRep.build(a.group, a.trivial, {(r * s) % n: c for r, c in a.coeffs})
    assert fixed_dims(twisted) == fixed_dims(a)


@given(st.sampled_from([15, 21, 35, 105]), st.data())
def test_m_alpha_of_reduced_actual(n, data):
    g = GroupSpec(n)
    terms = data.draw(st.dictionaries(st.integers(1, n - 1), st.integers(0, 3), max_size=4))
    V = VirtualRep.build(g, data.draw(st.integers(0, 5)), terms)
    assert m_alpha(V - V.dim) == n


@given(gradings())
def test_restrict_and_quotient_dims(a):
    fd = fixed_dims(a)
    for d in a.group.divisors:
        r = restrict_dims(fd, d)
        assert all(r[e] == fd[e] for e in GroupSpec(d).divisors)
        q = quotient_dims(fd, d)
        assert all(q[e] == fd[d * e] for e in GroupSpec(a.group.n // d).divisors)
        assert quotient_dims(fd, d) == fixed_dims(quotient_fixed(a, d))


def test_fixed_dim_vector_rejects_mixed_parity():
    with pytest.raises(ValueError):
        FixedDimVector.from_map(G15, {1: 2, 3: 1, 5: 0, 15: 0})
