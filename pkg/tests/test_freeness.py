import pytest
from hypothesis import given, strategies as st

from bredon.freeness import (
    CellSpec,
    SchubertSymbol,
    check_even_type,
    cp_cells,
    cp_floor_dims,
    cp_rep,
    cp_report,
    grassmann_cells,
    grassmann_rep,
    ll_compare,
    ll_dims,
    schubert_symbols,
)
from bredon.repring import GroupSpec, VirtualRep, fixed_dims, parse_grading


def P(text, n=15):
    return parse_grading(text, GroupSpec(n))


def test_ll_examples():
    assert ll_compare(cp_rep(2, 15), cp_rep(3, 15))
    assert not ll_compare(P("xi^3"), P("2*xi"))
    assert ll_compare(P("xi + xi^5"), P("xi + xi^5"))
    with pytest.raises(ValueError):
        ll_compare(P("xi - xi^3"), P("xi"))


actual = st.sampled_from([15, 21, 105]).flatmap(
    lambda n: st.tuples(
        *[
            st.builds(
                lambda t, terms: VirtualRep.build(GroupSpec(n), 2 * t, terms),
                st.integers(0, 2),
                st.dictionaries(st.sampled_from(GroupSpec(n).proper_divisors()), st.integers(0, 3), max_size=3),
            )
            for _ in range(3)
        ]
    )
)


@given(actual)
def test_ll_reflexive(reps):
    for u in reps:
        assert ll_compare(u, u)


def test_ll_is_not_transitive():
    u, v, w = P("2"), P("0"), P("2*xi")
    assert ll_compare(u, v) and ll_compare(v, w)
    assert not ll_compare(u, w)


def test_ll_transitive_along_cp_chain():
    reps = [cp_rep(r, 15) for r in range(12)]
    for i in range(12):
        for j in range(i, 12):
            assert ll_compare(reps[i], reps[j])


def test_cp_examples():
    assert cp_rep(3, 15) == P("xi^12 + xi^13 + xi^14")
    assert fixed_dims(cp_rep(3, 15)).as_tuple() == (6, 2, 0, 0) == cp_floor_dims(3, 15).as_tuple()
    assert cp_rep(0, 15) == VirtualRep.zero(GroupSpec(15))
    assert fixed_dims(cp_rep(15, 15))[15] == 2


@pytest.mark.parametrize("n", [15, 21, 35, 105])
def test_cp_direct_dims_match_floor(n):
    assert not any(row.mismatch for row in cp_report(4 * n, n))


def test_cp_even_type():
    rep = check_even_type([c for c in cp_cells(10, 15)])
    assert rep.ok and len(rep.basis) == 11
    assert rep.basis[0] == ("0", 15)
    dims = [P(g).dim for g, _ in rep.basis]
    assert dims == sorted(dims)


def test_reversed_cp_is_not_rejected():
    # every later cell has fixed dims at most the earlier one, so << holds
    rep = check_even_type(list(reversed(cp_cells(10, 15))))
    assert rep.ok


def test_inverted_pair_is_reported():
    cells = [CellSpec(15, P("xi^3"), label="W"), CellSpec(15, P("2*xi"), label="V")]
    rep = check_even_type(cells)
    assert not rep.ok and rep.first_failure() == (0, 1) and rep.basis == []


def test_odd_cells_are_reported():
    rep = check_even_type([CellSpec(15, P("xi + 1"))])
    assert not rep.ok and rep.odd_cells == [0]


def test_single_cell_passes():
    assert check_even_type([CellSpec(15, P("xi"))]).ok


def test_schubert_symbols():
    syms = schubert_symbols(4, 2)
    assert len(syms) == 6 and syms[0].a == (0, 0)
    with pytest.raises(ValueError):
        SchubertSymbol((2, 1), 4)
    with pytest.raises(ValueError):
        SchubertSymbol((0, 3), 4)
    with pytest.raises(ValueError):
        schubert_symbols(2, 3)


def test_grassmann_cells():
    cells = grassmann_cells(4, 2, 15)
    assert len(cells) == 6
    assert cells[0].symbol.a == (0, 0) and cells[0].cell.rep == VirtualRep.zero(GroupSpec(15))
    by = {c.symbol.a: c for c in cells}
    c12 = by[(1, 2)]
    assert grassmann_rep(c12.symbol, 15) == P("2*xi^14 + xi^12")
    assert c12.dims_direct[3] == 2 and c12.dims_floor[3] == 0 and c12.mismatch
    assert {a for a, c in by.items() if c.mismatch} == {(1, 2), (2, 2)}
    rep = check_even_type([c.cell for c in cells])
    assert rep.ok and len(rep.basis) == 6


@pytest.mark.parametrize("l, m", [(3, 1), (4, 2), (5, 2), (5, 3), (6, 3)])
def test_grassmann_total_dimension(l, m):
    for c in grassmann_cells(l, m, 15):
        assert c.dims_direct[1] == c.dims_floor[1] == 2 * sum(c.symbol.a)


def test_grassmann_line_case_matches_cp():
    cells = grassmann_cells(4, 1, 15)
    assert [c.dims_floor for c in cells] == [cp_floor_dims(r, 15) for r in range(4)]
    assert not any(c.mismatch for c in cells)
    assert ll_dims(cells[0].dims_floor, cells[-1].dims_floor)
