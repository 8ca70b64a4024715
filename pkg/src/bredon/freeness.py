"""Even-type cell complexes and free bases for projective spaces and
Grassmannians of a complete C_n-universe.

``W << V`` holds when every subgroup where ``W`` is strictly smaller than
``V`` has all its overgroups with ``W`` at most ``V``.  A complex is of even
type when all cells are even and each earlier cell's representation is
``<<`` every later one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from .repring import FixedDimVector, GroupSpec, VirtualRep, fixed_dims, format_grading


def ll_dims(W: FixedDimVector, V: FixedDimVector) -> bool:
    g = W.group
    w, v = W.as_dict(), V.as_dict()
    for s in g.divisors:
        if w[s] < v[s]:
            if any(w[t] > v[t] for t in g.divisors if t % s == 0):
                return False
    return True


def ll_compare(W: VirtualRep, V: VirtualRep) -> bool:
    if not (W.is_actual() and V.is_actual()):
        raise ValueError("<< compares actual representations")
    return ll_dims(fixed_dims(W), fixed_dims(V))


@dataclass(frozen=True)
class CellSpec:
    """A cell ``G x_H D(V)`` with ``H = C_isotropy``.  ``dims`` overrides the
    fixed dims of ``rep`` when a cell is only known through them."""

    isotropy: int
    rep: VirtualRep
    dims: FixedDimVector | None = None
    label: str = ""

    @property
    def fixed(self) -> FixedDimVector:
        return self.dims if self.dims is not None else fixed_dims(self.rep)

    def is_even(self) -> bool:
        return self.rep.is_actual() and all(v % 2 == 0 for v in self.fixed.as_tuple())


@dataclass
class EvenTypeReport:
    ok: bool
    odd_cells: list[int] = field(default_factory=list)
    offending: list[tuple[int, int]] = field(default_factory=list)
    basis: list[tuple[str, int]] = field(default_factory=list)

    def first_failure(self) -> tuple[int, int] | None:
        return self.offending[0] if self.offending else None


def check_even_type(cells: list[CellSpec]) -> EvenTypeReport:
    odd = [i for i, c in enumerate(cells) if not c.is_even()]
    bad = []
    for j in range(len(cells)):
        for i in range(j):
            if not ll_dims(cells[i].fixed, cells[j].fixed):
                bad.append((i, j))
    ok = not odd and not bad
    basis = [(format_grading(c.rep), c.isotropy) for c in cells] if ok else []
    return EvenTypeReport(ok, odd, bad, basis)


# ---------------------------------------------------------------------------
# projective spaces


def cp_rep(r: int, n: int) -> VirtualRep:
    """``W_r = xi^{-1} + ... + xi^{-r}``."""
    g = GroupSpec(n)
    terms: dict[int, int] = {}
    trivial = 0
    for t in range(1, r + 1):
        e = (-t) % n
        if e == 0:
            trivial += 2
        else:
            terms[e] = terms.get(e, 0) + 1
    return VirtualRep.build(g, trivial, terms)


def cp_floor_dims(r: int, n: int) -> FixedDimVector:
    g = GroupSpec(n)
    return FixedDimVector(g, tuple((d, 2 * (r // d)) for d in g.divisors))


def cp_cells(m_top: int, n: int) -> list[CellSpec]:
    """Cells of ``CP(U(m_top))``: one cell ``D(W_r)`` with isotropy G per r."""
    if m_top < 0:
        raise ValueError("m_top must be non-negative")
    return [CellSpec(n, cp_rep(r, n), label=f"W_{r}") for r in range(m_top + 1)]


@dataclass
class CellRow:
    label: str
    grading: str
    dims_direct: tuple[int, ...]
    dims_floor: tuple[int, ...]

    @property
    def mismatch(self) -> bool:
        return self.dims_direct != self.dims_floor


def cp_report(m_top: int, n: int) -> list[CellRow]:
    return [
        CellRow(c.label, format_grading(c.rep), fixed_dims(c.rep).as_tuple(), cp_floor_dims(r, n).as_tuple())
        for r, c in enumerate(cp_cells(m_top, n))
    ]


# ---------------------------------------------------------------------------
# Grassmannians


@dataclass(frozen=True, order=True)
class SchubertSymbol:
    a: tuple[int, ...]
    l: int

    def __post_init__(self):
        m = len(self.a)
        if any(x > y for x, y in zip(self.a, self.a[1:])):
            raise ValueError("Schubert symbol must be weakly increasing")
        if self.a and (self.a[0] < 0 or self.a[-1] > self.l - m):
            raise ValueError("Schubert symbol entries must lie in [0, l - m]")

    @property
    def m(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ")"


def schubert_symbols(l: int, m: int) -> list[SchubertSymbol]:
    if not 1 <= m <= l:
        raise ValueError("need 1 <= m <= l")
    return [SchubertSymbol(a, l) for a in combinations_with_replacement(range(l - m + 1), m)]


def grassmann_rep(sym: SchubertSymbol, n: int) -> VirtualRep:
    """``W_a = sum_i sum_j xi^{j - (a_i + i)}`` with ``j`` running over
    ``1 .. a_i + i - 1`` minus ``{a_k + k : k < i}``."""
    g = GroupSpec(n)
    terms: dict[int, int] = {}
    trivial = 0
    a = sym.a
    for i in range(1, sym.m + 1):
        skip = {a[k - 1] + k for k in range(1, i)}
        for j in range(1, a[i - 1] + i):
            if j in skip:
                continue
            e = (j - (a[i - 1] + i)) % n
            if e == 0:
                trivial += 2
            else:
                terms[e] = terms.get(e, 0) + 1
    return VirtualRep.build(g, trivial, terms)


def grassmann_floor_dims(sym: SchubertSymbol, n: int) -> FixedDimVector:
    g = GroupSpec(n)
    return FixedDimVector(g, tuple((d, 2 * sum(x // d for x in sym.a)) for d in g.divisors))


@dataclass
class GrassmannCell:
    symbol: SchubertSymbol
    cell: CellSpec
    dims_direct: FixedDimVector
    dims_floor: FixedDimVector

    @property
    def mismatch(self) -> bool:
        return self.dims_direct != self.dims_floor


def grassmann_cells(l: int, m: int, n: int) -> list[GrassmannCell]:
    """All ``C(l, m)`` cells in attachment order (total dimension, then
    symbol).  The cell carries the floor-formula dims for even-type checks."""
    out = []
    for sym in schubert_symbols(l, m):
        W = grassmann_rep(sym, n)
        floor = grassmann_floor_dims(sym, n)
        out.append(GrassmannCell(sym, CellSpec(n, W, dims=floor, label=str(sym)), fixed_dims(W), floor))
    out.sort(key=lambda c: (c.dims_floor[1], c.symbol.a))
    assert len(out) == comb(l, m)
    return out
