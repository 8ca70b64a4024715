"""Exact integer linear algebra: Smith normal form, finitely generated abelian
groups, and homology of complexes whose terms may carry torsion.

All arithmetic uses Python integers.  The Smith normal form itself is
dispatched to a compiled kernel when it is available; the kernel works on
checked 64-bit words and any overflow reruns the computation in pure Python.

>>> smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))[1].tolist()
[[2, 0], [0, 4]]
>>> str(tensor(FgAbelianGroup.cyclic(6), FgAbelianGroup.cyclic(15)))
'Z/3'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import _snf_py

try:  # pragma: no cover - depends on the build
    from . import _snf_core as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _smith_rows(rows: list[list[int]], ncols: int, want_u: bool, want_v: bool):
    if _compiled is not None and BACKEND == "compiled":
        try:
            return _compiled.smith(rows, ncols, want_u, want_v)
        except OverflowError:
            pass
    return _snf_py.smith(rows, ncols, want_u, want_v)


def set_backend(name: str) -> None:
    """Force ``"python"`` or ``"compiled"``; used by the benchmark and tests."""
    global BACKEND
    if name not in ("python", "compiled"):
        raise ValueError(name)
    if name == "compiled" and _compiled is None:
        raise RuntimeError("compiled kernel is not built")
    BACKEND = name


def has_compiled_kernel() -> bool:
    return _compiled is not None


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, k: int) -> "IntegerMatrix":
        return cls(k, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntegerMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        return cls.from_rows(
            [[entries[i] if i == j and i < len(entries) else 0 for j in range(cols)] for i in range(rows)], cols
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.data[ij[0]][ij[1]]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntegerMatrix.from_rows(matmul(self.tolist(), other.tolist(), other.cols), other.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("not square")
        a = self.tolist()
        k = self.rows
        sign, prev = 1, 1
        for i in range(k):
            if a[i][i] == 0:
                for r in range(i + 1, k):
                    if a[r][i]:
                        a[i], a[r] = a[r], a[i]
                        sign = -sign
                        break
                else:
                    return 0
            for r in range(i + 1, k):
                for c in range(i + 1, k):
                    a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            prev = a[i][i]
        return sign * a[k - 1][k - 1] if k else 1


def matmul(a: list[list[int]], b: list[list[int]], bcols: int) -> list[list[int]]:
    out = []
    for row in a:
        acc = [0] * bcols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a: list[list[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in a]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and ``U``, ``V`` unimodular.

    ``D`` is diagonal with non-negative entries ``d_1 | d_2 | ...``.
    """
    d, u, v = _smith_rows(m.tolist(), m.cols, True, True)
    return (
        IntegerMatrix.from_rows(u, m.rows),
        IntegerMatrix.from_rows(d, m.cols),
        IntegerMatrix.from_rows(v, m.cols),
    )


def invariant_factors(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the Smith form (the rank is its length)."""
    if not rows or not ncols:
        return []
    d, _, _ = _smith_rows(rows, ncols, False, False)
    return [d[i][i] for i in range(min(len(rows), ncols)) if d[i][i]]


def kernel_basis(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """A basis of the integer kernel ``{x : A x = 0}`` as a list of vectors."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    d, _, v = _smith_rows(rows, ncols, False, True)
    rank = sum(1 for i in range(min(len(rows), ncols)) if d[i][i])
    return [[v[r][c] for r in range(ncols)] for c in range(rank, ncols)]


def unimodular_inverse(u: list[list[int]]) -> list[list[int]]:
    k = len(u)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(u)]
    for c in range(k):
        p = next(r for r in range(c, k) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(k):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = []
    for row in a:
        tail = row[k:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


# ---------------------------------------------------------------------------
# lattices in Z^g


class Lattice:
    """Sublattice of ``Z^g`` held in row-echelon form, with exact membership
    and coordinate solving."""

    def __init__(self, vectors: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        rows = [list(v) for v in vectors if any(v)]
        basis: list[tuple[int, list[int]]] = []
        col = 0
        while rows and col < dim:
            nz = [r for r in rows if r[col]]
            rest = [r for r in rows if not r[col]]
            if not nz:
                col += 1
                continue
            while len(nz) > 1:
                nz.sort(key=lambda r: abs(r[col]))
                piv = nz[0]
                keep = [piv]
                for r in nz[1:]:
                    q = r[col] // piv[col]
                    r2 = [x - q * y for x, y in zip(r, piv)]
                    if r2[col]:
                        keep.append(r2)
                    elif any(r2):
                        rest.append(r2)
                nz = keep
            piv = nz[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            basis.append((col, piv))
            rows = rest
            col += 1
        self.basis = basis

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list[int]]:
        return [v for _, v in self.basis]

    def solve(self, x: Sequence[int]) -> list[int] | None:
        """Coordinates of ``x`` in the echelon basis, or ``None`` if ``x`` is
        not in the lattice."""
        r = list(x)
        coords = []
        for col, v in self.basis:
            if r[col] % v[col]:
                return None
            c = r[col] // v[col]
            coords.append(c)
            if c:
                r = [a - c * b for a, b in zip(r, v)]
        if any(r):
            return None
        return coords


# ---------------------------------------------------------------------------
# groups


def _chain(torsion: Iterable[int]) -> tuple[int, ...]:
    a = sorted(abs(t) for t in torsion if abs(t) > 1)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            g = gcd(a[i], a[j])
            a[i], a[j] = g, a[i] * a[j] // g
    return tuple(x for x in a if x > 1)


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """``Z^free_rank`` plus cyclic factors with ``d_1 | d_2 | ...``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        t = tuple(self.torsion)
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"not an invariant factor chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FgAbelianGroup":
        """Direct sum of cyclic groups; order 0 means ``Z`` and 1 is dropped."""
        orders = list(orders)
        return cls(sum(1 for o in orders if o == 0), _chain(o for o in orders if o))

    @classmethod
    def cyclic(cls, d: int) -> "FgAbelianGroup":
        return cls.from_orders([d])

    @classmethod
    def free(cls, r: int) -> "FgAbelianGroup":
        return cls(r, ())

    @classmethod
    def zero(cls) -> "FgAbelianGroup":
        return cls(0, ())

    def orders(self) -> tuple[int, ...]:
        """Cyclic orders in the canonical generator order (torsion first)."""
        return self.torsion + (0,) * self.free_rank

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(self.orders() + other.orders())

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "FgAbelianGroup":
        text = text.strip()
        if text == "0":
            return cls.zero()
        orders: list[int] = []
        for part in text.split("(+)"):
            part = part.strip()
            if part.startswith("Z/"):
                orders.append(int(part[2:]))
            elif part == "Z":
                orders.append(0)
            elif part.startswith("Z^"):
                orders.extend([0] * int(part[2:]))
            else:
                raise ValueError(f"bad group literal {part!r}")
        return cls.from_orders(orders)


def tensor(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    orders = [0] * (a.free_rank * b.free_rank)
    orders += list(a.torsion) * b.free_rank + list(b.torsion) * a.free_rank
    orders += [gcd(x, y) for x in a.torsion for y in b.torsion]
    return FgAbelianGroup.from_orders(orders)


def iso_check(a: FgAbelianGroup, b: FgAbelianGroup) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# homology


@dataclass
class Homology:
    """Homology of ``C_in -> C -> C_out`` at ``C = Z^g / diag(moduli)``.

    ``orders[i]`` is the order of the i-th generator (0 for free) and
    ``lifts[i]`` a cycle representing it.  ``coords`` maps a cycle to its
    class, reduced modulo the orders.
    """

    group: FgAbelianGroup
    orders: tuple[int, ...]
    lifts: list[list[int]]
    _cycles: Lattice
    _u: list[list[int]]
    _keep: list[int]

    def coords(self, cycle: Sequence[int]) -> list[int]:
        c = self._cycles.solve(cycle)
        if c is None:
            raise ValueError("vector is not a cycle")
        y = matvec(self._u, c) if c else [0] * len(self._u)
        return [y[i] % o if o else y[i] for i, o in zip(self._keep, self.orders)]


def homology(
    d_in: list[list[int]] | None,
    d_out: list[list[int]] | None,
    dim: int,
    moduli: Sequence[int] | None = None,
    out_moduli: Sequence[int] | None = None,
) -> Homology:
    """Homology at a term ``Z^dim / diag(moduli)``.

    ``d_in`` is ``dim x a`` (image generators as columns) and ``d_out`` is
    ``h x dim`` landing in ``Z^h / diag(out_moduli)``.  Moduli of 0 mean free.
    """
    moduli = list(moduli) if moduli is not None else [0] * dim
    d_out = d_out or []
    h = len(d_out)
    out_moduli = list(out_moduli) if out_moduli is not None else [0] * h
    if h and any(d_out_row for row in d_out for d_out_row in row):
        extra = [i for i, o in enumerate(out_moduli) if o]
        stacked = [list(row) + [out_moduli[i] if i == e else 0 for e in extra] for i, row in enumerate(d_out)]
        ker = kernel_basis(stacked, dim + len(extra))
        cycles = Lattice((v[:dim] for v in ker), dim)
    else:
        cycles = Lattice(([int(i == j) for j in range(dim)] for i in range(dim)), dim)
    gens: list[list[int]] = []
    if d_in:
        a = len(d_in[0]) if d_in else 0
        gens.extend([d_in[r][c] for r in range(dim)] for c in range(a))
    gens.extend([o if r == i else 0 for r in range(dim)] for i, o in enumerate(moduli) if o)
    z = cycles.rank
    rel_cols = []
    for g in gens:
        if not any(g):
            continue
        c = cycles.solve(g)
        if c is None:
            raise ValueError("boundary is not a cycle; the complex does not square to zero")
        rel_cols.append(c)
    if z == 0:
        return Homology(FgAbelianGroup.zero(), (), [], cycles, [], [])
    if rel_cols:
        rel = [[col[i] for col in rel_cols] for i in range(z)]
        d, u, _ = _smith_rows(rel, len(rel_cols), True, False)
        diag = [d[i][i] if i < len(rel_cols) else 0 for i in range(z)]
    else:
        u = [[int(i == j) for j in range(z)] for i in range(z)]
        diag = [0] * z
    keep = [i for i in range(z) if diag[i] != 1]
    orders = tuple(diag[i] for i in keep)
    uinv = unimodular_inverse(u)
    zb = cycles.vectors()
    lifts = []
    for i in keep:
        col = [uinv[r][i] for r in range(z)]
        lifts.append([sum(col[k] * zb[k][j] for k in range(z) if col[k]) for j in range(dim)])
    # order torsion ascending then free, matching FgAbelianGroup.orders()
    perm = sorted(range(len(keep)), key=lambda i: (orders[i] == 0, orders[i]))
    keep = [keep[i] for i in perm]
    lifts = [lifts[i] for i in perm]
    orders = tuple(orders[i] for i in perm)
    return Homology(FgAbelianGroup.from_orders(orders), orders, lifts, cycles, u, keep)


def homology_at(
    d_in: IntegerMatrix,
    d_out: IntegerMatrix,
    moduli: Sequence[int] | None = None,
    out_moduli: Sequence[int] | None = None,
) -> FgAbelianGroup:
    """Homology of ``A -d_in-> B -d_out-> C`` at ``B``."""
    dim = d_in.rows if d_in.rows else d_out.cols
    return homology(d_in.tolist(), d_out.tolist(), dim, moduli, out_moduli).group


def hom_kernel(f: list[list[int]], src: Sequence[int], dst: Sequence[int]) -> FgAbelianGroup:
    """Kernel of a map between direct sums of cyclic groups."""
    return homology(None, f, len(src), src, dst).group


def hom_cokernel(f: list[list[int]], src: Sequence[int], dst: Sequence[int]) -> FgAbelianGroup:
    """Cokernel of a map between direct sums of cyclic groups."""
    b = len(dst)
    cols = [[f[r][c] for r in range(b)] for c in range(len(src))]
    cols += [[o if r == i else 0 for r in range(b)] for i, o in enumerate(dst) if o]
    cols = [c for c in cols if any(c)]
    if not cols:
        return FgAbelianGroup.free(b)
    rows = [[c[r] for c in cols] for r in range(b)]
    inv = invariant_factors(rows, len(cols))
    return FgAbelianGroup.from_orders(list(inv) + [0] * (b - len(inv)))


def maps_equal(f: list[list[int]], g: list[list[int]], dst: Sequence[int]) -> bool:
    """Equality of two maps into ``Z^b / diag(dst)``."""
    for r, o in enumerate(dst):
        for x, y in zip(f[r], g[r]):
            if (x - y) % o if o else x != y:
                return False
    return True
