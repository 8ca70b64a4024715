"""Cellular chains of representation spheres in the Z-linear orbit category.

A cell of type ``a`` is an orbit ``G/C_a``.  A morphism ``G/C_a -> G/C_b``
(``a | b``) is an integer combination of translations ``rho^s``, stored as a
dict ``{s mod n/b: coeff}``.  Evaluating a complex at level ``m`` against a
Mackey table turns every orbit into ``n / lcm(a, m)`` copies of the value at
``gcd(a, m)`` and every translation into a copy shift followed by a transfer
(homology) or restriction (cohomology).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .abelian import Homology, homology
from .mackey import MackeyTable, _eye, _reduce, _zero, check_axioms, concretize, table_from_homology
from .repring import GroupSpec, VirtualRep, fold_exponent

Morph = dict[int, int]


class InvalidExponent(ValueError):
    pass


class ConjugationNontrivial(ValueError):
    pass


class MackeyAxiomError(AssertionError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _clean(f: Morph) -> Morph:
    return {s: c for s, c in f.items() if c}


def compose(g: Morph, f: Morph, mod: int) -> Morph:
    """``g o f`` as a morphism into an orbit with ``mod = n / target type``."""
    out: Morph = {}
    for s, c in g.items():
        for t, e in f.items():
            k = (s + t) % mod
            out[k] = out.get(k, 0) + c * e
    return _clean(out)


def _decompose(x: int, y: int, a: int, b: int, n: int) -> tuple[int, int]:
    """Locate ``(rho^x C_a, rho^y C_b)`` in ``G/C_a x G/C_b``: returns the orbit
    index ``o`` and a translation ``u`` with the point equal to
    ``rho^u (e, rho^o)``."""
    A, B = n // a, n // b
    N = gcd(A, B)
    o = (y - x) % N
    rhs = (y - o - x) // N if (y - o - x) % N == 0 else None
    assert rhs is not None
    Bn = B // N
    k = (rhs * pow(A // N, -1, Bn)) % Bn if Bn > 1 else 0
    u = (x + A * k) % (A * Bn)
    return o, u


@dataclass
class EquivChainComplex:
    """``cells[q]`` maps cell ids to orbit types; ``bd[q][x][y]`` is the
    component ``x -> y`` of the boundary ``C_q -> C_{q-1}``."""

    n: int
    cells: dict[int, dict] = field(default_factory=dict)
    bd: dict[int, dict] = field(default_factory=dict)

    def degrees(self) -> list[int]:
        return sorted(q for q, c in self.cells.items() if c)

    def orbit_counts(self) -> dict[int, dict[int, int]]:
        out = {}
        for q in self.degrees():
            cnt: dict[int, int] = {}
            for a in self.cells[q].values():
                cnt[a] = cnt.get(a, 0) + 1
            out[q] = dict(sorted(cnt.items()))
        return out

    def size(self) -> int:
        return sum(len(c) for c in self.cells.values())

    def shifted(self, k: int) -> "EquivChainComplex":
        return EquivChainComplex(
            self.n,
            {q + k: dict(c) for q, c in self.cells.items()},
            {q + k: {x: dict(r) for x, r in b.items()} for q, b in self.bd.items()},
        )

    def boundary_squared_zero(self) -> bool:
        for q in self.degrees():
            for x, col in self.bd.get(q, {}).items():
                acc: dict = {}
                for y, f in col.items():
                    for z, g in self.bd.get(q - 1, {}).get(y, {}).items():
                        h = compose(g, f, self.n // self.cells[q - 2][z])
                        tgt = acc.setdefault(z, {})
                        for s, c in h.items():
                            tgt[s] = tgt.get(s, 0) + c
                if any(_clean(v) for v in acc.values()):
                    return False
        return True

    def canonical(self) -> "EquivChainComplex":
        """Relabel cells by consecutive integers."""
        ren = {q: {x: i for i, x in enumerate(sorted(c, key=repr))} for q, c in self.cells.items()}
        cells = {q: {ren[q][x]: a for x, a in c.items()} for q, c in self.cells.items()}
        bd = {}
        for q, b in self.bd.items():
            bd[q] = {ren[q][x]: {ren[q - 1][y]: dict(f) for y, f in col.items()} for x, col in b.items()}
        return EquivChainComplex(self.n, cells, bd)


def _factor_complex(n: int, r: int) -> EquivChainComplex:
    """Augmented chains of ``S(xi^r)``: ``G/C_d -> G/C_d -> G/G`` in degrees
    1, 0, -1 with ``d = gcd(r, n)``."""
    d = gcd(r, n)
    mod = n // d
    t = pow(r // d, -1, mod) if mod > 1 else 0
    edge = _clean({t: 1, 0: -1}) if t else {}
    return EquivChainComplex(
        n,
        {-1: {0: n}, 0: {0: d}, 1: {0: d}},
        {1: {0: {0: edge} if edge else {}}, 0: {0: {0: {0: 1}}}},
    )


def _trivial_factor(n: int) -> EquivChainComplex:
    """Augmented chains of the circle with trivial action."""
    return EquivChainComplex(n, {-1: {0: n}, 0: {0: n}, 1: {0: n}}, {1: {0: {}}, 0: {0: {0: {0: 1}}}})


def tensor(X: EquivChainComplex, Y: EquivChainComplex) -> EquivChainComplex:
    """Product of cellular complexes with the Koszul sign ``(-1)^{deg x}``."""
    n = X.n
    cells: dict[int, dict] = {}
    for p, xc in X.cells.items():
        for q, yc in Y.cells.items():
            tgt = cells.setdefault(p + q, {})
            for x, a in xc.items():
                for y, b in yc.items():
                    N = n // _lcm(a, b)
                    g = gcd(a, b)
                    for o in range(N):
                        tgt[(p, x, q, y, o)] = g
    bd: dict[int, dict] = {deg: {} for deg in cells}
    for p, xc in X.cells.items():
        for q, yc in Y.cells.items():
            sign = -1 if p % 2 else 1
            for x, a in xc.items():
                for y, b in yc.items():
                    N = n // _lcm(a, b)
                    for o in range(N):
                        col: dict = {}
                        # d(x) (x) y
                        for x2, f in X.bd.get(p, {}).get(x, {}).items():
                            a2 = X.cells[p - 1][x2]
                            mod = n // gcd(a2, b)
                            for s, c in f.items():
                                o2, u = _decompose(s, o, a2, b, n)
                                m = col.setdefault((p - 1, x2, q, y, o2), {})
                                m[u % mod] = m.get(u % mod, 0) + c
                        # x (x) d(y)
                        for y2, f in Y.bd.get(q, {}).get(y, {}).items():
                            b2 = Y.cells[q - 1][y2]
                            mod = n // gcd(a, b2)
                            for s, c in f.items():
                                o2, u = _decompose(0, o + s, a, b2, n)
                                m = col.setdefault((p, x, q - 1, y2, o2), {})
                                m[u % mod] = m.get(u % mod, 0) + sign * c
                        col = {k: _clean(v) for k, v in col.items()}
                        bd[p + q][(p, x, q, y, o)] = {k: v for k, v in col.items() if v}
    return EquivChainComplex(n, cells, bd).canonical()


def join(X: EquivChainComplex, Y: EquivChainComplex) -> EquivChainComplex:
    """Augmented chains of the join from augmented chains of the factors."""
    return tensor(X.shifted(1), Y.shifted(1)).shifted(-1)


def _unit(f: Morph) -> tuple[int, int] | None:
    if len(f) == 1:
        (s, c), = f.items()
        if c in (1, -1):
            return s, c
    return None


def reduce(C: EquivChainComplex) -> EquivChainComplex:
    """Cancel pairs of cells joined by an invertible component.

    For a unit ``phi = d(A -> B)`` between orbits of the same type, the
    complex is homotopy equivalent to the one without ``A`` and ``B`` and with
    ``d'(x -> y) = d(x -> y) - d(A -> y) phi^{-1} d(x -> B)``.
    """
    n = C.n
    cells = {q: dict(c) for q, c in C.cells.items()}
    bd = {q: {x: {y: dict(f) for y, f in col.items()} for x, col in b.items()} for q, b in C.bd.items()}
    # reverse index: into[q-1][y] = set of x in C_q with a component x -> y
    into: dict[int, dict] = {}
    for q, b in bd.items():
        for x, col in b.items():
            for y in col:
                into.setdefault(q - 1, {}).setdefault(y, set()).add(x)

    def find_pivot():
        for q in sorted(bd, reverse=True):
            for A, col in bd[q].items():
                a = cells[q][A]
                for B, f in col.items():
                    if cells[q - 1][B] == a:
                        u = _unit(f)
                        if u:
                            return q, A, B, u
        return None

    while True:
        piv = find_pivot()
        if piv is None:
            break
        q, A, B, (s, c) = piv
        a = cells[q][A]
        mod_a = n // a
        inv = {(-s) % mod_a: c}
        sources = [x for x in into.get(q - 1, {}).get(B, set()) if x != A]
        targets = [(y, f) for y, f in bd[q][A].items() if y != B]
        for x in sources:
            f_xB = bd[q][x][B]
            pre = compose(inv, f_xB, mod_a)
            for y, f_Ay in targets:
                mod_y = n // cells[q - 1][y]
                corr = compose(f_Ay, pre, mod_y)
                cur = bd[q][x].get(y, {})
                for k, v in corr.items():
                    cur[k] = cur.get(k, 0) - v
                cur = _clean(cur)
                if cur:
                    bd[q][x][y] = cur
                    into[q - 1].setdefault(y, set()).add(x)
                else:
                    bd[q][x].pop(y, None)
                    into[q - 1].get(y, set()).discard(x)
        # drop A from C_q and B from C_{q-1}
        for y in bd[q][A]:
            into[q - 1][y].discard(A)
        del bd[q][A]
        for x in list(into.get(q - 1, {}).get(B, set())):
            bd[q][x].pop(B, None)
        into.get(q - 1, {}).pop(B, None)
        for x in list(into.get(q, {}).get(A, set())):
            bd[q + 1][x].pop(A, None)
        into.get(q, {}).pop(A, None)
        if q - 1 in bd and B in bd[q - 1]:
            for z in bd[q - 1][B]:
                into[q - 2][z].discard(B)
            del bd[q - 1][B]
        del cells[q][A]
        del cells[q - 1][B]
    return EquivChainComplex(n, cells, bd).canonical()


def _parts(V: VirtualRep) -> list[int]:
    """Exponents of the irreducible 2-dim summands; 0 marks two trivial dims."""
    if not V.is_actual():
        raise ValueError("sphere complexes need an actual representation")
    if V.trivial % 2:
        raise ValueError("odd trivial part: use an even representation")
    out = [0] * (V.trivial // 2)
    for r, c in V.coeffs:
        out += [r] * c
    return out


def sphere_complex(V: VirtualRep | Iterable[int], n: int | None = None, reduced: bool = True) -> EquivChainComplex:
    """Augmented chains of ``S(V)``; ``H~_k(S^V) = H_{k-1}`` of this complex.

    ``V`` is a representation or a list of exponents ``1 <= r < n``, one per
    summand ``xi^r``.
    """
    if isinstance(V, VirtualRep):
        n = V.group.n
        parts = _parts(V)
    else:
        parts = []
        for r in V:
            if not 1 <= r < n:
                raise InvalidExponent(f"exponent {r} outside 1..{n - 1}")
            parts.append(fold_exponent(r, n))
    C = EquivChainComplex(n, {-1: {0: n}}, {})
    first = True
    for r in parts:
        F = _factor_complex(n, r) if r % n else _trivial_factor(n)
        C = F if first else join(C, F)
        first = False
        if reduced:
            C = reduce(C)
    return C


def circle_complex(n: int, d: int) -> EquivChainComplex:
    """Unaugmented chains of ``S(xi^d)``: two orbits ``G/C_d``."""
    F = _factor_complex(n, d)
    return EquivChainComplex(n, {0: dict(F.cells[0]), 1: dict(F.cells[1])}, {1: F.bd[1]})


def suspension_smash(X: EquivChainComplex, V: VirtualRep, reduced: bool = True) -> EquivChainComplex:
    """Chains of ``X_+ smash S^V`` in reduced degrees."""
    S = sphere_complex(V, reduced=reduced).shifted(1)
    C = tensor(X, S)
    return reduce(C) if reduced else C


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class EvaluatedComplex:
    """Abelian chain (or cochain) complex at one level.

    ``orders[q]`` are the generator orders in degree ``q``; ``maps[q]`` is the
    matrix of the differential leaving degree ``q``.
    """

    level: int
    orders: dict[int, list[int]]
    maps: dict[int, list[list[int]]]
    index: dict[int, dict]  # (cell, copy) -> offset of its block
    variance: str

    def homology_at(self, q: int) -> Homology:
        o = self.orders.get(q, [])
        if self.variance == "homology":
            d_in = self.maps.get(q + 1)
            d_out = self.maps.get(q)
            prev, nxt = q + 1, q - 1
        else:
            d_in = self.maps.get(q - 1)
            d_out = self.maps.get(q)
            prev, nxt = q - 1, q + 1
        d_in = d_in if d_in and self.orders.get(prev) else None
        d_out = d_out if d_out and self.orders.get(nxt) else None
        return homology(d_in, d_out, len(o), o, self.orders.get(nxt, []) if d_out else None)


def _copies(n: int, a: int, m: int) -> int:
    return n // _lcm(a, m)


class _MapCache:
    def __init__(self, M: MackeyTable):
        self.M = M
        self._tr: dict = {}
        self._res: dict = {}

    def tr(self, lo: int, hi: int):
        if lo == hi:
            return _eye(len(self.M.gens[lo]))
        if (lo, hi) not in self._tr:
            self._tr[(lo, hi)] = self.M.transfer(lo, hi)
        return self._tr[(lo, hi)]

    def res(self, hi: int, lo: int):
        if lo == hi:
            return _eye(len(self.M.gens[lo]))
        if (hi, lo) not in self._res:
            self._res[(hi, lo)] = self.M.restriction(hi, lo)
        return self._res[(hi, lo)]


def evaluate(C: EquivChainComplex, M: MackeyTable, m: int, variance: str = "homology", cache=None) -> EvaluatedComplex:
    if not M.conjugation_trivial:
        raise ConjugationNontrivial("coefficient functor must have trivial conjugations")
    n = C.n
    mc = cache or _MapCache(M)
    orders: dict[int, list[int]] = {}
    index: dict[int, dict] = {}
    for q in C.degrees():
        off = 0
        idx = {}
        ords: list[int] = []
        for x in sorted(C.cells[q]):
            a = C.cells[q][x]
            g = gcd(a, m)
            for i in range(_copies(n, a, m)):
                idx[(x, i)] = off
                ords += list(M.gens[g])
                off += len(M.gens[g])
        orders[q] = ords
        index[q] = idx
    maps: dict[int, list[list[int]]] = {}
    for q in C.degrees():
        if q - 1 not in orders:
            continue
        src, dst = q, q - 1
        if variance == "homology":
            mat = _zero(len(orders[dst]), len(orders[src]))
        else:
            mat = _zero(len(orders[src]), len(orders[dst]))
        for x, col in C.bd.get(q, {}).items():
            a = C.cells[q][x]
            ga = gcd(a, m)
            Na = _copies(n, a, m)
            for y, f in col.items():
                b = C.cells[q - 1][y]
                gb = gcd(b, m)
                Nb = _copies(n, b, m)
                blk = mc.tr(ga, gb) if variance == "homology" else mc.res(gb, ga)
                for i in range(Na):
                    si = index[src][(x, i)]
                    for s, c in f.items():
                        j = (i + s) % Nb
                        tj = index[dst][(y, j)]
                        if variance == "homology":
                            for r, row in enumerate(blk):
                                for k, v in enumerate(row):
                                    if v:
                                        mat[tj + r][si + k] += c * v
                        else:
                            for r, row in enumerate(blk):
                                for k, v in enumerate(row):
                                    if v:
                                        mat[si + r][tj + k] += c * v
        if variance == "homology":
            maps[src] = _reduce(mat, orders[dst])
        else:
            maps[dst] = _reduce(mat, orders[src])
    return EvaluatedComplex(m, orders, maps, index, variance)


def _level_map(C: EquivChainComplex, M: MackeyTable, E: dict, hi: int, lo: int, kind: str, q: int, mc: _MapCache):
    """Chain-level restriction (``hi -> lo``) or transfer (``lo -> hi``) in degree q,
    induced by the projection ``X x G/C_lo -> X x G/C_hi``."""
    n = C.n
    e_hi, e_lo = E[hi], E[lo]
    rows_hi = len(e_hi.orders.get(q, []))
    rows_lo = len(e_lo.orders.get(q, []))
    mat = _zero(rows_lo, rows_hi) if kind == "res" else _zero(rows_hi, rows_lo)
    for x, a in C.cells.get(q, {}).items():
        ga_hi, ga_lo = gcd(a, hi), gcd(a, lo)
        Nh = _copies(n, a, hi)
        Nl = _copies(n, a, lo)
        blk = mc.res(ga_hi, ga_lo) if kind == "res" else mc.tr(ga_lo, ga_hi)
        for i in range(Nl):
            ol = e_lo.index[q][(x, i)]
            oh = e_hi.index[q][(x, i % Nh)]
            for r, row in enumerate(blk):
                for k, v in enumerate(row):
                    if v:
                        if kind == "res":
                            mat[ol + r][oh + k] += v
                        else:
                            mat[oh + r][ol + k] += v
    return mat


def _weyl_map(C: EquivChainComplex, M: MackeyTable, ev: EvaluatedComplex, q: int):
    n = C.n
    m = ev.level
    size = len(ev.orders.get(q, []))
    mat = _zero(size, size)
    for x, a in C.cells.get(q, {}).items():
        N = _copies(n, a, m)
        k = len(M.gens[gcd(a, m)])
        for i in range(N):
            src = ev.index[q][(x, i)]
            dst = ev.index[q][(x, (i + 1) % N)]
            for j in range(k):
                mat[dst + j][src + j] = 1
    return mat


@dataclass
class AssembledFunctor:
    table: MackeyTable
    weyl_trivial: bool


def assemble_functor(C: EquivChainComplex, M: MackeyTable, q: int, variance: str = "homology") -> AssembledFunctor:
    """The Mackey functor ``d -> H_q`` (or ``H^q``) of ``C`` with coefficients ``M``."""
    n = C.n
    g = GroupSpec(n)
    mc = _MapCache(M)
    E = {d: evaluate(C, M, d, variance, mc) for d in g.divisors}
    H = {d: E[d].homology_at(q) for d in g.divisors}
    table = table_from_homology(
        n,
        H,
        lambda hi, lo: _level_map(C, M, E, hi, lo, "res", q, mc),
        lambda lo, hi: _level_map(C, M, E, hi, lo, "tr", q, mc),
    )
    weyl_ok = True
    for d in g.divisors:
        h = H[d]
        if not h.lifts:
            continue
        w = _weyl_map(C, M, E[d], q)
        for col, lift in enumerate(h.lifts):
            image = [sum(w[r][k] * lift[k] for k in range(len(lift))) for r in range(len(w))]
            coords = h.coords(image)
            expect = [1 if i == col else 0 for i in range(len(h.orders))]
            if any((c - e) % o if o else c - e for c, e, o in zip(coords, expect, h.orders)):
                weyl_ok = False
    return AssembledFunctor(table, weyl_ok)


# ---------------------------------------------------------------------------
# convenience entry points

_COEFF_CACHE: dict = {}


def coefficient_table(n: int, coeff: str | MackeyTable = "Z") -> MackeyTable:
    if isinstance(coeff, MackeyTable):
        return coeff
    key = (n, coeff)
    if key not in _COEFF_CACHE:
        from .acoeff import CoeffSystem
        from .mackey import constant_z

        if coeff == "Z":
            _COEFF_CACHE[key] = concretize(constant_z(n))
        elif coeff == "A":
            _COEFF_CACHE[key] = concretize(CoeffSystem.burnside(n).expr())
        else:
            raise ValueError(f"unknown coefficient system {coeff!r}")
    return _COEFF_CACHE[key]


def bredon_homology(V: VirtualRep, k: int, coeff: str | MackeyTable = "Z", m: int | None = None, C=None):
    """``H~_k^{C_m}(S^V; M)`` as an abelian group (level ``m``, default the top)."""
    n = V.group.n
    C = C or sphere_complex(V)
    M = coefficient_table(n, coeff)
    return evaluate(C, M, m or n, "homology").homology_at(k - 1).group


def bredon_cohomology(V: VirtualRep, k: int, coeff: str | MackeyTable = "Z", m: int | None = None, C=None):
    n = V.group.n
    C = C or sphere_complex(V)
    M = coefficient_table(n, coeff)
    return evaluate(C, M, m or n, "cohomology").homology_at(k - 1).group


def homology_functor(V: VirtualRep, k: int, coeff: str | MackeyTable = "Z", C=None) -> AssembledFunctor:
    C = C or sphere_complex(V)
    return assemble_functor(C, coefficient_table(V.group.n, coeff), k - 1, "homology")


def cohomology_functor(V: VirtualRep, k: int, coeff: str | MackeyTable = "Z", C=None) -> AssembledFunctor:
    C = C or sphere_complex(V)
    return assemble_functor(C, coefficient_table(V.group.n, coeff), k - 1, "cohomology")


def mackey_assemble(V: VirtualRep, k: int, coeff: str | MackeyTable = "Z", variance: str = "homology", C=None) -> MackeyTable:
    """``H~_k(S^V)`` or ``H~^k(S^V)`` as a checked Mackey table."""
    f = (homology_functor if variance == "homology" else cohomology_functor)(V, k, coeff, C)
    if not f.weyl_trivial:
        raise MackeyAxiomError("Weyl action on the assembled functor is not trivial")
    rep = check_axioms(f.table)
    if not rep.ok:
        raise MackeyAxiomError("; ".join(rep.violations[:3]))
    return f.table
