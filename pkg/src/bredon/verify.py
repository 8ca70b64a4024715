"""Sweeps comparing the closed-form engines with the cellular oracle, and
randomized structural checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd

from .acoeff import CoeffSystem, a_expr, a_group
from .cellular import assemble_functor, coefficient_table, sphere_complex
from .mackey import MackeyExpr, check_axioms, concretize, exactness_witness, signature
from .repring import (
    Case,
    FixedDimVector,
    GroupSpec,
    VirtualRep,
    classify,
    duality_partner,
    fixed_dims,
    format_grading,
    quotient_dims,
    restrict_dims,
)
from .zcoeff import z_expr, z_group


@dataclass
class SweepReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "failures": list(self.failures), "extra": dict(self.extra)}


@lru_cache(maxsize=None)
def _table(expr: MackeyExpr):
    return concretize(expr)


def _restrict_I(I: frozenset[int], g: GroupSpec, m: int) -> frozenset[int]:
    sub = GroupSpec(m)
    return frozenset(sub.prime_index(g.primes[i - 1]) for i in I if m % g.primes[i - 1] == 0)


def engine_level_group(fd: FixedDimVector, m: int, coeff: str | CoeffSystem):
    """Group value at level ``m`` predicted by the closed forms."""
    sub = restrict_dims(fd, m)
    if coeff == "Z":
        return z_group(sub)
    c = CoeffSystem.burnside(fd.group.n) if coeff == "A" else coeff
    return a_group(sub, _restrict_I(c.I, fd.group, m))


def engine_expr(fd: FixedDimVector, coeff: str | CoeffSystem) -> MackeyExpr | None:
    if coeff == "Z":
        return z_expr(fd)
    c = CoeffSystem.burnside(fd.group.n) if coeff == "A" else coeff
    return a_expr(fd, c.I)


def sphere_grid(n: int, max_factors: int = 2) -> list[VirtualRep]:
    """Every sum of at most ``max_factors`` irreducibles ``xi^d`` with d | n, d < n."""
    g = GroupSpec(n)
    out = []
    for size in range(max_factors + 1):
        for combo in combinations_with_replacement(g.proper_divisors(), size):
            terms: dict[int, int] = {}
            for d in combo:
                terms[d] = terms.get(d, 0) + 1
            out.append(VirtualRep.build(g, 0, terms))
    return out


def oracle_sweep(
    reps: list[VirtualRep],
    coeff: str | CoeffSystem = "Z",
    report: SweepReport | None = None,
    axioms: SweepReport | None = None,
) -> SweepReport:
    """Compare oracle and engine for ``H~_k(S^V)`` and ``H~^k(S^V)`` with
    ``0 <= k <= dim V + 1`` at every level.  One comparison per
    ``(V, k, variance, level)``; Mackey structure is compared whenever the
    engine emits a functor."""
    rep = report or SweepReport(f"oracle[{coeff if isinstance(coeff, str) else 'A_I'}]")
    mackey_checked = 0
    for V in reps:
        n = V.group.n
        g = V.group
        M = coefficient_table(n, _table(coeff.expr()) if isinstance(coeff, CoeffSystem) else coeff)
        C = sphere_complex(V)
        for k in range(V.dim + 2):
            for variance in ("homology", "cohomology"):
                alpha = V - k if variance == "homology" else k - V
                fd = fixed_dims(alpha)
                f = assemble_functor(C, M, k - 1, variance)
                tag = f"{variance} V={format_grading(V)} k={k}"
                for m in g.divisors:
                    rep.checked += 1
                    got = f.table.value(m)
                    want = engine_level_group(fd, m, coeff)
                    if got != want:
                        rep.fail(f"{tag} level {m}: oracle {got}, engine {want}")
                if not f.weyl_trivial:
                    rep.fail(f"{tag}: Weyl action not trivial")
                expr = engine_expr(fd, coeff)
                if expr is not None:
                    mackey_checked += 1
                    t = _table(expr)
                    if signature(t) != signature(f.table):
                        rep.fail(f"{tag}: Mackey structure differs from {expr}")
                    if axioms is not None:
                        axioms.checked += 1
                        if not check_axioms(t).ok:
                            axioms.fail(f"engine functor {expr} fails the axioms")
                if axioms is not None:
                    axioms.checked += 1
                    if not check_axioms(f.table).ok:
                        axioms.fail(f"oracle functor for {tag} fails the axioms")
    rep.extra["mackey_comparisons"] = rep.extra.get("mackey_comparisons", 0) + mackey_checked
    return rep


def acceptance_reps(n: int) -> list[VirtualRep]:
    """The full two-factor grid for two primes; the single three-factor
    sphere ``xi + xi^{p1} + xi^{p1 p2}`` when there are three or more."""
    g = GroupSpec(n)
    if g.k >= 3:
        p1, p2 = g.primes[0], g.primes[1]
        return [VirtualRep.build(g, 0, {1: 1, p1: 1, p1 * p2: 1})]
    return sphere_grid(n, 2)


# ---------------------------------------------------------------------------
# randomized structural properties


def random_virtual(g: GroupSpec, rng: random.Random, spread: int = 3, trivial: int = 8) -> VirtualRep:
    terms = {d: rng.randint(-spread, spread) for d in g.proper_divisors()}
    return VirtualRep.build(g, rng.randint(-trivial, trivial), terms)


def unit_twist(alpha: VirtualRep, rng: random.Random) -> VirtualRep:
    """Replace each ``xi^r`` by ``xi^{ur}`` for a random unit ``u``: the
    fixed dims stay the same."""
    n = alpha.group.n
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    terms: dict[int, int] = {}
    for r, c in alpha.coeffs:
        u = rng.choice(units)
        terms[(u * r) % n] = terms.get((u * r) % n, 0) + c
    return VirtualRep.build(alpha.group, alpha.trivial, terms)


def _squarefree_dividing(orders, n: int) -> bool:
    # n is squarefree, so dividing it suffices
    return all(n % o == 0 for o in orders if o)


def property_sweep(n: int, samples: int = 5000, seed: int = 0, emitted: set | None = None) -> SweepReport:
    """Randomized structural checks on ``samples`` gradings.  Every Mackey
    expression produced along the way is added to ``emitted`` when given."""
    g = GroupSpec(n)
    rng = random.Random(seed)
    rep = SweepReport(f"properties[n={n}]")
    full = CoeffSystem.burnside(n)
    for _ in range(samples):
        alpha = random_virtual(g, rng)
        fd = fixed_dims(alpha)
        twin = fixed_dims(unit_twist(alpha, rng))
        vals = fd.as_tuple()
        ze = z_expr(fd)
        zg = z_group(fd)
        ag = a_group(fd, full.I)
        ae = a_expr(fd, full.I)
        label = format_grading(alpha)
        rep.checked += 1
        if emitted is not None:
            emitted.add(ze)
            if ae is not None:
                emitted.add(ae)
        if alpha.dim % 2 and not (zg.is_finite() and ag.is_finite()):
            rep.fail(f"odd grading {label} has infinite cohomology")
        zt = _table(ze)
        groups = [zt.value(d) for d in g.divisors] + [ag]
        if ae is not None:
            at = _table(ae)
            groups += [at.value(d) for d in g.divisors]
            if at.value(n) != ag:
                rep.fail(f"{label}: A functor at top {at.value(n)} != group {ag}")
        if zt.value(n) != zg:
            rep.fail(f"{label}: Z functor at top {zt.value(n)} != group {zg}")
        for grp in groups:
            if not _squarefree_dividing(grp.torsion, n):
                rep.fail(f"{label}: torsion {grp} not squarefree dividing n")
        if all(v > 0 for v in vals) or all(v < 0 for v in vals):
            if not (ze.is_zero() and ag.is_zero() and (ae is None or ae.is_zero())):
                rep.fail(f"{label}: constant-sign fixed dims but non-zero answer")
        if twin != fd:
            rep.fail(f"{label}: unit twist changed fixed dims")
        if z_expr(twin) != ze or z_group(twin) != zg or a_group(twin, full.I) != ag:
            rep.fail(f"{label}: answers differ on equal fixed dims")
        if classify(fd) != Case.MANY_ZEROS and a_expr(twin, full.I) != ae:
            rep.fail(f"{label}: A Mackey answers differ on equal fixed dims")
        if alpha.dim < 0 and alpha.dim % 2:
            partner = fixed_dims(duality_partner(alpha))
            if z_group(partner) != zg:
                rep.fail(f"{label}: duality partner group {z_group(partner)} != {zg}")
        if alpha.dim % 2 and all(v <= 1 for v in vals) and not ag.is_zero():
            rep.fail(f"{label}: odd with all fixed dims <= 1 but A-group {ag}")
        for j in full.I:
            rest = full.I - {j}
            p = g.primes[j - 1]
            inner = quotient_dims(fd, p)
            inner_I = frozenset(GroupSpec(n // p).prime_index(g.primes[i - 1]) for i in rest)
            lhs = ag.free_rank
            rhs = a_group(inner, inner_I).free_rank + a_group(fd, rest).free_rank
            if lhs != rhs:
                rep.fail(f"{label}: rank additivity at prime {p}: {lhs} != {rhs}")
        if a_group(fd, frozenset()) != zg or a_expr(fd, frozenset()) != ze:
            rep.fail(f"{label}: empty Burnside set differs from Z coefficients")
    return rep


def exactness_sweep(ns=(15, 21, 35, 105)) -> SweepReport:
    rep = SweepReport("exactness")
    for n in ns:
        rep.checked += 1
        w = exactness_witness(n)
        if not w.ok:
            rep.fail(f"n={n}: cokernel of Z* -> Z is not the K-sum ({w.cokernel_values})")
    return rep
