"""Cohomology of S^0 with coefficients in ``A_I (x) Z_J``.

``I`` is the set of prime indices carrying the Burnside functor and ``J`` its
complement, carrying constant ``Z``.  Group values are always available.  The
Mackey functor is produced when every ``|alpha^{C_S}|`` with ``S`` inside ``I``
is nonzero, or when ``alpha`` is mostly non-zero; in the remaining case the
functor depends on more than the fixed dims and is reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .abelian import FgAbelianGroup
from .mackey import BURNSIDE, CONST_Z, MackeyAtom, MackeyExpr, bracket
from .repring import (
    Case,
    FixedDimVector,
    GroupSpec,
    VirtualRep,
    classify,
    fixed_dims,
    nu,
    quotient_dims,
    subsets,
    zeta,
)
from .zcoeff import z_expr


@dataclass(frozen=True)
class CoeffSystem:
    n: int
    I: frozenset[int]

    def __post_init__(self):
        k = GroupSpec(self.n).k
        I = frozenset(self.I)
        if not I <= frozenset(range(1, k + 1)):
            raise ValueError("I must be a set of prime indices of n")
        object.__setattr__(self, "I", I)

    @property
    def J(self) -> frozenset[int]:
        return frozenset(range(1, GroupSpec(self.n).k + 1)) - self.I

    @classmethod
    def burnside(cls, n: int) -> "CoeffSystem":
        return cls(n, frozenset(range(1, GroupSpec(n).k + 1)))

    @classmethod
    def constant(cls, n: int) -> "CoeffSystem":
        return cls(n, frozenset())

    def expr(self) -> MackeyExpr:
        g = GroupSpec(self.n)
        return MackeyExpr.of(
            MackeyAtom(self.n, tuple(BURNSIDE if i + 1 in self.I else CONST_Z for i in range(g.k)))
        )

    def label(self) -> str:
        if self.I == frozenset(range(1, GroupSpec(self.n).k + 1)):
            return "A"
        if not self.I:
            return "Z"
        return "A_{" + ",".join(map(str, sorted(self.I))) + "} (x) Z"


REPRESENTATION_DEPENDENT = "representation-dependent"


@dataclass(frozen=True)
class ACohomologyAnswer:
    grading: VirtualRep | FixedDimVector
    group_at_top: FgAbelianGroup
    mackey: MackeyExpr | None
    case: Case

    @property
    def representation_dependent(self) -> bool:
        return self.mackey is None

    def summary(self) -> str:
        m = f"Mackey: {REPRESENTATION_DEPENDENT}" if self.mackey is None else str(self.mackey)
        return f"{self.group_at_top}; {m}"


def _dims(alpha: VirtualRep | FixedDimVector) -> FixedDimVector:
    return alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)


def a_group(fd: FixedDimVector, I: Iterable[int]) -> FgAbelianGroup:
    I = frozenset(I)
    g = fd.group
    J = frozenset(range(1, g.k + 1)) - I
    rank = sum(1 for S in subsets(I) if fd[g.divisor_of(S)] == 0)
    orders = [0] * rank
    for p in g.primes:
        orders += [p] * nu(fd, p, I, J)
    return FgAbelianGroup.from_orders(orders)


def _strip(expr: MackeyExpr, indices: frozenset[int], group: GroupSpec, big: GroupSpec) -> MackeyExpr:
    """Delete the summands ``K_p<Z/p>`` for the primes named by ``indices``
    (indices refer to the primes of the big group)."""
    drop = {big.primes[i - 1] for i in indices}
    keep = []
    for a in expr.atoms:
        torsion = [(p, f) for p, f in zip(group.primes, a.factors) if f.kind == "<>"]
        rest_const = all(f.kind == "Z" for f in a.factors if f.kind != "<>")
        if len(torsion) == 1 and torsion[0][1].c == torsion[0][0] and rest_const and torsion[0][0] in drop:
            continue
        keep.append(a)
    return MackeyExpr(expr.n, tuple(keep))


@lru_cache(maxsize=None)
def a_expr(fd: FixedDimVector, I: frozenset[int]) -> MackeyExpr | None:
    """Mackey functor for ``A_I (x) Z_J`` or ``None`` when undetermined."""
    g = fd.group
    I = frozenset(I)
    if not I:
        return z_expr(fd)
    relative_nonzero = all(fd[g.divisor_of(S)] != 0 for S in subsets(I))
    if not relative_nonzero and classify(fd) != Case.MOSTLY_NON_ZERO:
        return None
    total = MackeyExpr.zero(g.n)
    for S in subsets(I):
        d = g.divisor_of(S)
        q = quotient_dims(fd, d)
        inner = z_expr(q)
        if not relative_nonzero:
            strip = zeta(fd, S) & I
            if strip:
                inner = _strip(inner, strip, q.group, g)
        total = total + inner.extend(g.n, bracket(0))
    return total


def cohomology_A_group(alpha: VirtualRep | FixedDimVector, c: CoeffSystem | None = None) -> FgAbelianGroup:
    fd = _dims(alpha)
    c = c or CoeffSystem.burnside(fd.group.n)
    return a_group(fd, c.I)


def cohomology_A_mackey(alpha: VirtualRep | FixedDimVector, c: CoeffSystem | None = None) -> ACohomologyAnswer:
    fd = _dims(alpha)
    c = c or CoeffSystem.burnside(fd.group.n)
    return ACohomologyAnswer(alpha, a_group(fd, c.I), a_expr(fd, c.I), classify(fd))


def bZ_reduction(alpha: VirtualRep | FixedDimVector, p: int, inner: MackeyExpr | None = None) -> MackeyExpr:
    """``H^alpha(<Z>_p (x) M)`` as ``<Z>_p`` boxed with the answer for
    ``alpha^{C_p}`` over ``C_{n/p}``.  By default ``M`` is constant ``Z``."""
    fd = _dims(alpha)
    g = fd.group
    q = quotient_dims(fd, p)
    if inner is None:
        inner = z_expr(q)
    if inner.n != g.n // p:
        raise ValueError("inner functor must live over C_{n/p}")
    return inner.extend(g.n, bracket(0))
