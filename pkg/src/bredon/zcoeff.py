"""Closed-form cohomology of S^0 with constant integer coefficients.

For a grading ``alpha`` with fixed dims ``|alpha^{C_d}|`` the answer is

* ``|alpha| = 0``: the box product with ``Z*`` at primes where
  ``|alpha^{C_p}| > 0`` and ``Z`` elsewhere (group ``Z``);
* ``|alpha| > 0`` even: the sum of ``K_p<Z/p>`` over primes with
  ``|alpha^{C_p}| <= 0`` (group ``Z/m(alpha)``);
* ``|alpha| < 0`` odd: the sum over primes with ``|alpha^{C_p}| > 1``;
* zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .abelian import FgAbelianGroup
from .mackey import CONST_Z, DUAL_Z, MackeyAtom, MackeyExpr, k_bracket
from .repring import FixedDimVector, GroupSpec, VirtualRep, fixed_dims, m_alpha, restrict_dims


@dataclass(frozen=True)
class CohomologyAnswer:
    grading: VirtualRep | FixedDimVector
    group_at_top: FgAbelianGroup
    mackey: MackeyExpr

    @property
    def representation_dependent(self) -> bool:
        return False

    def summary(self) -> str:
        return f"{self.group_at_top}; {self.mackey}"


def _dims(alpha: VirtualRep | FixedDimVector) -> FixedDimVector:
    return alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)


@lru_cache(maxsize=None)
def z_expr(fd: FixedDimVector) -> MackeyExpr:
    """The Mackey functor ``H^alpha(S^0; Z)`` from fixed dims alone."""
    g = fd.group
    top = fd[1]
    if top == 0:
        return MackeyExpr.of(MackeyAtom(g.n, tuple(DUAL_Z if fd[p] > 0 else CONST_Z for p in g.primes)))
    if top > 0 and top % 2 == 0:
        return MackeyExpr(g.n, tuple(k_bracket(g.n, p) for p in g.primes if fd[p] <= 0))
    if top < 0 and top % 2 == 1:
        return MackeyExpr(g.n, tuple(k_bracket(g.n, p) for p in g.primes if fd[p] > 1))
    return MackeyExpr.zero(g.n)


def z_group(fd: FixedDimVector) -> FgAbelianGroup:
    top = fd[1]
    if top == 0:
        return FgAbelianGroup.free(1)
    if (top > 0 and top % 2 == 0) or (top < 0 and top % 2 == 1):
        return FgAbelianGroup.cyclic(m_alpha(fd))
    return FgAbelianGroup.zero()


def cohomology_Z(alpha: VirtualRep | FixedDimVector) -> CohomologyAnswer:
    fd = _dims(alpha)
    return CohomologyAnswer(alpha, z_group(fd), z_expr(fd))


def homology_of_rep_sphere(V: VirtualRep, m: int) -> CohomologyAnswer:
    """``H_m(S^V; Z)``, which sits in grading ``V - m``."""
    if not V.is_actual():
        raise ValueError("V must be an actual representation")
    return cohomology_Z(V - m)


def cohomology_of_rep_sphere(V: VirtualRep, m: int) -> CohomologyAnswer:
    """``H^m(S^V; Z)``, which sits in grading ``m - V``."""
    if not V.is_actual():
        raise ValueError("V must be an actual representation")
    return cohomology_Z(m - V)


def sphere_boundary_splitting(alpha: VirtualRep | FixedDimVector, d: int, coeff: str = "Z"):
    """Cohomology of ``S(xi^d)_+`` in grading ``alpha`` as the pair
    ``(C_{n,d} H^{alpha-1}_{C_d}, K_{n,d} H^alpha_{C_d})``.

    With Burnside coefficients an entry is ``None`` when the inner functor
    over ``C_d`` is not determined by fixed dims.
    """
    fd = _dims(alpha)
    g = fd.group
    if g.n % d:
        raise ValueError(f"{d} does not divide {g.n}")
    inner = restrict_dims(fd, d)
    shifted = FixedDimVector(inner.group, tuple((e, v - 1) for e, v in inner.dims))
    if coeff == "Z":
        c_part = z_expr(shifted)
        k_part = z_expr(inner)
    elif coeff == "A":
        from .acoeff import CoeffSystem, a_expr

        full = CoeffSystem.burnside(d)
        c_part = a_expr(shifted, full.I)
        k_part = a_expr(inner, full.I)
    else:
        raise ValueError("coeff must be 'Z' or 'A'")
    c_out = c_part.extend(g.n, DUAL_Z) if c_part is not None else None
    k_out = k_part.extend(g.n, CONST_Z) if k_part is not None else None
    return c_out, k_out
