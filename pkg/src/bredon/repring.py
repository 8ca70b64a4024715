"""Real representations of C_n (n odd, squarefree) and the combinatorics of
their fixed-point dimensions.

Divisors of ``n`` index subgroups: ``d`` stands for the subgroup ``C_d`` of
order ``d``.  A set of prime indices ``I`` corresponds to the divisor
``prod(p_i for i in I)``; helpers below convert between the two.

>>> g = GroupSpec(15)
>>> alpha = parse_grading("xi^1 + xi^3 - 2", g)
>>> alpha.fixed_dims().as_tuple()
(2, 0, -2, -2)
>>> m_alpha(alpha)
15
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Mapping


def _primes_of(n: int) -> list[int]:
    ps, m, p = [], n, 2
    while p * p <= m:
        if m % p == 0:
            ps.append(p)
            m //= p
            if m % p == 0:
                raise ValueError(f"n = {n} is not squarefree")
        p += 1
    if m > 1:
        ps.append(m)
    return ps


@dataclass(frozen=True)
class GroupSpec:
    """The cyclic group C_n."""

    n: int
    primes: tuple[int, ...] = field(init=False)
    divisors: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 1 or n % 2 == 0:
            raise ValueError(f"n must be an odd positive integer, got {n!r}")
        ps = tuple(_primes_of(n))
        object.__setattr__(self, "primes", ps)
        divs = sorted(prod(s) for r in range(len(ps) + 1) for s in combinations(ps, r))
        object.__setattr__(self, "divisors", tuple(divs))

    @property
    def k(self) -> int:
        return len(self.primes)

    def primes_of(self, d: int) -> tuple[int, ...]:
        return tuple(p for p in self.primes if d % p == 0)

    def index_set(self, d: int) -> frozenset[int]:
        """1-based indices of the primes dividing ``d``."""
        return frozenset(i + 1 for i, p in enumerate(self.primes) if d % p == 0)

    def divisor_of(self, indices: Iterable[int]) -> int:
        return prod(self.primes[i - 1] for i in indices)

    def prime_index(self, p: int) -> int:
        return self.primes.index(p) + 1

    def sub(self, d: int) -> "GroupSpec":
        """The subgroup C_d (also the quotient C_n / C_{n/d}, as groups)."""
        if self.n % d:
            raise ValueError(f"{d} does not divide {self.n}")
        return GroupSpec(d)

    def proper_divisors(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d < self.n)


def fold_exponent(r: int, n: int) -> int:
    """Canonical exponent for the real representation xi^r: 0 means trivial."""
    r %= n
    return min(r, n - r)


@dataclass(frozen=True)
class FixedDimVector:
    """``dims[d] = |alpha^{C_d}|`` for every divisor ``d`` of ``n``."""

    group: GroupSpec
    dims: tuple[tuple[int, int], ...]

    @classmethod
    def from_map(cls, group: GroupSpec, dims: Mapping[int, int]) -> "FixedDimVector":
        vals = {d: int(dims[d]) for d in group.divisors}
        parities = {v % 2 for v in vals.values()}
        if len(parities) > 1:
            raise ValueError("fixed-point dimensions must share a parity")
        return cls(group, tuple(sorted(vals.items())))

    def __getitem__(self, d: int) -> int:
        return dict(self.dims)[d]

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.dims)

    def to_rep(self) -> "VirtualRep":
        """Invert the triangular system: reduced coefficients from fixed dims."""
        g = self.group
        dims = self.as_dict()
        a0 = dims[g.n]
        # |alpha^{C_d}| - a0 = 2 * sum_{e : d | e < n} c_e ; Moebius-style solve top-down
        coeff: dict[int, int] = {}
        for d in sorted(g.proper_divisors(), reverse=True):
            above = sum(coeff[e] for e in coeff if e % d == 0)
            diff = dims[d] - a0 - 2 * above
            if diff % 2:
                raise ValueError("inconsistent parity")
            coeff[d] = diff // 2
        return VirtualRep.from_reduced(g, a0, coeff)


@dataclass(frozen=True)
class VirtualRep:
    """``a0 + sum c_r xi^r``.  ``coeffs`` holds folded exponents 1 <= r <= (n-1)/2."""

    group: GroupSpec
    trivial: int
    coeffs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        clean = {}
        for r, c in self.coeffs:
            if not 1 <= r <= (self.group.n - 1) // 2:
                raise ValueError(f"exponent {r} not folded")
            if c:
                clean[r] = clean.get(r, 0) + c
        object.__setattr__(self, "coeffs", tuple(sorted((r, c) for r, c in clean.items() if c)))

    # constructors ---------------------------------------------------------
    @classmethod
    def build(cls, group: GroupSpec, trivial: int = 0, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> "VirtualRep":
        """Accept arbitrary integer exponents; fold them canonically."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        a0 = trivial
        acc: dict[int, int] = {}
        for r, c in items:
            f = fold_exponent(r, group.n)
            if f == 0:
                a0 += 2 * c
            else:
                acc[f] = acc.get(f, 0) + c
        return cls(group, a0, tuple(acc.items()))

    @classmethod
    def from_reduced(cls, group: GroupSpec, trivial: int, reduced: Mapping[int, int]) -> "VirtualRep":
        return cls.build(group, trivial, {d: c for d, c in reduced.items() if d < group.n})

    @classmethod
    def zero(cls, group: GroupSpec) -> "VirtualRep":
        return cls(group, 0, ())

    @classmethod
    def xi(cls, group: GroupSpec, r: int = 1, c: int = 1) -> "VirtualRep":
        return cls.build(group, 0, {r: c})

    # arithmetic -----------------------------------------------------------
    def _combine(self, other: "VirtualRep | int", sign: int) -> "VirtualRep":
        if isinstance(other, int):
            return VirtualRep(self.group, self.trivial + sign * other, self.coeffs)
        if other.group != self.group:
            raise ValueError("representations of different groups")
        acc = dict(self.coeffs)
        for r, c in other.coeffs:
            acc[r] = acc.get(r, 0) + sign * c
        return VirtualRep(self.group, self.trivial + sign * other.trivial, tuple(acc.items()))

    def __add__(self, other: "VirtualRep | int") -> "VirtualRep":
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other: "VirtualRep | int") -> "VirtualRep":
        return self._combine(other, -1)

    def __rsub__(self, other: int) -> "VirtualRep":
        return (-self) + other

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.group, -self.trivial, tuple((r, -c) for r, c in self.coeffs))

    def __mul__(self, k: int) -> "VirtualRep":
        return VirtualRep(self.group, k * self.trivial, tuple((r, k * c) for r, c in self.coeffs))

    __rmul__ = __mul__

    # derived data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.trivial + 2 * sum(c for _, c in self.coeffs)

    @cached_property
    def reduced(self) -> dict[int, int]:
        """Coefficients after ``r -> gcd(r, n)`` (keys are proper divisors)."""
        out: dict[int, int] = {}
        for r, c in self.coeffs:
            d = gcd(r, self.group.n)
            out[d] = out.get(d, 0) + c
        return {d: c for d, c in sorted(out.items()) if c}

    def reduce(self) -> "VirtualRep":
        return VirtualRep.from_reduced(self.group, self.trivial, self.reduced)

    def fixed_dim(self, d: int) -> int:
        return self.trivial + 2 * sum(c for e, c in self.reduced.items() if e % d == 0)

    def fixed_dims(self) -> FixedDimVector:
        return fixed_dims(self)

    def is_even(self) -> bool:
        return self.trivial % 2 == 0

    def is_actual(self) -> bool:
        return self.trivial >= 0 and all(c >= 0 for _, c in self.coeffs)

    def restrict(self, d: int) -> "VirtualRep":
        """Restriction to the subgroup C_d (generated by rho^(n/d))."""
        return VirtualRep.build(GroupSpec(d), self.trivial, dict(self.coeffs))

    def exponents(self) -> list[int]:
        """Multiset of folded exponents (actual representations only)."""
        if not self.is_actual():
            raise ValueError("not an actual representation")
        return [r for r, c in self.coeffs for _ in range(c)]

    def __str__(self) -> str:
        return format_grading(self)

    def key(self) -> tuple:
        return (self.group.n, self.trivial, self.coeffs)


def format_grading(alpha: VirtualRep) -> str:
    parts: list[str] = []
    for r, c in alpha.coeffs:
        term = f"xi^{r}"
        if c == 1:
            parts.append(f"+ {term}")
        elif c == -1:
            parts.append(f"- {term}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{term}")
    if alpha.trivial or not parts:
        parts.append(f"{'+' if alpha.trivial >= 0 else '-'} {abs(alpha.trivial)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(xi(?:\s*\^\s*(-?\d+))?)?")


class GradingSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.pos = pos


def parse_grading(text: str, group: GroupSpec) -> VirtualRep:
    """Parse sums like ``"2*xi^3 - 2*xi^1 - 1"`` (see README for the grammar)."""
    s = text.strip()
    if not s:
        raise GradingSyntaxError(text, 0, "empty grading")
    pos = 0
    a0 = 0
    terms: list[tuple[int, int]] = []
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TERM.match(s, pos)
        sign, num, xi, exp = m.group(1), m.group(2), m.group(3), m.group(4)
        if not sign and not first:
            raise GradingSyntaxError(text, pos, "expected '+' or '-'")
        if num is None and xi is None:
            raise GradingSyntaxError(text, pos, "expected an integer or xi^r term")
        if xi is None and "*" in m.group(0):
            raise GradingSyntaxError(text, m.end(), "expected xi^r after '*'")
        coef = int(num) if num is not None else 1
        if sign == "-":
            coef = -coef
        if xi is None:
            a0 += coef
        else:
            r = int(exp) if exp is not None else 1
            terms.append((r, coef))
        pos = m.end()
        first = False
    return VirtualRep.build(group, a0, terms)


def fixed_dims(alpha: VirtualRep) -> FixedDimVector:
    g = alpha.group
    return FixedDimVector(g, tuple((d, alpha.fixed_dim(d)) for d in g.divisors))


def m_alpha(alpha: VirtualRep | FixedDimVector) -> int:
    """Product of the primes p with |alpha^{C_p}| <= 0 (even) or > 1 (odd)."""
    fd = alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)
    g = fd.group
    top = fd[1]
    if top % 2 == 0:
        return prod(p for p in g.primes if fd[p] <= 0)
    return prod(p for p in g.primes if fd[p] > 1)


def j_vector(alpha: VirtualRep | FixedDimVector) -> tuple[int, ...]:
    fd = alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)
    return tuple(int(fd[p] > 0) for p in fd.group.primes)


class Case(str, Enum):
    NON_ZERO = "NonZero"
    MOSTLY_NON_ZERO = "MostlyNonZero"
    MANY_ZEROS = "ManyZeros"


def classify(alpha: VirtualRep | FixedDimVector) -> Case:
    fd = alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)
    g = fd.group
    zeros = [d for d in g.divisors if fd[d] == 0]
    if not zeros:
        return Case.NON_ZERO
    for d in zeros:
        for p in g.primes:
            if d % p and fd[d * p] == 0:
                return Case.MANY_ZEROS
    return Case.MOSTLY_NON_ZERO


def quotient_fixed(alpha: VirtualRep, d: int) -> VirtualRep:
    """``alpha^{C_d}`` as a representation of ``C_n / C_d = C_{n/d}``.

    Summands fixed by ``C_d`` descend; the others are killed.
    """
    g = alpha.group
    if g.n % d:
        raise ValueError(f"{d} does not divide {g.n}")
    q = GroupSpec(g.n // d)
    if d == 1:
        return alpha
    terms = {}
    for r, c in alpha.coeffs:
        if r % d == 0:
            terms[r // d] = terms.get(r // d, 0) + c
    return VirtualRep.build(q, alpha.trivial, terms)


def quotient_dims(fd: FixedDimVector, d: int) -> FixedDimVector:
    """Fixed dims of ``alpha^{C_d}`` over ``C_{n/d}``: level e maps to d*e."""
    q = GroupSpec(fd.group.n // d)
    full = fd.as_dict()
    return FixedDimVector(q, tuple((e, full[d * e]) for e in q.divisors))


def restrict_dims(fd: FixedDimVector, m: int) -> FixedDimVector:
    """Fixed dims of the restriction to ``C_m``: the same numbers at e | m."""
    sub = GroupSpec(m)
    full = fd.as_dict()
    return FixedDimVector(sub, tuple((e, full[e]) for e in sub.divisors))


def zeta(alpha: VirtualRep | FixedDimVector, indices: Iterable[int]) -> frozenset[int]:
    """Indices ``i`` outside ``indices`` with ``|alpha^{C_{I p_i}}| = 0``."""
    fd = alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)
    g = fd.group
    I = frozenset(indices)
    base = g.divisor_of(I)
    return frozenset(i for i in range(1, g.k + 1) if i not in I and fd[base * g.primes[i - 1]] == 0)


def subsets(indices: Iterable[int]) -> list[frozenset[int]]:
    s = sorted(indices)
    return [frozenset(c) for r in range(len(s) + 1) for c in combinations(s, r)]


def nu(alpha: VirtualRep | FixedDimVector, p: int, I: Iterable[int], J: Iterable[int]) -> int:
    """Multiplicity of ``Z/p`` in the group with coefficients ``A_I (x) Z_J``.

    Counts subsets ``S`` of ``I`` with ``p`` not dividing ``|S|``.  For even
    gradings the condition is ``|alpha^{C_S}| > 0`` and ``|alpha^{C_{Sp}}|``
    at most 0 (when p comes from J) or below 0 (when p comes from I).  For odd
    gradings it is ``|alpha^{C_S}| < 0`` and ``|alpha^{C_{Sp}}| > 1``.
    """
    fd = alpha if isinstance(alpha, FixedDimVector) else fixed_dims(alpha)
    g = fd.group
    I = frozenset(I)
    J = frozenset(J)
    i = g.prime_index(p)
    odd = fd[1] % 2 == 1
    count = 0
    for S in subsets(I - {i}):
        d = g.divisor_of(S)
        lo, hi = fd[d], fd[d * p]
        if odd:
            count += lo < 0 and hi > 1
        elif i in J:
            count += lo > 0 and hi <= 0
        else:
            count += lo > 0 and hi < 0
    return count


def duality_partner(alpha: VirtualRep) -> VirtualRep:
    """``3 - xi - alpha``."""
    return (3 - VirtualRep.xi(alpha.group)) - alpha
