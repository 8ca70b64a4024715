"""Products in the cohomology of S^0 with constant integer coefficients.

Classes in gradings with ``|alpha| >= 0`` even embed in an ambient ring:
write ``alpha = c*xi + sum_d c_d (xi^d - 2)`` with ``c = |alpha| / 2``; the
group ``Z/m(alpha)`` (or ``Z`` when ``c = 0``) sits inside ``Z/n`` (or ``Z``)
spanned by ``a_xi^c prod u_{xi^d}^{c_d}`` via multiplication by
``n / m(alpha)``.  Products there are products of ambient coordinates.

Classes with ``|alpha| < 0`` odd form a module over that ring; ``x`` acts on
``y`` by ``y -> ambient(x) * y`` modulo ``m(alpha + beta)``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Mapping

from .repring import GroupSpec, VirtualRep, m_alpha


class NotInSubring(ArithmeticError):
    """The ambient element has no preimage in the cohomology group."""


class MonomialSyntaxError(ValueError):
    pass


def _kind(alpha: VirtualRep) -> str:
    """'zero-dim', 'positive', 'negative' or 'vanishing'."""
    d = alpha.dim
    if d == 0:
        return "zero-dim"
    if d > 0 and d % 2 == 0:
        return "positive"
    if d < 0 and d % 2 == 1:
        return "negative"
    return "vanishing"


def group_order(alpha: VirtualRep) -> int:
    """Order of ``H^alpha``: 0 for the infinite cyclic group, 1 for zero."""
    k = _kind(alpha)
    if k == "zero-dim":
        return 0
    if k == "vanishing":
        return 1
    return m_alpha(alpha)


def canonical_decomposition(alpha: VirtualRep) -> tuple[int, dict[int, int]]:
    """``(c, {d: c_d})`` with ``alpha = c*xi + sum c_d (xi^d - 2)``."""
    if alpha.dim % 2:
        raise ValueError("only even gradings have a canonical decomposition")
    red = alpha.reduced
    a0 = alpha.trivial
    c = alpha.dim // 2
    cd = {d: e for d, e in red.items() if d != 1 and e}
    c1 = -a0 // 2 - sum(cd.values())
    if c1:
        cd[1] = c1
    return c, dict(sorted(cd.items()))


@dataclass(frozen=True)
class RingClass:
    grading: VirtualRep
    value: int

    def __post_init__(self):
        o = group_order(self.grading)
        v = self.value % o if o else self.value
        object.__setattr__(self, "value", v)

    @property
    def order(self) -> int:
        """Size of the group this class lives in (0 when infinite)."""
        return group_order(self.grading)

    @property
    def kind(self) -> str:
        return _kind(self.grading)

    def is_zero(self) -> bool:
        return self.value == 0

    def ambient(self) -> int:
        """Coordinate in ``Z`` or ``Z/n`` for non-negative even gradings."""
        if self.kind not in ("zero-dim", "positive"):
            raise ValueError("ambient coordinates exist only for |alpha| >= 0 even")
        n = self.grading.group.n
        x = (n // m_alpha(self.grading)) * self.value
        return x % n if self.kind == "positive" else x

    def __add__(self, other: "RingClass") -> "RingClass":
        if other.grading.key() != self.grading.key():
            raise ValueError("classes in different gradings")
        return RingClass(self.grading, self.value + other.value)

    def scale(self, k: int) -> "RingClass":
        return RingClass(self.grading, k * self.value)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingClass) and self.grading.key() == other.grading.key() and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.grading.key(), self.value))

    def __str__(self) -> str:
        from .repring import format_grading

        o = self.order
        if o == 1:
            return f"grading {format_grading(self.grading)}: 0 (group vanishes)"
        grp = "Z" if o == 0 else f"Z/{o}"
        return f"grading {format_grading(self.grading)}: {grp}, value {self.value}"


def from_ambient(alpha: VirtualRep, x: int) -> RingClass:
    k = _kind(alpha)
    if k == "vanishing":
        return RingClass(alpha, 0)
    n = alpha.group.n
    scale = n // m_alpha(alpha)
    if k == "positive":
        x %= n
    if x % scale:
        raise NotInSubring(f"{x} is not a multiple of {scale} in grading {alpha}")
    return RingClass(alpha, x // scale)


def multiply(x: RingClass, y: RingClass) -> RingClass:
    if x.grading.group.n != y.grading.group.n:
        raise ValueError("classes over different groups")
    total = x.grading + y.grading
    kx, ky = x.kind, y.kind
    even = ("zero-dim", "positive")
    if kx in even and ky in even:
        return from_ambient(total, x.ambient() * y.ambient())
    if kx in even and ky == "negative":
        return _act(x, y, total)
    if ky in even and kx == "negative":
        return _act(y, x, total)
    return RingClass(total, 0)


def _act(x: RingClass, y: RingClass, total: VirtualRep) -> RingClass:
    if _kind(total) != "negative":
        return RingClass(total, 0)
    return RingClass(total, x.ambient() * y.value)


# ---------------------------------------------------------------------------
# monomials in the classes u_{xi^d} and a_{xi^d}


@dataclass(frozen=True)
class Monomial:
    n: int
    u: tuple[tuple[int, int], ...] = ()
    a: tuple[tuple[int, int], ...] = ()
    coeff: int = 1

    @classmethod
    def make(cls, n: int, u: Mapping[int, int] | None = None, a: Mapping[int, int] | None = None, coeff: int = 1):
        g = GroupSpec(n)
        for d in list((u or {})) + list((a or {})):
            if d not in g.proper_divisors():
                raise ValueError(f"{d} is not a proper divisor of {n}")
        if any(f < 0 for f in (a or {}).values()):
            raise ValueError("a-exponents must be non-negative")
        uu = tuple(sorted((d, e) for d, e in (u or {}).items() if e))
        aa = tuple(sorted((d, f) for d, f in (a or {}).items() if f))
        return cls(n, uu, aa, coeff)

    @property
    def grading(self) -> VirtualRep:
        g = GroupSpec(self.n)
        terms: dict[int, int] = {}
        trivial = 0
        for d, e in self.u:
            terms[d] = terms.get(d, 0) + e
            trivial -= 2 * e
        for d, f in self.a:
            terms[d] = terms.get(d, 0) + f
        return VirtualRep.build(g, trivial, terms)

    @property
    def a_degree(self) -> int:
        return sum(f for _, f in self.a)

    def __mul__(self, other: "Monomial") -> "Monomial":
        u = dict(self.u)
        for d, e in other.u:
            u[d] = u.get(d, 0) + e
        a = dict(self.a)
        for d, f in other.a:
            a[d] = a.get(d, 0) + f
        return Monomial.make(self.n, u, a, self.coeff * other.coeff)

    def __str__(self) -> str:
        parts = [] if self.coeff == 1 else [str(self.coeff)]
        for d, e in self.u:
            parts.append(f"u({d})" + (f"^{e}" if e != 1 else ""))
        for d, f in self.a:
            parts.append(f"a({d})" + (f"^{f}" if f != 1 else ""))
        return " ".join(parts) or "1"


_MONO_TOKEN = re.compile(r"\s*(?:([ua])\(\s*(\d+)\s*\)(?:\^(-?\d+))?|(-?\d+))")


def parse_monomial(text: str, n: int) -> Monomial:
    """Parse ``"3 u(3)^2 a(1) u(5)^-1"``; a leading integer is a scalar."""
    u: dict[int, int] = {}
    a: dict[int, int] = {}
    coeff = 1
    pos = 0
    text = text.strip()
    if text in ("", "1"):
        return Monomial.make(n)
    while pos < len(text):
        m = _MONO_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MonomialSyntaxError(f"unexpected input at column {pos + 1}: {text[pos:]!r}")
        kind, d, e, k = m.groups()
        if k is not None:
            coeff *= int(k)
        else:
            d = int(d)
            e = int(e) if e is not None else 1
            tgt = u if kind == "u" else a
            tgt[d] = tgt.get(d, 0) + e
        pos = m.end()
        while pos < len(text) and text[pos] in " *":
            pos += 1
    return Monomial.make(n, u, a, coeff)


def class_of_monomial(mono: Monomial) -> RingClass:
    """Ambient coordinate ``prod d^{f_d}``: each ``a_{xi^d}`` is ``d`` times the
    canonical generator of its grading."""
    alpha = mono.grading
    x = mono.coeff * prod(d**f for d, f in mono.a)
    return from_ambient(alpha, x)


def monomial_order(mono: Monomial) -> int:
    """Additive order of a monomial with at least one a-factor and no
    negative u-powers: the gcd of ``n / delta`` over its a-factors."""
    if mono.a_degree < 1 or any(e < 0 for _, e in mono.u):
        raise ValueError("needs an a-factor and non-negative u-exponents")
    return gcd(*(mono.n // d for d, _ in mono.a))


def additive_order(c: RingClass) -> int:
    o = c.order
    return 0 if o == 0 else o // gcd(c.value, o)


# ---------------------------------------------------------------------------
# relation checks


@dataclass
class RelationReport:
    n: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _rand_actual(g: GroupSpec, rng: random.Random, max_terms: int = 3) -> dict[int, int]:
    divs = g.proper_divisors()
    return {d: rng.randint(0, max_terms) for d in rng.sample(divs, rng.randint(1, len(divs)))}


def relations_suite(n: int, samples: int = 50, seed: int = 0) -> RelationReport:
    g = GroupSpec(n)
    rep = RelationReport(n)
    divs = g.proper_divisors()

    def a(d):
        return class_of_monomial(Monomial.make(n, a={d: 1}))

    def u(d):
        return class_of_monomial(Monomial.make(n, u={d: 1}))

    for d in divs:
        rep.checked += 1
        if not a(d).scale(n // d).is_zero():
            rep.violations.append(f"(n/d) a(xi^{d}) != 0")
    for d in divs:
        for s in divs:
            if d == s:
                continue
            rep.checked += 1
            gg = gcd(d, s)
            lhs = multiply(a(s), u(d)).scale(d // gg)
            rhs = multiply(u(s), a(d)).scale(s // gg)
            if lhs != rhs:
                rep.violations.append(f"gold relation fails for d={d}, s={s}: {lhs.value} vs {rhs.value}")
    rng = random.Random(seed)
    for _ in range(samples):
        V, W = _rand_actual(g, rng), _rand_actual(g, rng)
        both = {d: V.get(d, 0) + W.get(d, 0) for d in set(V) | set(W)}
        for kind in ("a", "u"):
            mk = (lambda m: Monomial.make(n, a=m)) if kind == "a" else (lambda m: Monomial.make(n, u=m))
            rep.checked += 1
            lhs = multiply(class_of_monomial(mk(V)), class_of_monomial(mk(W)))
            rhs = class_of_monomial(mk(both))
            if lhs != rhs:
                rep.violations.append(f"{kind}_V {kind}_W != {kind}_(V+W) for V={V}, W={W}")
    return rep


def random_grading(g: GroupSpec, rng: random.Random, lo: int = -10, hi: int = 10, parity: int | None = None) -> VirtualRep:
    """A random virtual representation with total dimension in ``[lo, hi]``."""
    divs = g.proper_divisors()
    while True:
        terms = {d: rng.randint(-3, 3) for d in divs}
        base = 2 * sum(terms.values())
        target = rng.randint(lo, hi)
        if parity is not None and target % 2 != parity:
            continue
        return VirtualRep.build(g, target - base, terms)


def random_class(g: GroupSpec, rng: random.Random, lo: int = -10, hi: int = 10) -> RingClass:
    alpha = random_grading(g, rng, lo, hi)
    o = group_order(alpha)
    return RingClass(alpha, rng.randint(-50, 50) if o == 0 else rng.randrange(o))


def rep_gradings(n: int, max_dim: int = 8):
    """Gradings ``V - 2 mu`` with ``V`` actual of dimension at most ``max_dim``
    built from non-trivial irreducibles and ``0 <= 2 mu < dim V``."""
    from itertools import combinations_with_replacement

    g = GroupSpec(n)
    divs = g.proper_divisors()
    for size in range(1, max_dim // 2 + 1):
        for combo in combinations_with_replacement(divs, size):
            for mu in range(size):
                yield combo, mu


def monomials_in(combo: tuple[int, ...], mu: int, n: int):
    """All monomials with ``mu`` u-factors and ``len(combo) - mu`` a-factors
    drawn from the summands of ``combo``."""
    from itertools import combinations

    seen = set()
    for us in combinations(range(len(combo)), mu):
        u: dict[int, int] = {}
        a: dict[int, int] = {}
        for i, d in enumerate(combo):
            tgt = u if i in us else a
            tgt[d] = tgt.get(d, 0) + 1
        key = (tuple(sorted(u.items())), tuple(sorted(a.items())))
        if key not in seen:
            seen.add(key)
            yield Monomial.make(n, u, a)


def monomials_generate(combo: tuple[int, ...], mu: int, n: int) -> bool:
    """Do the monomial classes in this grading generate ``Z/m(alpha)``?"""
    monos = list(monomials_in(combo, mu, n))
    classes = [class_of_monomial(m) for m in monos]
    o = classes[0].order
    return gcd(o, *(c.value for c in classes)) == 1
