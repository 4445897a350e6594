"""Monomials and monomial ideals in Q[x_1, ..., x_n].

A monomial is a tuple of nonnegative exponents. Multidegrees of local
cohomology classes use the same tuple shape but may carry negative entries.
Variable indices are 0-based in code and 1-based (``x1``) in text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


def neg(u: Sequence[int]) -> frozenset[int]:
    """Coordinates where ``u`` is negative."""
    return frozenset(i for i, c in enumerate(u) if c < 0)


def support(m: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(m) if c > 0)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Sequence[int], b: Sequence[int]) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: Sequence[int], b: Sequence[int]) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_pow(a: Sequence[int], k: int) -> Monomial:
    return tuple(k * x for x in a)


def degree(m: Sequence[int]) -> int:
    return sum(m)


def _sort_key(m: Monomial):
    # by total degree, then x1 > x2 > ... (so x1 is listed before x2)
    return (sum(m), tuple(-e for e in m))


def minimal_generators(gens: Iterable[Sequence[int]]) -> tuple[Monomial, ...]:
    """Divisibility-minimal subset of ``gens``, deduplicated and sorted."""
    gens = [tuple(int(e) for e in g) for g in gens]
    if not gens:
        return ()
    n = len(gens[0])
    for g in gens:
        if len(g) != n:
            raise ValueError(f"mismatched variable counts: {len(g)} != {n}")
        if any(e < 0 for e in g):
            raise ValueError(f"negative exponent in monomial {g}")
    uniq = sorted(set(gens), key=_sort_key)
    kept: list[Monomial] = []
    for g in uniq:
        # sorted by degree, so a divisor of g is already in kept if present
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators.

    ``reduced=True`` asks the order and Ext filtrations to use the radical
    as scheme structure; the default keeps the generators as given.
    """

    n: int
    gens: tuple[Monomial, ...]
    reduced: bool = field(default=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        for g in self.gens:
            if len(g) != self.n:
                raise ValueError(f"monomial {g} does not live in {self.n} variables")
        object.__setattr__(self, "gens", minimal_generators(self.gens))

    @classmethod
    def from_gens(cls, gens: Iterable[Sequence[int]], n: int | None = None,
                  reduced: bool = False) -> "MonomialIdeal":
        gens = [tuple(g) for g in gens]
        if n is None:
            if not gens:
                raise ValueError("cannot infer variable count from no generators")
            n = len(gens[0])
        return cls(n, tuple(gens), reduced)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def contains(self, m: Sequence[int]) -> bool:
        return any(divides(g, m) for g in self.gens)

    def witness(self, m: Sequence[int]) -> Monomial | None:
        """Lexicographically smallest generator dividing ``m``."""
        hits = [g for g in self.gens if divides(g, m)]
        return min(hits) if hits else None

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def max_exponent(self) -> int:
        return max((e for g in self.gens for e in g), default=0)

    def with_reduced(self, reduced: bool) -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.gens, reduced)

    def __str__(self) -> str:
        return "(" + ", ".join(format_monomial(g) for g in self.gens) + ")"


def format_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def radical(I: MonomialIdeal) -> MonomialIdeal:
    gens = [tuple(1 if e > 0 else 0 for e in g) for g in I.gens]
    return MonomialIdeal(I.n, tuple(gens), reduced=True)


def scheme_ideal(I: MonomialIdeal) -> MonomialIdeal:
    """Ideal whose powers define the order and Ext filtrations."""
    return radical(I) if I.reduced else I


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.n != J.n:
        raise ValueError("ideals live in different rings")
    return MonomialIdeal(I.n, tuple(mono_mul(a, b) for a in I.gens for b in J.gens))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.n != J.n:
        raise ValueError("ideals live in different rings")
    return MonomialIdeal(I.n, I.gens + J.gens)


def ideal_leq(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Containment I ⊆ J."""
    return all(J.contains(g) for g in I.gens)


def ideal_power(I: MonomialIdeal, m: int) -> MonomialIdeal:
    if m < 1:
        raise ValueError("ideal_power needs m >= 1")
    return _power(I.n, I.gens, m)


_POWER_CACHE: dict = {}


def _power(n, gens, m):
    key = (n, gens, m)
    hit = _POWER_CACHE.get(key)
    if hit is None:
        if m == 1:
            hit = MonomialIdeal(n, gens)
        else:
            prev = _power(n, gens, m - 1)
            hit = MonomialIdeal(n, tuple(mono_mul(a, b) for a in prev.gens for b in gens))
        _POWER_CACHE[key] = hit
    return hit


def minimal_primes(I: MonomialIdeal) -> list[frozenset[int]]:
    """Minimal coordinate primes of ``radical(I)`` as sets of variable indices."""
    if I.is_zero or I.is_unit:
        raise ValueError("minimal primes need a proper nonzero ideal")
    supports = [support(g) for g in radical(I).gens]
    found: list[frozenset[int]] = []
    for size in range(1, I.n + 1):
        for combo in combinations(range(I.n), size):
            s = frozenset(combo)
            if any(p <= s for p in found):
                continue
            if all(s & sup for sup in supports):
                found.append(s)
    return sorted(found, key=lambda p: (len(p), sorted(p)))


def codim(I: MonomialIdeal) -> int:
    return min(len(p) for p in minimal_primes(I))


def jk_ideal(f: Sequence[Sequence[int]], k: int) -> MonomialIdeal:
    """Ideal generated by f_1^{b_1}...f_r^{b_r}, 0 <= b_i <= k, sum b_i = k(r-1)."""
    f = [tuple(m) for m in f]
    if not f:
        raise ValueError("jk_ideal needs at least one monomial")
    if k < 0:
        raise ValueError("k must be nonnegative")
    r, n = len(f), len(f[0])
    target = k * (r - 1)
    gens = []
    for b in product(range(k + 1), repeat=r):
        if sum(b) != target:
            continue
        m = (0,) * n
        for fi, bi in zip(f, b):
            m = mono_mul(m, mono_pow(fi, bi))
        gens.append(m)
    return MonomialIdeal(n, tuple(gens))


def is_complete_intersection(I: MonomialIdeal) -> bool:
    sups = [support(g) for g in I.gens]
    return all(not (a & b) for a, b in combinations(sups, 2))


def coordinate_ideal(n: int, r: int) -> MonomialIdeal:
    """(x_1, ..., x_r) in n variables."""
    gens = [tuple(1 if j == i else 0 for j in range(n)) for i in range(r)]
    return MonomialIdeal(n, tuple(gens))


def add_variables(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """I + (y_1, ..., y_d) in n + d variables."""
    gens = [g + (0,) * d for g in I.gens]
    gens += [(0,) * I.n + tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    return MonomialIdeal(I.n + d, tuple(gens), I.reduced)
