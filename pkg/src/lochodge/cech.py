"""Multigraded strands of the Čech complex on squarefree monomial generators.

For squarefree generators m_1..m_r of rad(I), the degree-u part of the
localization A_{m_J} is one-dimensional (spanned by x^u) exactly when every
negative coordinate of u lies in supp(m_J). The strand at u therefore only
depends on the sign set neg(u), and multiplication by a monomial or by a
partial derivative acts on strands by inclusion of subcomplexes times a
scalar. All cohomology here is computed per sign set ("chamber") and cached.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .linalg import FiniteComplex, RationalMatrix
from .monomial import MonomialIdeal, neg, radical, support
from .strands import SubsetComplex, induced_on_cohomology, subset_map


def _bits(s) -> int:
    out = 0
    for i in s:
        out |= 1 << i
    return out


def _set(bits: int) -> frozenset[int]:
    return frozenset(i for i in range(bits.bit_length()) if bits >> i & 1)


@dataclass
class CechStrand:
    ideal: MonomialIdeal
    degree: tuple[int, ...]
    components: list[list[frozenset[int]]]
    complex: FiniteComplex

    def dims(self) -> list[int]:
        return list(self.complex.spaces)


@dataclass(frozen=True)
class Chamber:
    sign_set: frozenset[int]
    dims: dict

    def nonzero(self) -> dict:
        return {q: d for q, d in self.dims.items() if d}


class CechEngine:
    """Cached chamber-level Čech data for a squarefree monomial ideal."""

    def __init__(self, I: MonomialIdeal):
        if not I.is_squarefree:
            raise ValueError("Čech strands need squarefree generators; radicalize first")
        self.ideal = I
        self.n = I.n
        self.r = len(I.gens)
        sup = [_bits(support(g)) for g in I.gens]
        cover = [0] * (1 << self.r)
        for m in range(1, 1 << self.r):
            low = (m & -m).bit_length() - 1
            cover[m] = cover[m & (m - 1)] | sup[low]
        self.cover = cover
        self._chambers: dict[int, SubsetComplex] = {}
        self._maps: dict = {}

    def chamber_complex(self, S: int) -> SubsetComplex:
        c = self._chambers.get(S)
        if c is None:
            cover = self.cover
            c = SubsetComplex(self.r, [m for m in range(1 << self.r) if cover[m] & S == S])
            self._chambers[S] = c
        return c

    def coh_dim(self, S: int, q: int) -> int:
        if q < 0 or q > self.r:
            return 0
        return self.chamber_complex(S).complex.cohomology_dim(q)

    def coh(self, S: int, q: int):
        return self.chamber_complex(S).cohomology(q)

    def component_map(self, S_src: int, S_tgt: int, q: int, scalar=1) -> RationalMatrix:
        """Cochain-level map e_J -> scalar * e_J between chamber strands."""
        src, tgt = self.chamber_complex(S_src), self.chamber_complex(S_tgt)
        if scalar and S_tgt & ~S_src:
            raise ValueError("component map only defined into a weaker sign set")
        return subset_map(src, tgt, q, lambda m: [(m, scalar)])

    def chamber_map(self, S_src: int, S_tgt: int, q: int) -> RationalMatrix:
        """H^q at sign set S_src -> H^q at S_tgt induced by inclusion (S_tgt ⊆ S_src)."""
        key = (S_src, S_tgt, q)
        M = self._maps.get(key)
        if M is None:
            if q < 0 or q > self.r:
                M = RationalMatrix.zero(0, 0)
            else:
                chain = self.component_map(S_src, S_tgt, q)
                M = induced_on_cohomology(self.chamber_complex(S_src), self.chamber_complex(S_tgt), q, chain)
            self._maps[key] = M
        return M


@lru_cache(maxsize=256)
def _engine(n: int, gens: tuple) -> CechEngine:
    return CechEngine(MonomialIdeal(n, gens))


def engine_for(I: MonomialIdeal) -> CechEngine:
    R = I if I.is_squarefree else radical(I)
    return _engine(R.n, R.gens)


def _check_degree(I: MonomialIdeal, u: Sequence[int]) -> tuple[int, ...]:
    u = tuple(int(c) for c in u)
    if len(u) != I.n:
        raise ValueError(f"degree {u} has length {len(u)}, ring has {I.n} variables")
    return u


def cech_strand(I_rad: MonomialIdeal, u: Sequence[int]) -> CechStrand:
    if not I_rad.is_squarefree:
        raise ValueError("cech_strand needs squarefree generators; radicalize first")
    u = _check_degree(I_rad, u)
    eng = engine_for(I_rad)
    sc = eng.chamber_complex(_bits(neg(u)))
    comps = [[_set(m) for m in sc.bases[q]] for q in range(eng.r + 1)]
    return CechStrand(I_rad, u, comps, sc.complex)


def local_cohomology_dim(I: MonomialIdeal, q: int, u: Sequence[int]) -> int:
    u = _check_degree(I, u)
    return engine_for(I).coh_dim(_bits(neg(u)), q)


def _lc_task(args):
    I, q, u = args
    return local_cohomology_dim(I, q, u)


def batch_local_cohomology(I: MonomialIdeal, requests: Sequence[tuple[int, Sequence[int]]],
                           jobs: int = 1) -> list[int]:
    """Evaluate many (q, u) pieces; output order matches ``requests``."""
    tasks = [(I, q, tuple(u)) for q, u in requests]
    if jobs <= 1 or len(tasks) < 2:
        return [_lc_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_lc_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def chamber_representative(n: int, S) -> tuple[int, ...]:
    return tuple(-1 if i in S else 0 for i in range(n))


def chambers(I: MonomialIdeal) -> list[Chamber]:
    eng = engine_for(I)
    out = []
    for S in range(1 << I.n):
        dims = {q: eng.coh_dim(S, q) for q in range(eng.r + 1)}
        out.append(Chamber(_set(S), dims))
    return out


def _proper(I: MonomialIdeal):
    if I.is_zero or I.is_unit:
        raise ValueError("need a proper nonzero ideal")


def lcd(I: MonomialIdeal) -> int:
    _proper(I)
    return max(q for ch in chambers(I) for q, d in ch.dims.items() if d)


def min_nonvanishing_q(I: MonomialIdeal) -> int:
    _proper(I)
    return min(q for ch in chambers(I) for q, d in ch.dims.items() if d)


def nonvanishing_range(I: MonomialIdeal) -> list[int]:
    _proper(I)
    return sorted({q for ch in chambers(I) for q, d in ch.dims.items() if d})


def mult_map(I: MonomialIdeal, q: int, u: Sequence[int], a: Sequence[int]) -> RationalMatrix:
    """Multiplication by x^a as a map H^q_u -> H^q_{u+a}."""
    u = _check_degree(I, u)
    a = _check_degree(I, a)
    if any(c < 0 for c in a):
        raise ValueError("mult_map needs a nonnegative exponent")
    eng = engine_for(I)
    target = tuple(x + y for x, y in zip(u, a))
    return eng.chamber_map(_bits(neg(u)), _bits(neg(target)), q)


def derivation_map(I: MonomialIdeal, q: int, u: Sequence[int], i: int) -> RationalMatrix:
    """∂/∂x_i as a map H^q_u -> H^q_{u-e_i}; acts on x^u by the scalar u_i."""
    u = _check_degree(I, u)
    if not 0 <= i < I.n:
        raise ValueError(f"variable index {i} out of range")
    eng = engine_for(I)
    target = tuple(c - (1 if j == i else 0) for j, c in enumerate(u))
    S, T = _bits(neg(u)), _bits(neg(target))
    if q < 0 or q > eng.r:
        return RationalMatrix.zero(0, 0)
    scalar = u[i]
    src_dim, tgt_dim = eng.coh_dim(S, q), eng.coh_dim(T, q)
    if scalar == 0:
        return RationalMatrix.zero(tgt_dim, src_dim)
    # scalar != 0 leaves the sign set unchanged
    return eng.chamber_map(S, T, q).scale(scalar)
