"""Taylor and Koszul complexes, Betti numbers, Ext strands and the Ext image
inside local cohomology.

Ext^q(A/J, A)_u is read off the degree-u strand of the dualized Taylor
complex of J: the summand dual to twist a contributes iff u + a >= 0.
Whether that holds only depends, for each generator g, on the set
{i in neg(u) : g_i < -u_i}; generators whose set is dominated by another
one's can be dropped without changing the cohomology, which keeps the
strands small even for large powers J = I^{k+1}.

The map Ext^q(A/J, A) -> H^q_I(A) is realized by lifting A/(m^t) -> A/J
(m_i the squarefree generators of rad(I), m_i^t in J) to a chain map from
the Koszul complex on the m_i^t to Taylor(J), dualizing, and composing with
the Koszul-to-Čech structure map e_J^* -> [1/m_J^t].
"""

from __future__ import annotations

import json
import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cech import _bits, engine_for
from .linalg import FiniteComplex, RationalMatrix, Vector, row_reduce, solve
from .monomial import (MonomialIdeal, divides, ideal_power, mono_lcm, mono_mul,
                       mono_pow, neg, radical, support)
from .nerve import dowker_transfer, maximal_patterns, nerve_cohomology_dim, restriction_image
from .strands import (SubsetComplex, induced_on_cohomology, insertion_sign,
                      mask_indices, popcount, subset_map)

DEFAULT_TAYLOR_CAP = 20
DEFAULT_STRAND_CAP = 18


class CapExceeded(RuntimeError):
    """A configured size or stabilization cap was hit."""


@dataclass
class MultigradedFreeComplex:
    """Free complex of Z^n-graded modules with monomial-scalar differentials.

    ``terms[i]`` lists (label, twist) in homological degree i. ``differentials[i]``
    maps degree i to degree i - 1 (i >= 1) as {(row, col): scalar}; the entry
    stands for scalar * x^(twist[col] - twist[row]).
    """

    n: int
    terms: list[list[tuple[int, tuple[int, ...]]]]
    differentials: dict[int, dict[tuple[int, int], int]]

    def __post_init__(self):
        for i, d in self.differentials.items():
            for (row, col), c in d.items():
                a_col = self.terms[i][col][1]
                a_row = self.terms[i - 1][row][1]
                if not divides(a_row, a_col):
                    raise ValueError(f"inadmissible entry in d_{i} at ({row}, {col})")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def check_d_squared(self) -> bool:
        for i in range(2, len(self.terms)):
            lo, hi = self.differentials.get(i - 1, {}), self.differentials.get(i, {})
            by_row: dict[int, list[tuple[int, int]]] = {}
            for (r, c), v in lo.items():
                by_row.setdefault(c, []).append((r, v))
            acc: dict[tuple[int, int], int] = {}
            for (mid, col), v in hi.items():
                for row, w in by_row.get(mid, []):
                    acc[(row, col)] = acc.get((row, col), 0) + v * w
            if any(acc.values()):
                return False
        return True

    def dual_strand(self, u: Sequence[int]):
        """Degree-u strand of Hom(F, A) as (bases, cochain matrices)."""
        keep = [[j for j, (_, a) in enumerate(t) if all(x + y >= 0 for x, y in zip(u, a))]
                for t in self.terms]
        pos = [{j: p for p, j in enumerate(k)} for k in keep]
        mats = []
        for i in range(1, len(self.terms)):
            ent = {}
            for (row, col), v in self.differentials.get(i, {}).items():
                if row in pos[i - 1] and col in pos[i]:
                    ent[(pos[i][col], pos[i - 1][row])] = Fraction(v)
            mats.append(RationalMatrix(len(keep[i]), len(keep[i - 1]), ent))
        return keep, mats


def _subset_terms(r: int, twist) -> list[list[tuple[int, tuple[int, ...]]]]:
    terms: list[list] = [[] for _ in range(r + 1)]
    for m in range(1 << r):
        terms[popcount(m)].append((m, twist(m)))
    return terms


def _subset_differentials(terms, r):
    diffs = {}
    index = [{lab: j for j, (lab, _) in enumerate(t)} for t in terms]
    for i in range(1, r + 1):
        ent = {}
        for col, (m, _) in enumerate(terms[i]):
            for p, l in enumerate(mask_indices(m)):
                ent[(index[i - 1][m & ~(1 << l)], col)] = -1 if p % 2 else 1
        diffs[i] = ent
    return diffs


def taylor_complex(I: MonomialIdeal, cap: int = DEFAULT_TAYLOR_CAP) -> MultigradedFreeComplex:
    s = len(I.gens)
    if s > cap:
        raise CapExceeded(f"Taylor complex on {s} generators exceeds the cap of {cap}")
    lcms = [(0,) * I.n] * (1 << s)
    for m in range(1, 1 << s):
        low = (m & -m).bit_length() - 1
        lcms[m] = mono_lcm(lcms[m & (m - 1)], I.gens[low])
    terms = _subset_terms(s, lambda m: lcms[m])
    return MultigradedFreeComplex(I.n, terms, _subset_differentials(terms, s))


def koszul_complex(f: Sequence[Sequence[int]]) -> MultigradedFreeComplex:
    f = [tuple(g) for g in f]
    r, n = len(f), len(f[0])

    def twist(m):
        a = (0,) * n
        for j in mask_indices(m):
            a = mono_mul(a, f[j])
        return a

    terms = _subset_terms(r, twist)
    return MultigradedFreeComplex(n, terms, _subset_differentials(terms, r))


# --- Betti numbers ---------------------------------------------------------

@dataclass
class BettiTable:
    n: int
    entries: dict[tuple[int, tuple[int, ...]], int]

    def totals(self) -> list[int]:
        top = max((i for i, _ in self.entries), default=0)
        out = [0] * (top + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    @property
    def pd(self) -> int:
        return max((i for (i, _), b in self.entries.items() if b), default=0)

    def graded(self) -> list[list[int]]:
        """Standard table: row j, column i holds sum of beta_{i, b} with |b| = i + j."""
        rows: dict[int, dict[int, int]] = {}
        for (i, b), v in self.entries.items():
            rows.setdefault(sum(b) - i, {})[i] = rows.get(sum(b) - i, {}).get(i, 0) + v
        width = self.pd + 1
        return [[rows.get(j, {}).get(i, 0) for i in range(width)] for j in sorted(rows)]


def _cancel(group: dict[int, list[int]], d: dict[int, dict[int, dict[int, Fraction]]],
            reverse: bool) -> dict[int, int]:
    """Gaussian elimination of unit entries in a scalar chain complex."""
    alive = {i: set(labels) for i, labels in group.items()}
    while True:
        found = None
        degrees = sorted(d, reverse=reverse)
        for i in degrees:
            cols = sorted(d[i], reverse=reverse)
            for sigma in cols:
                if sigma not in alive.get(i, ()):
                    continue
                rows = sorted((t for t, v in d[i][sigma].items() if v and t in alive.get(i - 1, ())),
                              reverse=reverse)
                if rows:
                    found = (i, sigma, rows[0])
                    break
            if found:
                break
        if not found:
            break
        i, sigma, tau = found
        c = d[i][sigma][tau]
        # columns of d_i that hit tau get corrected by the sigma column
        for pi in list(d[i]):
            if pi == sigma or pi not in alive[i]:
                continue
            a = d[i][pi].get(tau)
            if not a:
                continue
            f = a / c
            col = d[i][pi]
            for rho, v in d[i][sigma].items():
                nv = col.get(rho, 0) - f * v
                if nv:
                    col[rho] = nv
                else:
                    col.pop(rho, None)
        alive[i].discard(sigma)
        alive[i - 1].discard(tau)
        d[i].pop(sigma, None)
        for col in d[i].values():
            col.pop(tau, None)
        if i - 1 in d:
            d[i - 1].pop(tau, None)
        if i + 1 in d:
            for col in d[i + 1].values():
                col.pop(sigma, None)
    return {i: len(s) for i, s in alive.items() if s}


def betti_numbers(I: MonomialIdeal, reverse: bool = False, cap: int = DEFAULT_TAYLOR_CAP) -> BettiTable:
    """Multigraded Betti numbers of A/I by minimizing the Taylor complex."""
    T = taylor_complex(I, cap)
    groups: dict[tuple[int, ...], dict[int, list[int]]] = {}
    for i, terms in enumerate(T.terms):
        for lab, a in terms:
            groups.setdefault(a, {}).setdefault(i, []).append(lab)
    entries: dict[tuple[int, tuple[int, ...]], int] = {}
    for a, group in groups.items():
        d: dict[int, dict[int, dict[int, Fraction]]] = {}
        for i in group:
            if i == 0:
                continue
            cols = {}
            for sigma in group[i]:
                col = {}
                for l in mask_indices(sigma):
                    tau = sigma & ~(1 << l)
                    if tau in group.get(i - 1, ()):
                        col[tau] = Fraction(insertion_sign(tau, l))
                cols[sigma] = col
            d[i] = cols
        for i, b in _cancel(group, d, reverse).items():
            entries[(i, a)] = b
    return BettiTable(I.n, dict(sorted(entries.items())))


def tor_dim_koszul(I: MonomialIdeal, i: int, b: Sequence[int]) -> int:
    """dim Tor_i(A/I, Q)_b from the Koszul complex on the variables (oracle)."""
    b = tuple(b)
    n = I.n

    def alive(F):
        c = tuple(x - (1 if (F >> j) & 1 else 0) for j, x in enumerate(b))
        return all(x >= 0 for x in c) and not I.contains(c)

    def basis(k):
        return [F for F in range(1 << n) if popcount(F) == k and alive(F)]

    def dmat(k):
        src, tgt = basis(k), basis(k - 1)
        pos = {F: p for p, F in enumerate(tgt)}
        ent = {}
        for col, F in enumerate(src):
            for p, j in enumerate(mask_indices(F)):
                G = F & ~(1 << j)
                if G in pos:
                    ent[(pos[G], col)] = -1 if p % 2 else 1
        return RationalMatrix(len(tgt), len(src), ent)

    from .linalg import rank
    dim = len(basis(i))
    r_out = rank(dmat(i)) if i >= 1 else 0
    r_in = rank(dmat(i + 1)) if i + 1 <= n else 0
    return dim - r_out - r_in


def proj_dim(I: MonomialIdeal) -> int:
    """Projective dimension of A/I."""
    return betti_numbers(I).pd


def depth_quotient(I: MonomialIdeal) -> int:
    return I.n - proj_dim(I)


# --- Ext strands -----------------------------------------------------------

def _patterns(gens: Sequence[Sequence[int]], u: Sequence[int]) -> list[int]:
    """For each generator g, bitmask of {i in neg(u) : g_i < -u_i}."""
    out = []
    for g in gens:
        p = 0
        for i, c in enumerate(u):
            if c < 0 and g[i] < -c:
                p |= 1 << i
        out.append(p)
    return out


def _maximal_representatives(pats: Sequence[int]) -> list[int]:
    """Indices of the first generator realizing each inclusion-maximal pattern."""
    distinct: dict[int, int] = {}
    for j, p in enumerate(pats):
        distinct.setdefault(p, j)
    keep = [p for p in distinct if not any(q != p and p & q == p for q in distinct)]
    return sorted(distinct[p] for p in keep)


@dataclass
class ExtStrand:
    """Degree-u strand of the dualized Taylor complex on ``generators``."""

    generators: list[tuple[int, ...]]
    degree: tuple[int, ...]
    complex: SubsetComplex

    def dim(self, q: int) -> int:
        if q < 0 or q > self.complex.r:
            return 0
        return self.complex.cohomology_dim(q)

    def basis(self, q: int) -> list[Vector]:
        if q < 0 or q > self.complex.r:
            return []
        return self.complex.cohomology(q).reps


def _ext_complex(gens, u, cap) -> SubsetComplex:
    S = _bits(neg(u))
    if len(gens) > cap:
        raise CapExceeded(f"Ext strand on {len(gens)} generators exceeds the cap of {cap}")
    pats = _patterns(gens, u)
    s = len(gens)
    inter = [S] * (1 << s)
    for m in range(1, 1 << s):
        low = (m & -m).bit_length() - 1
        inter[m] = inter[m & (m - 1)] & pats[low]
    return SubsetComplex(s, [m for m in range(1 << s) if inter[m] == 0])


def ext_strand(I_scheme: MonomialIdeal, m: int, q: int, u: Sequence[int], reduce: bool = True,
               cap: int = DEFAULT_STRAND_CAP) -> tuple[int, list[Vector], ExtStrand]:
    """dim Ext^q(A/I^m, A)_u with a cocycle basis in dual-Taylor coordinates.

    With ``reduce`` the Taylor complex is taken on representatives of the
    maximal patterns only (same cohomology); otherwise on all generators.
    """
    u = tuple(u)
    if len(u) != I_scheme.n:
        raise ValueError("degree length does not match the ring")
    J = ideal_power(I_scheme, m)
    gens = list(J.gens)
    if reduce:
        gens = [gens[j] for j in _maximal_representatives(_patterns(gens, u))]
    strand = ExtStrand(gens, u, _ext_complex(gens, u, cap))
    return strand.dim(q), strand.basis(q), strand


# --- Koszul model and comparison lifts --------------------------------------

@dataclass
class KoszulModel:
    t: int
    degree: tuple[int, ...]
    complex: SubsetComplex
    cech: SubsetComplex

    def dim(self, q: int) -> int:
        if q < 0 or q > self.complex.r:
            return 0
        return self.complex.cohomology_dim(q)

    def basis(self, q: int) -> list[Vector]:
        return self.complex.cohomology(q).reps if 0 <= q <= self.complex.r else []

    def structure_chain(self, q: int) -> RationalMatrix:
        """e_J^* -> class of 1/m_J^t, i.e. the basis vector of the same J."""
        return subset_map(self.complex, self.cech, q, lambda m: [(m, 1)])

    def structure_map(self, q: int) -> RationalMatrix:
        return induced_on_cohomology(self.complex, self.cech, q, self.structure_chain(q))

    def is_chain_map(self) -> bool:
        for q in range(self.complex.r):
            lhs = self.cech.complex.d(q) @ self.structure_chain(q)
            rhs = self.structure_chain(q + 1) @ self.complex.complex.d(q)
            if (lhs.entries != rhs.entries):
                return False
        return True

    def dims_match_cech(self) -> bool:
        return all(self.dim(q) == self.cech.cohomology_dim(q) for q in range(self.complex.r + 1))


def koszul_model(I_rad: MonomialIdeal, t: int, q: int, u: Sequence[int]):
    """Dualized Koszul complex on (m_1^t, ..., m_r^t) at degree u.

    Returns (dimension, cohomology basis, model); ``model.structure_map(q)``
    is the induced map into the Čech strand cohomology at u.
    """
    if t < 1:
        raise ValueError("Koszul exponent must be >= 1")
    if not I_rad.is_squarefree:
        raise ValueError("koszul_model needs squarefree generators")
    model = _model(I_rad, t, tuple(u))
    return model.dim(q), model.basis(q), model


def _model(I_rad: MonomialIdeal, t: int, u: tuple[int, ...]) -> KoszulModel:
    # m_J^t reaches -u_i iff t * #{j in J : x_i | m_j} >= -u_i
    need = tuple(-(c // t) if c < 0 else 0 for c in u)
    cech = engine_for(I_rad).chamber_complex(_bits(neg(u)))
    return KoszulModel(t, u, _koszul_strand(I_rad.n, I_rad.gens, need), cech)


@lru_cache(maxsize=4096)
def _koszul_strand(n: int, gens: tuple, need: tuple) -> SubsetComplex:
    r = len(gens)
    cols = [[j for j, g in enumerate(gens) if g[i]] for i in range(n)]

    def admissible(mask):
        return all(sum(1 for j in cols[i] if mask >> j & 1) >= h for i, h in enumerate(need) if h)

    return SubsetComplex(r, [m for m in range(1 << r) if admissible(m)])


def _perm_sign(seq: Sequence[int]) -> int:
    sign, seq = 1, list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass
class ChainMap:
    """Chain map between two MultigradedFreeComplexes, per homological degree.

    ``maps[i]`` is {(target_index, source_index): scalar}; the entry stands for
    scalar * x^(twist_source - twist_target).
    """

    source: MultigradedFreeComplex
    target: MultigradedFreeComplex
    maps: dict[int, dict[tuple[int, int], Fraction]]

    def is_chain_map(self) -> bool:
        S, T = self.source, self.target
        for i in range(1, len(S.terms)):
            lhs: dict = {}
            for (tr, sc), v in self.maps.get(i, {}).items():
                for (tr2, tc), w in T.differentials.get(i, {}).items():
                    if tc == tr:
                        lhs[(tr2, sc)] = lhs.get((tr2, sc), 0) + w * v
            rhs: dict = {}
            for (sr, sc), w in S.differentials.get(i, {}).items():
                for (tr, sc2), v in self.maps.get(i - 1, {}).items():
                    if sc2 == sr:
                        rhs[(tr, sc)] = rhs.get((tr, sc), 0) + v * w
            keys = set(lhs) | set(rhs)
            if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
                return False
        return True


def comparison_lift(source: MultigradedFreeComplex, target: MultigradedFreeComplex) -> ChainMap:
    """Lift of A/(source ideal) -> A/(target ideal) as a chain map source -> target.

    Unknown scalars sit on monomially admissible entries; they are solved for
    degree by degree. Any solution is accepted.
    """
    for _, a in source.terms[1]:
        if not any(divides(b, a) for _, b in target.terms[1]):
            raise ValueError(f"source generator {a} is not in the target ideal")
    maps: dict[int, dict[tuple[int, int], Fraction]] = {0: {(0, 0): Fraction(1)}}
    top = min(source.length, target.length)
    for i in range(1, source.length + 1):
        if i > top:
            # target has no term in this degree; the zero map must work
            maps[i] = {}
            continue
        unknowns = [(tj, sj) for sj, (_, a) in enumerate(source.terms[i])
                    for tj, (_, b) in enumerate(target.terms[i]) if divides(b, a)]
        uidx = {k: p for p, k in enumerate(unknowns)}
        # equation rows: (target row in degree i-1, source column in degree i)
        rows: dict[tuple[int, int], dict[int, Fraction]] = {}
        rhs: dict[tuple[int, int], Fraction] = {}
        for (tr, tc), w in target.differentials.get(i, {}).items():
            for sj in range(len(source.terms[i])):
                k = uidx.get((tc, sj))
                if k is not None:
                    rows.setdefault((tr, sj), {})
                    rows[(tr, sj)][k] = rows[(tr, sj)].get(k, 0) + w
        for (sr, sc), w in source.differentials.get(i, {}).items():
            for (tr, sc2), v in maps[i - 1].items():
                if sc2 == sr:
                    rhs[(tr, sc)] = rhs.get((tr, sc), 0) + v * w
        keys = sorted(set(rows) | set(rhs))
        M = RationalMatrix(len(keys), len(unknowns),
                           {(p, k): v for p, key in enumerate(keys) for k, v in rows.get(key, {}).items()})
        b = [rhs.get(key, Fraction(0)) for key in keys]
        x = solve(M, b)
        if x is None:
            raise RuntimeError(f"comparison lift has no solution in degree {i}; this is a bug")
        maps[i] = {unknowns[p]: v for p, v in enumerate(x) if v}
    return ChainMap(source, target, maps)


# --- Ext colimit image -------------------------------------------------------

def _cache_dir() -> Path | None:
    d = os.environ.get("LOCHODGE_CACHE_DIR")
    return Path(d) if d else None


_WITNESS_CACHE: dict = {}


def witness_map(rad_gens: Sequence[tuple[int, ...]], J: MonomialIdeal, t: int) -> list[int]:
    """Index into J.gens of the lexicographically smallest divisor of each m_i^t."""
    key = (tuple(rad_gens), J.gens, t)
    hit = _WITNESS_CACHE.get(key)
    if hit is not None:
        return hit
    path = None
    cdir = _cache_dir()
    if cdir is not None:
        digest = hashlib.sha256(json.dumps([list(map(list, key[0])), list(map(list, key[1])), t]).encode()).hexdigest()
        path = cdir / f"lift-{digest[:24]}.json"
        if path.exists():
            hit = json.loads(path.read_text())
            _WITNESS_CACHE[key] = hit
            return hit
    out = []
    for m in rad_gens:
        w = J.witness(mono_pow(m, t))
        if w is None:
            raise ValueError(f"m^{t} is not in the ideal")
        out.append(J.gens.index(w))
    _WITNESS_CACHE[key] = out
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(out))
    return out


def witness_lift(koszul: MultigradedFreeComplex, taylor: MultigradedFreeComplex,
                 witnesses: Sequence[int]) -> ChainMap:
    """Closed-form lift e_J -> sign * x^(...) e_{pi(J)} (zero when pi collapses J)."""
    tindex = [{lab: j for j, (lab, _) in enumerate(t)} for t in taylor.terms]
    maps = {}
    for i, terms in enumerate(koszul.terms):
        ent = {}
        for sj, (J, _) in enumerate(terms):
            img = [witnesses[j] for j in mask_indices(J)]
            if len(set(img)) < len(img):
                continue
            sigma = 0
            for x in img:
                sigma |= 1 << x
            ent[(tindex[i][sigma], sj)] = Fraction(_perm_sign(img))
        maps[i] = ent
    return ChainMap(koszul, taylor, maps)


@lru_cache(maxsize=1024)
def minimal_koszul_exponent(I_rad: MonomialIdeal, J: MonomialIdeal) -> int:
    for t in range(1, 64 * max(1, J.max_exponent()) + 2):
        if all(J.contains(mono_pow(m, t)) for m in I_rad.gens):
            return t
    raise ValueError("no power of the radical generators lies in the ideal")


@dataclass
class StabilizationCertificate:
    t: int
    tried: list[int]
    koszul_dims: list[int]
    cech_dims: list[int]
    generators_used: int

    def as_dict(self) -> dict:
        return {"t": self.t, "tried": self.tried, "koszul_dims": self.koszul_dims,
                "cech_dims": self.cech_dims, "taylor_generators": self.generators_used}


@dataclass
class ExtImage:
    q: int
    degree: tuple[int, ...]
    k: int
    subspace: list[Vector]
    ext_dim: int
    cech_dim: int
    certificate: StabilizationCertificate

    @property
    def dim(self) -> int:
        return len(self.subspace)

    @property
    def injective(self) -> bool:
        return self.dim == self.ext_dim


def _stabilize(R: MonomialIdeal, J: MonomialIdeal, q: int, u: tuple[int, ...], k: int,
               tcap: int | None, scheme_degree: int):
    t0 = minimal_koszul_exponent(R, J)
    if tcap is None:
        tcap = 8 * (k + 1) * max(1, scheme_degree)
    tcap = max(tcap, t0)
    tried = []
    t = t0
    while True:
        tried.append(t)
        model = _model(R, t, u)
        if model.dims_match_cech():
            return t, tried, model
        if t >= tcap:
            raise CapExceeded(f"Koszul model did not stabilize at degree {u} up to t={tcap}")
        t = min(2 * t, tcap)


def ext_colimit_image(I_scheme: MonomialIdeal, q: int, u: Sequence[int], k: int,
                      tcap: int | None = None, cap: int = DEFAULT_STRAND_CAP,
                      route: str = "nerve") -> ExtImage:
    """Image of Ext^q(A/I^{k+1}, A)_u in the Čech model of H^q_I(A)_u.

    ``route="nerve"`` computes the image on the nerves of the pattern covers
    (see ``lochodge.nerve``); ``route="witness"`` pushes dual Taylor cocycles
    through the witness lift and the Koszul model. Both return the same
    subspace; the witness route is exponential in the number of patterns.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if route not in ("nerve", "witness"):
        raise ValueError(f"unknown route {route!r}")
    u = tuple(u)
    if len(u) != I_scheme.n:
        raise ValueError("degree length does not match the ring")
    R = radical(I_scheme)
    eng = engine_for(R)
    J = ideal_power(I_scheme, k + 1)
    t, tried, model = _stabilize(R, J, q, u, k, tcap, I_scheme.max_degree())
    pats = _patterns(J.gens, u)
    cert = StabilizationCertificate(t, tried,
                                    [model.dim(p) for p in range(eng.r + 1)],
                                    [model.cech.cohomology_dim(p) for p in range(eng.r + 1)],
                                    len(maximal_patterns(pats)))
    cech = model.cech
    if q < 0 or q > eng.r:
        return ExtImage(q, u, k, [], 0, 0, cert)
    cech_dim = cech.cohomology_dim(q)
    if route == "nerve":
        sub, ext_dim = _nerve_image(R, J, q, u, pats, cech)
    else:
        sub, ext_dim = _witness_image(R, J, q, u, t, model, cap)
    return ExtImage(q, u, k, sub, ext_dim, cech_dim, cert)


def _nerve_image(R, J, q, u, pats, cech):
    S = _bits(neg(u))
    if not S:
        # u >= 0: both strands are full simplices with no cohomology
        return [], 0
    n = R.n
    ext_dim = nerve_cohomology_dim(n, pats, q)
    if not ext_dim or not cech.cohomology_dim(q):
        return [], ext_dim
    small = [S & ~_bits(support(m)) for m in R.gens]
    big = maximal_patterns(pats)
    if not all(any(p & b == p for b in big) for p in small):
        raise RuntimeError("Čech nerve is not contained in the Ext nerve")
    img = restriction_image(n, big, small, q - 1)
    T = dowker_transfer(n, small, q, cech)
    return row_reduce([T.apply(v) for v in img], T.rows), ext_dim


def _witness_image(R, J, q, u, t, model, cap):
    eng = engine_for(R)
    wit = witness_map(R.gens, J, t)
    pats = _patterns(J.gens, u)
    chosen = sorted(set(wit) | set(_maximal_representatives(pats)))
    pos = {j: p for p, j in enumerate(chosen)}
    gens = [J.gens[j] for j in chosen]
    taylor = _ext_complex(gens, u, cap)
    pi = [pos[j] for j in wit]

    # preimages under pi of every injective image set
    pre: dict[int, list[tuple[int, int]]] = {}
    for Jm in range(1 << eng.r):
        img = [pi[j] for j in mask_indices(Jm)]
        if len(set(img)) < len(img):
            continue
        sigma = 0
        for x in img:
            sigma |= 1 << x
        pre.setdefault(sigma, []).append((Jm, _perm_sign(img)))

    cech = model.cech
    ext_dim = taylor.cohomology_dim(q) if q <= taylor.r else 0
    if not ext_dim or not cech.cohomology_dim(q):
        return [], ext_dim
    dual_lift = subset_map(taylor, model.complex, q, lambda s: pre.get(s, []))
    chain = model.structure_chain(q) @ dual_lift
    img = induced_on_cohomology(taylor, cech, q, chain)
    dense = img.to_dense()
    cols = [tuple(dense[i][j] for i in range(img.rows)) for j in range(img.cols)]
    return row_reduce(cols, img.rows), ext_dim


def ext_image_via_solved_lift(I_scheme: MonomialIdeal, q: int, u: Sequence[int], k: int,
                              t: int | None = None) -> list[Vector]:
    """Same image as ``ext_colimit_image`` but through the full Taylor complex of
    I^{k+1} and a lift found by linear solving. Only feasible for small inputs."""
    u = tuple(u)
    R = radical(I_scheme)
    eng = engine_for(R)
    J = ideal_power(I_scheme, k + 1)
    if t is None:
        t = max(minimal_koszul_exponent(R, J), max((-c for c in u), default=1), 1)
    K = koszul_complex([mono_pow(m, t) for m in R.gens])
    T = taylor_complex(J)
    lift = comparison_lift(K, T)
    if not lift.is_chain_map():
        raise RuntimeError("solved lift is not a chain map")
    kk, kmats = K.dual_strand(u)
    tk, tmats = T.dual_strand(u)
    if q > min(K.length, T.length) or q < 0:
        return []
    # cochain-level dual map in degree q: Taylor strand -> Koszul strand -> Čech strand
    tpos = {j: p for p, j in enumerate(tk[q])}
    kpos = {j: p for p, j in enumerate(kk[q])}
    ent = {}
    for (tr, sc), v in lift.maps.get(q, {}).items():
        if tr in tpos and sc in kpos:
            ent[(kpos[sc], tpos[tr])] = v
    dual = RationalMatrix(len(kk[q]), len(tk[q]), ent)
    dims = [len(x) for x in tk]
    TC = FiniteComplex(dims, tmats)
    cech = eng.chamber_complex(_bits(neg(u)))
    kmask = [K.terms[q][j][0] for j in kk[q]]
    to_cech = RationalMatrix(cech.dim(q), len(kmask),
                             {(cech.index[m], p): Fraction(1) for p, m in enumerate(kmask)})
    chain = to_cech @ dual
    H = cech.cohomology(q)
    vecs = [H.coordinates(chain.apply(z)) for z in TC.cohomology(q).reps]
    return row_reduce(vecs, H.dim)
