"""Hodge, order and Ext filtrations on H^q_I(A), compared degree by degree.

The Hodge piece F_p at degree u is the whole strand when
level(u) = sum over negative u_i of (-u_i - 1) is at most p, and zero
otherwise. The order piece O_k is the common kernel of multiplication by
the generators of I^{k+1}; the Ext piece E_k is the image of
Ext^q(A/I^{k+1}, A). Both live inside the same Čech model (built on rad(I)),
so they are compared as honest subspaces.

Box sweeps group the degrees of [-B, B]^n into classes that provably share
every computed quantity: nonnegative coordinates only matter through their
sign, and a coordinate at or below -C (C past every exponent in play and
past k_max + 1) behaves like -C. Each class is evaluated once and carries
the number of box degrees it stands for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from .cech import _bits, derivation_map, engine_for, local_cohomology_dim
from .linalg import (RationalMatrix, Vector, kernel_basis, row_reduce, subspace_eq,
                     subspace_leq)
from .monomial import (MonomialIdeal, add_variables, codim, ideal_leq, ideal_power,
                       ideal_sum, is_complete_intersection, jk_ideal, mono_pow, neg,
                       radical, scheme_ideal)
from .resolutions import ExtImage, _patterns, ext_colimit_image


def hodge_level(u: Sequence[int]) -> int:
    return sum(-c - 1 for c in u if c < 0)


def hodge_dim(I: MonomialIdeal, q: int, u: Sequence[int], p: int) -> int:
    if p < 0:
        return 0
    if hodge_level(u) > p:
        return 0
    return local_cohomology_dim(I, q, u)


def _full_basis(d: int) -> list[Vector]:
    return row_reduce([tuple(1 if i == j else 0 for j in range(d)) for i in range(d)], d)


_ORDER_CACHE: dict = {}


def order_subspace(I: MonomialIdeal, q: int, u: Sequence[int], k: int) -> list[Vector]:
    """O_k at degree u: classes killed by every generator of I_scheme^{k+1}."""
    u = tuple(u)
    eng = engine_for(I)
    S = _bits(neg(u))
    if q < 0 or q > eng.r:
        return []
    d = eng.coh_dim(S, q)
    if k < 0 or d == 0:
        return []
    J = ideal_power(scheme_ideal(I), k + 1)
    targets = frozenset(_patterns(J.gens, u))
    key = (eng.ideal.gens, eng.n, S, targets, q)
    hit = _ORDER_CACHE.get(key)
    if hit is None:
        ent = {}
        row = 0
        for T in sorted(targets):
            M = eng.chamber_map(S, T, q)
            for (i, j), v in M.entries.items():
                ent[(row + i, j)] = v
            row += M.rows
        hit = kernel_basis(RationalMatrix(row, d, ent))
        _ORDER_CACHE[key] = hit
    return hit


_EXT_CACHE: dict = {}


def ext_image(I: MonomialIdeal, q: int, u: Sequence[int], k: int, tcap: int | None = None) -> ExtImage:
    """Cached ``ext_colimit_image`` for the scheme structure of I."""
    u = tuple(u)
    Is = scheme_ideal(I)
    J = ideal_power(Is, k + 1)
    key = (Is.gens, Is.n, _bits(neg(u)), tuple(_patterns(J.gens, u)), q, k)
    hit = _EXT_CACHE.get(key)
    if hit is None:
        hit = ext_colimit_image(Is, q, u, k, tcap=tcap)
        _EXT_CACHE[key] = hit
    return hit


def ext_subspace(I: MonomialIdeal, q: int, u: Sequence[int], k: int, tcap: int | None = None) -> list[Vector]:
    if k < 0:
        return []
    return ext_image(I, q, u, k, tcap).subspace


# --- box sweeps -------------------------------------------------------------

def clip_constant(I: MonomialIdeal, k_max: int) -> int:
    M = (k_max + 1) * max(1, scheme_ideal(I).max_exponent())
    return max(M + 1, k_max + 2)


def degree_classes(n: int, B: int, C: int):
    """Yield (representative, multiplicity) covering [-B, B]^n exactly once."""
    per = [(0, B + 1)]
    for v in range(1, B + 1):
        if v < C:
            per.append((-v, 1))
        else:
            per.append((-C, B - C + 1))
            break
    for combo in product(per, repeat=n):
        rep = tuple(c for c, _ in combo)
        mult = 1
        for _, m in combo:
            mult *= m
        yield rep, mult


@dataclass
class Cell:
    degree: tuple[int, ...]
    multiplicity: int
    level: int
    strand_dim: int
    F: list[int]
    O: list[list[Vector]]
    E: list[list[Vector]]
    ext_dims: list[int]
    koszul_t: list[int]

    @property
    def O_dims(self) -> list[int]:
        return [len(b) for b in self.O]

    @property
    def E_dims(self) -> list[int]:
        return [len(b) for b in self.E]

    def F_basis(self, k: int) -> list[Vector]:
        return _full_basis(self.strand_dim) if self.F[k] else []


@dataclass
class FiltrationTable:
    ideal: MonomialIdeal
    q: int
    box: int
    k_max: int
    cells: list[Cell]
    verdicts: dict = field(default_factory=dict)
    observations: dict = field(default_factory=dict)

    @property
    def degrees_covered(self) -> int:
        return sum(c.multiplicity for c in self.cells)


def default_box(I: MonomialIdeal, k_max: int) -> int:
    return k_max + 1 + I.max_degree()


def compare_filtrations(I: MonomialIdeal, q: int, B: int | None = None, k_max: int = 2,
                        with_ext: bool = True, tcap: int | None = None) -> FiltrationTable:
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if B is None:
        B = default_box(I, k_max)
    if B < 1:
        raise ValueError("box radius must be >= 1")
    eng = engine_for(I)
    C = clip_constant(I, k_max)
    cells: list[Cell] = []
    for u, mult in degree_classes(I.n, B, C):
        d = eng.coh_dim(_bits(neg(u)), q)
        if d == 0:
            continue
        lvl = hodge_level(u)
        F = [d if lvl <= k else 0 for k in range(k_max + 1)]
        O = [order_subspace(I, q, u, k) for k in range(k_max + 1)]
        if with_ext:
            imgs = [ext_image(I, q, u, k, tcap) for k in range(k_max + 1)]
            E = [im.subspace for im in imgs]
            ext_dims = [im.ext_dim for im in imgs]
            ts = [im.certificate.t for im in imgs]
        else:
            E, ext_dims, ts = [], [], []
        cells.append(Cell(u, mult, lvl, d, F, O, E, ext_dims, ts))
    table = FiltrationTable(I, q, B, k_max, cells)
    _verdicts(table, with_ext)
    return table


def _verdicts(t: FiltrationTable, with_ext: bool):
    K = t.k_max
    I = t.ideal
    rng = range(K + 1)
    f_in_o = all(not c.F[k] or len(c.O[k]) == c.strand_dim for c in t.cells for k in rng)
    eq = [all((c.F[k] == len(c.O[k])) for c in t.cells) for k in rng]
    upto = -1
    for k in rng:
        if not eq[k]:
            break
        upto = k
    o_mono = all(subspace_leq(c.O[k], c.O[k + 1], c.strand_dim) for c in t.cells for k in range(K))
    v = {"F_in_O": f_in_o, "F_eq_O": eq, "F_eq_O_upto": upto, "O_monotone": o_mono,
         "IF_in_F": _check_inclusion_filtration(t)}
    try:
        c0 = codim(I)
    except ValueError:
        c0 = None
    if with_ext:
        v["E_in_O"] = all(subspace_leq(c.E[k], c.O[k], c.strand_dim) for c in t.cells for k in rng)
        v["F0_in_E0"] = all(not c.F[0] or len(c.E[0]) == c.strand_dim for c in t.cells)
        v["E_monotone"] = all(subspace_leq(c.E[k], c.E[k + 1], c.strand_dim) for c in t.cells for k in range(K))
        v["F0_eq_E0"] = all(c.F[0] == len(c.E[0]) for c in t.cells)
        if t.q == c0:
            v["E_eq_O_at_codim"] = all(subspace_eq(c.E[k], c.O[k], c.strand_dim) for c in t.cells for k in rng)
            v["ext_injective_at_codim"] = all(len(c.E[k]) == c.ext_dims[k] for c in t.cells for k in rng)
        # open question: F_k ⊆ E_k above the codimension, recorded only
        t.observations["F_in_E"] = [all(not c.F[k] or len(c.E[k]) == c.strand_dim for c in t.cells)
                                    for k in rng]
        t.observations["E_eq_O"] = [all(subspace_eq(c.E[k], c.O[k], c.strand_dim) for c in t.cells)
                                    for k in rng]
        t.observations["max_koszul_t"] = max((x for c in t.cells for x in c.koszul_t), default=0)
    Is = scheme_ideal(I)
    if (t.q == c0 and Is.is_squarefree and is_complete_intersection(Is) and len(Is.gens) == c0
            and t.box >= default_box(I, t.k_max)):
        # reduced complete intersection: equality at k forces equality below k; smaller
        # boxes can show spurious equality at high k
        v["downward_closed"] = all(not eq[k] or all(eq[:k]) for k in rng)
    t.verdicts = v


def _check_inclusion_filtration(t: FiltrationTable) -> bool:
    """I · F_p ⊆ F_{p-1}, checked on every cell for every radical generator."""
    eng = engine_for(t.ideal)
    for c in t.cells:
        S = _bits(neg(c.degree))
        for p in range(t.k_max + 1):
            if not c.F[p]:
                continue
            for g in eng.ideal.gens:
                tgt = tuple(x + y for x, y in zip(c.degree, g))
                M = eng.chamber_map(S, _bits(neg(tgt)), t.q)
                if M.is_zero():
                    continue
                if p - 1 < 0 or hodge_level(tgt) > p - 1:
                    return False
    return True


# --- singularity level and the J_k criterion ---------------------------------

@dataclass
class LevelReport:
    verified_level: int
    k_max: int
    box: int
    box_limited: bool
    downward_closed: bool
    first_failure: tuple[int, ...] | None


def singularity_level_probe(I: MonomialIdeal, B: int | None = None, k_max: int = 2) -> LevelReport:
    Is = scheme_ideal(I)
    if not is_complete_intersection(Is):
        raise ValueError("singularity level probe needs a complete intersection")
    r = len(Is.gens)
    if B is None:
        B = default_box(I, k_max)
    table = compare_filtrations(I, r, B, k_max, with_ext=False)
    eq = table.verdicts["F_eq_O"]
    level = table.verdicts["F_eq_O_upto"]
    fail = None
    if level < k_max:
        k = level + 1
        bad = [c for c in table.cells if c.F[k] != len(c.O[k])]
        fail = min(bad, key=lambda c: (c.level, tuple(-x for x in c.degree))).degree
    closed = all(not eq[k] or all(eq[:k]) for k in range(k_max + 1))
    return LevelReport(level, k_max, B, level == k_max, closed, fail)


def snc_hodge_ideal(f: Sequence[Sequence[int]], k: int) -> MonomialIdeal:
    """Hodge ideal I_k of f_1...f_r when the product is a squarefree monomial."""
    f = [tuple(m) for m in f]
    n = len(f[0])
    prod = [sum(m[i] for m in f) for i in range(n)]
    if any(e > 1 for e in prod):
        raise ValueError("the product of the equations is not a simple normal crossing divisor")
    variables = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n) if prod[i]]
    return jk_ideal(variables, k)


def jk_criterion_check(f: Sequence[Sequence[int]], k: int, I_k_f: MonomialIdeal | None = None) -> bool:
    """J_k(f) ⊆ I_k(f) + (f_1^{k+1}, ..., f_r^{k+1})."""
    f = [tuple(m) for m in f]
    if I_k_f is None:
        I_k_f = snc_hodge_ideal(f, k)
    n = len(f[0])
    powers = MonomialIdeal(n, tuple(mono_pow(m, k + 1) for m in f))
    return ideal_leq(jk_ideal(f, k), ideal_sum(I_k_f, powers))


# --- generation level and embedding shifts -------------------------------------

def _level_degrees(n: int, S: Sequence[int], excess: int, B: int):
    """Degrees with sign set S whose level is exactly ``excess``, nonneg part zero."""
    m = len(S)
    if m == 0:
        if excess == 0:
            yield tuple([0] * n)
        return
    for cut in combinations(range(excess + m - 1), m - 1):
        parts, prev = [], -1
        for c in cut + (excess + m - 1,):
            parts.append(c - prev - 1)
            prev = c
        if any(p + 1 > B for p in parts):
            continue
        u = [0] * n
        for i, p in zip(S, parts):
            u[i] = -(p + 1)
        yield tuple(u)


def generation_level_failures(I: MonomialIdeal, q: int, p: int, B: int) -> list[tuple[int, ...]]:
    """Degrees of level p+1 in the box whose strand is not reached by derivations
    from level-<=p neighbours. Nonnegative coordinates never feed a derivation
    from a lower level, so representatives with zeros there cover the box."""
    if p < 0:
        raise ValueError("generation level check needs p >= 0")
    eng = engine_for(I)
    bad = []
    for size in range(1, I.n + 1):
        for S in combinations(range(I.n), size):
            for u in _level_degrees(I.n, S, p + 1, B):
                d = eng.coh_dim(_bits(S), q)
                if d == 0:
                    continue
                cols: list[Vector] = []
                for i in range(I.n):
                    src = tuple(c + (1 if j == i else 0) for j, c in enumerate(u))
                    if hodge_level(src) > p or local_cohomology_dim(I, q, src) == 0:
                        continue
                    D = derivation_map(I, q, src, i)
                    dense = D.to_dense()
                    cols += [tuple(dense[a][b] for a in range(D.rows)) for b in range(D.cols)]
                if len(row_reduce(cols, d)) < d:
                    bad.append(u)
    return bad


def generation_level_check(I: MonomialIdeal, q: int, p: int, B: int) -> bool:
    return not generation_level_failures(I, q, p, B)


def embedding_shift_check(I: MonomialIdeal, d: int, q: int, B: int, p_max: int = 3) -> bool:
    """Hodge pieces of I + (y_1..y_d) in degree q + d against those of I in degree q."""
    if d < 1:
        raise ValueError("need at least one added variable")
    big = add_variables(radical(I), d)
    n = I.n
    per = [0] + [-v for v in range(1, B + 1)]
    for uv in product(per, repeat=n + d):
        u, v = uv[:n], uv[n:]
        big_dim = local_cohomology_dim(big, q + d, uv)
        if any(c >= 0 for c in v):
            if big_dim:
                return False
            continue
        shift = sum(-c - 1 for c in v)
        for p in range(-1, p_max + 1):
            if hodge_dim(big, q + d, uv, p) != hodge_dim(I, q, u, p - shift):
                return False
    return True


# --- complete-intersection cross-checks ----------------------------------------

def order_dim_from_generators(f: Sequence[Sequence[int]], u: Sequence[int], k: int) -> int:
    """dim O_k at u from the classes [1/f^a], a >= 1, sum a <= k + r (monomial CI)."""
    f = [tuple(m) for m in f]
    r, n = len(f), len(f[0])
    I = MonomialIdeal(n, tuple(f))
    d = local_cohomology_dim(I, r, u)
    if not d:
        return 0
    for a in product(range(1, k + 2), repeat=r):
        if sum(a) > k + r:
            continue
        shifted = [u[i] + sum(ai * fi[i] for ai, fi in zip(a, f)) for i in range(n)]
        if all(x >= 0 for x in shifted):
            return d
    return 0


def ext_graded_count(f: Sequence[Sequence[int]], u: Sequence[int], k: int) -> int:
    """sum over |b| = k of dim (A/I)_{u + sum (b_i + 1) f_i}: expected dim of Gr^E_k at u."""
    f = [tuple(m) for m in f]
    r, n = len(f), len(f[0])
    I = MonomialIdeal(n, tuple(f))
    total = 0
    for b in product(range(k + 1), repeat=r):
        if sum(b) != k:
            continue
        v = [u[i] + sum((bi + 1) * fi[i] for bi, fi in zip(b, f)) for i in range(n)]
        if all(x >= 0 for x in v) and not I.contains(v):
            total += 1
    return total
