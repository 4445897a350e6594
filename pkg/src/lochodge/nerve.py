"""Nerve models of covering strands.

A covering strand has basis e_J for the subsets J of range(r) whose patterns
P_j (bitmasks inside a coordinate set S) have empty common intersection. The
Čech strand of a chamber and the degree-u strand of a dualized Taylor complex
are both of this kind. The non-covering subsets form a simplicial complex D,
and H^q of the strand is the reduced cohomology of D in size grading q - 1.
By Dowker duality D has the homotopy type of the nerve

    N = {T inside S : T is contained in some P_j},

which only has |S| vertices. Maps between strands induced by pattern
inclusions become restrictions N_small -> N_big of nerve cochains, so the
image of Ext^q(A/J, A)_u in a Čech strand is computed on N alone. The one
explicit isomorphism needed, from nerve classes to Čech classes, is solved
once per chamber on the product cells sigma x T of the Dowker relation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import RationalMatrix, Vector, row_reduce, solve_many
from .strands import SubsetComplex, insertion_sign, mask_indices, popcount


def submasks(mask: int) -> list[int]:
    out, s = [], mask
    while True:
        out.append(s)
        if s == 0:
            return out
        s = (s - 1) & mask


def maximal_patterns(pats: Sequence[int]) -> list[int]:
    distinct = set(pats)
    return sorted(p for p in distinct if not any(q != p and p & q == p for q in distinct))


def nerve_complex(n: int, pats: Sequence[int]) -> SubsetComplex:
    return _nerve(n, tuple(maximal_patterns(pats)))


@lru_cache(maxsize=8192)
def _nerve(n: int, facets: tuple[int, ...]) -> SubsetComplex:
    faces = set()
    for p in facets:
        faces.update(submasks(p))
    return SubsetComplex(n, faces, downward=True)


def _boundary(mask: int) -> list[tuple[int, int]]:
    """Faces of a simplex with the sign (-1)^k for deleting its k-th smallest vertex."""
    return [(mask & ~(1 << i), -1 if k % 2 else 1) for k, i in enumerate(mask_indices(mask))]


_TRANSFER_CACHE: dict = {}


def dowker_transfer(n: int, pats: Sequence[int], q: int, cover: SubsetComplex) -> RationalMatrix:
    """Matrix from H^{q-1}(nerve) to H^q(cover) in the chosen cohomology bases.

    ``cover`` is the covering strand on range(len(pats)); its degree-q classes
    are coboundaries of cocycles on the non-covering complex D.
    """
    key = (n, tuple(pats), q)
    hit = _TRANSFER_CACHE.get(key)
    if hit is not None:
        return hit
    r = len(pats)
    p = q - 1
    nerve = nerve_complex(n, pats)
    H_nerve = nerve.cohomology(p) if 0 <= p <= n else None
    H_cover = cover.cohomology(q)
    h = H_nerve.dim if H_nerve is not None else 0
    if h != H_cover.dim:
        raise RuntimeError("nerve and covering strand disagree in dimension")
    if h == 0:
        M = RationalMatrix(H_cover.dim, 0, {})
        _TRANSFER_CACHE[key] = M
        return M

    # non-covering faces with their common pattern
    inter = {0: -1}
    for m in range(1, 1 << r):
        low = (m & -m).bit_length() - 1
        common = inter.get(m & (m - 1), 0) & pats[low]
        if common:
            inter[m] = common
    delta_faces = [m for m in inter if popcount(m) == p]
    d_index = {m: i for i, m in enumerate(delta_faces)}

    # product cells sigma x T of dimension p - 1 (equations) and p - 2 (unknowns);
    # the empty pair stands for the augmentation in dimension -1
    def cells(dim):
        if dim == -1:
            return [(0, 0)]
        out = []
        for sigma, common in inter.items():
            if not sigma:
                continue
            t_size = dim + 2 - popcount(sigma)
            if t_size < 1:
                continue
            out.extend((sigma, T) for T in submasks(common) if popcount(T) == t_size)
        return out

    eqs = cells(p - 1)
    unk = cells(p - 2) if p - 2 >= -1 else []
    w_index = {c: len(delta_faces) + i for i, c in enumerate(unk)}
    ent: dict[tuple[int, int], Fraction] = {}
    for row, (sigma, T) in enumerate(eqs):
        if sigma == 0:
            ent[(row, d_index[0])] = Fraction(1)
            continue
        if popcount(T) == 1:
            ent[(row, d_index[sigma])] = Fraction(1)
        # minus the coboundary of w, read off the cell boundary
        if popcount(sigma) == 1 and popcount(T) == 1:
            bd = [((0, 0), 1)]
        else:
            bd = []
            if popcount(sigma) > 1:
                bd += [((f, T), s) for f, s in _boundary(sigma)]
            if popcount(T) > 1:
                sgn = -1 if (popcount(sigma) - 1) % 2 else 1
                bd += [((sigma, f), sgn * s) for f, s in _boundary(T)]
        for cell, s in bd:
            col = w_index[cell]
            ent[(row, col)] = ent.get((row, col), 0) - s
    A = RationalMatrix(len(eqs), len(delta_faces) + len(unk), ent)

    rhs = []
    for c in H_nerve.reps:
        b = []
        for sigma, T in eqs:
            if sigma == 0:
                b.append(c[nerve.index[0]])
            elif popcount(sigma) == 1:
                b.append(c[nerve.index[T]])
            else:
                b.append(0)
        rhs.append(b)
    cols = []
    for x in solve_many(A, rhs):
        if x is None:
            raise RuntimeError("nerve cocycle has no preimage on the covering side")
        z = [Fraction(0)] * cover.dim(q)
        for j, J in enumerate(cover.bases[q]):
            acc = Fraction(0)
            for l in mask_indices(J):
                face = J & ~(1 << l)
                i = d_index.get(face)
                if i is not None and x[i]:
                    acc += insertion_sign(face, l) * x[i]
            z[j] = acc
        cols.append(H_cover.coordinates(z))
    M = RationalMatrix.from_columns(cols, H_cover.dim)
    _TRANSFER_CACHE[key] = M
    return M


def restriction_image(n: int, big: Sequence[int], small: Sequence[int], p: int) -> list[Vector]:
    """Image of H^p(N_big) -> H^p(N_small) in the cohomology coordinates of N_small."""
    Nb, Ns = nerve_complex(n, big), nerve_complex(n, small)
    if not 0 <= p <= n:
        return []
    Hs = Ns.cohomology(p)
    if not Hs.dim:
        return []
    Hb = Nb.cohomology(p)
    vecs = []
    for z in Hb.reps:
        w = [Fraction(0)] * Ns.dim(p)
        for i, T in enumerate(Nb.bases[p]):
            j = Ns.index.get(T)
            if j is not None:
                w[j] = z[i]
        vecs.append(Hs.coordinates(w))
    return row_reduce(vecs, Hs.dim)


def nerve_cohomology_dim(n: int, pats: Sequence[int], q: int) -> int:
    """dim H^q of the covering strand with these patterns (S nonempty)."""
    if not 0 <= q - 1 <= n:
        return 0
    return nerve_complex(n, pats).cohomology_dim(q - 1)
