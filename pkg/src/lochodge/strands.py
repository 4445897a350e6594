"""Cochain complexes spanned by upward-closed families of index subsets.

The Čech strand, the degree-u strand of a dualized Koszul complex and the
degree-u strand of a dualized Taylor complex all have this shape: basis
vectors e_J for admissible subsets J, with

    d(e_J) = sum over l not in J of (-1)^{#{j in J : j < l}} e_{J + l}.

Subsets are encoded as bitmasks; within a degree, basis order is by mask.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .linalg import FiniteComplex, RationalMatrix


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_indices(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def insertion_sign(mask: int, l: int) -> int:
    return -1 if popcount(mask & ((1 << l) - 1)) % 2 else 1


class SubsetComplex:
    """Cochain complex on an upward-closed family of subsets of range(r).

    With ``downward`` the family is instead a simplicial complex (with the
    empty face as augmentation) and coboundaries leaving it are dropped.
    """

    def __init__(self, r: int, admissible: Iterable[int], check: bool = False, downward: bool = False):
        self.r = r
        adm = sorted(set(admissible))
        self.bases: list[list[int]] = [[] for _ in range(r + 1)]
        for m in adm:
            self.bases[popcount(m)].append(m)
        self.index: dict[int, int] = {}
        for q in range(r + 1):
            for i, m in enumerate(self.bases[q]):
                self.index[m] = i
        diffs = []
        for q in range(r):
            ent = {}
            for col, m in enumerate(self.bases[q]):
                for l in range(r):
                    bit = 1 << l
                    if m & bit:
                        continue
                    row = self.index.get(m | bit)
                    if row is None:
                        if downward:
                            continue
                        raise ValueError("admissible family is not upward closed")
                    ent[(row, col)] = Fraction(insertion_sign(m, l))
            diffs.append(RationalMatrix(len(self.bases[q + 1]), len(self.bases[q]), ent))
        self.complex = FiniteComplex([len(b) for b in self.bases], diffs, check=check)

    def dim(self, q: int) -> int:
        return self.complex.dim(q)

    def cohomology(self, q: int):
        return self.complex.cohomology(q)

    def cohomology_dim(self, q: int) -> int:
        return self.complex.cohomology_dim(q)

    def admissible(self, mask: int) -> bool:
        return mask in self.index


def upward_closed(r: int, pred: Callable[[int], bool]) -> list[int]:
    return [m for m in range(1 << r) if pred(m)]


def subset_map(src: SubsetComplex, tgt: SubsetComplex, q: int,
               coeff: Callable[[int], list[tuple[int, int]]]) -> RationalMatrix:
    """Cochain-level matrix in degree q from a per-basis-vector rule.

    ``coeff(mask)`` lists (target_mask, scalar) images of e_mask.
    """
    ent: dict[tuple[int, int], Fraction] = {}
    for col, m in enumerate(src.bases[q] if q <= src.r else []):
        for tm, c in coeff(m):
            row = tgt.index.get(tm)
            if row is None or not c:
                continue
            ent[(row, col)] = ent.get((row, col), 0) + Fraction(c)
    return RationalMatrix(tgt.dim(q), src.dim(q), ent)


def induced_on_cohomology(src: SubsetComplex, tgt: SubsetComplex, q: int,
                          chain: RationalMatrix) -> RationalMatrix:
    """Matrix of H^q(src) -> H^q(tgt) in the chosen cohomology bases."""
    hs, ht = src.cohomology(q), tgt.cohomology(q)
    cols = [ht.coordinates(chain.apply(z)) for z in hs.reps]
    return RationalMatrix.from_columns(cols, ht.dim)
