"""Exact linear algebra over Q.

Matrices are sparse maps (row, col) -> Fraction. Elimination runs on
integer rows (denominators cleared, content divided out after every step),
so intermediate growth stays bounded; bases come back in reduced row
echelon form so equal subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(len(rows), cols, ent)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        ent = {(i, j): v for j, col in enumerate(columns) for i, v in enumerate(col) if v}
        return cls(rows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, acc)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self.entries.items():
            if v[j]:
                out[i] += a * v[j]
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.entries


def _int_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = reduce(lcm, (Fraction(v).denominator for v in row.values()), 1)
    out = {j: int(Fraction(v) * den) for j, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    return row


def _echelon(rows: Iterable[Mapping[int, Fraction]]) -> list[tuple[int, dict[int, int]]]:
    """Fraction-free forward elimination; returns (pivot column, row) pairs."""
    work = [_int_row(r) for r in rows]
    work = [r for r in work if r]
    pivots: list[tuple[int, dict[int, int]]] = []
    while work:
        col = min(min(r) for r in work)
        hits = [r for r in work if col in r]
        rest = [r for r in work if col not in r]
        # sparsest pivot row limits fill-in
        piv = min(hits, key=len)
        p = piv[col]
        for r in hits:
            if r is piv:
                continue
            a = r[col]
            new = {j: p * v for j, v in r.items()}
            for j, v in piv.items():
                nv = new.get(j, 0) - a * v
                if nv:
                    new[j] = nv
                else:
                    new.pop(j, None)
            if new:
                rest.append(_primitive(new))
        pivots.append((col, piv))
        work = rest
    pivots.sort(key=lambda t: t[0])
    return pivots


def _rref(rows: Iterable[Mapping[int, Fraction]]) -> list[tuple[int, dict[int, Fraction]]]:
    ech = _echelon(rows)
    out: list[tuple[int, dict[int, Fraction]]] = []
    for col, r in reversed(ech):
        p = r[col]
        row = {j: Fraction(v, p) for j, v in r.items()}
        for pc, prow in out:
            c = row.get(pc)
            if c:
                for j, v in prow.items():
                    nv = row.get(j, 0) - c * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        out.append((col, row))
    out.reverse()
    return out


def rank(M: RationalMatrix) -> int:
    return len(_echelon(M.row_dicts()))


def _dense(row: Mapping[int, Fraction], dim: int) -> Vector:
    v = [Fraction(0)] * dim
    for j, x in row.items():
        v[j] = Fraction(x)
    return tuple(v)


def row_reduce(vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    """Canonical RREF basis of the span of ``vectors``."""
    rows = []
    for v in vectors:
        if len(v) != dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {dim}")
        rows.append({j: Fraction(x) for j, x in enumerate(v) if x})
    return [_dense(r, dim) for _, r in _rref(rows)]


def kernel_basis(M: RationalMatrix) -> list[Vector]:
    red = _rref(M.row_dicts())
    pivot_cols = [c for c, _ in red]
    pset = set(pivot_cols)
    basis = []
    for free in range(M.cols):
        if free in pset:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for c, row in red:
            x = row.get(free)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return row_reduce(basis, M.cols)


def image_basis(M: RationalMatrix) -> list[Vector]:
    return [_dense(r, M.rows) for _, r in _rref(M.transpose().row_dicts())]


def span_dim(vectors: Sequence[Sequence], dim: int) -> int:
    rows = [{j: Fraction(x) for j, x in enumerate(v) if x} for v in vectors]
    return len(_echelon(rows))


def _check_dims(U, V, dim):
    for v in list(U) + list(V):
        if len(v) != dim:
            raise ValueError("dimension mismatch between subspaces")


def subspace_leq(U: Sequence[Sequence], V: Sequence[Sequence], dim: int | None = None) -> bool:
    """U ⊆ V for spans of basis lists."""
    if dim is None:
        dim = len((list(U) + list(V))[0]) if (U or V) else 0
    _check_dims(U, V, dim)
    return span_dim(list(V) + list(U), dim) == span_dim(V, dim)


def subspace_eq(U, V, dim: int | None = None) -> bool:
    return subspace_leq(U, V, dim) and subspace_leq(V, U, dim)


def subspace_sum(U, V, dim: int) -> list[Vector]:
    _check_dims(U, V, dim)
    return row_reduce(list(U) + list(V), dim)


def subspace_intersection(U: Sequence[Sequence], V: Sequence[Sequence], dim: int | None = None) -> list[Vector]:
    if dim is None:
        dim = len((list(U) + list(V))[0]) if (U or V) else 0
    _check_dims(U, V, dim)
    U = row_reduce(U, dim)
    V = row_reduce(V, dim)
    if not U or not V:
        return []
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    K = kernel_basis(RationalMatrix.from_columns(cols, dim))
    out = []
    for c in K:
        w = [Fraction(0)] * dim
        for a, u in zip(c[: len(U)], U):
            if a:
                for j, x in enumerate(u):
                    w[j] += a * x
        out.append(w)
    return row_reduce(out, dim)


def image_of_subspace(M: RationalMatrix, U: Sequence[Sequence]) -> list[Vector]:
    return row_reduce([M.apply(u) for u in U], M.rows)


def inverse(M: RationalMatrix) -> RationalMatrix:
    n = M.rows
    if M.cols != n:
        raise ValueError("inverse of a non-square matrix")
    rows = M.row_dicts()
    aug = [dict(r) for r in rows]
    for i in range(n):
        aug[i][n + i] = Fraction(1)
    red = _rref(aug)
    if len(red) < n or any(c >= n for c, _ in red[:n]) or [c for c, _ in red] != list(range(n)):
        raise ValueError("matrix is singular")
    ent = {}
    for i, (_, row) in enumerate(red):
        for j, v in row.items():
            if j >= n:
                ent[(i, j - n)] = v
    return RationalMatrix(n, n, ent)


def solve(M: RationalMatrix, b: Sequence) -> Vector | None:
    """One solution x of M x = b, or None if inconsistent."""
    rows = M.row_dicts()
    for i, r in enumerate(rows):
        if b[i]:
            r[M.cols] = Fraction(b[i])
    red = _rref(rows)
    x = [Fraction(0)] * M.cols
    for c, row in red:
        if c == M.cols:
            return None
        x[c] = row.get(M.cols, Fraction(0))
    return tuple(x)


def solve_many(M: RationalMatrix, bs: Sequence[Sequence]) -> list[Vector | None]:
    """``solve`` for several right-hand sides with a single elimination."""
    rows = M.row_dicts()
    for k, b in enumerate(bs):
        for i, r in enumerate(rows):
            if b[i]:
                r[M.cols + k] = Fraction(b[i])
    red = _rref(rows)
    xs: list[list[Fraction] | None] = [[Fraction(0)] * M.cols for _ in bs]
    for c, row in red:
        if c >= M.cols:
            # 0 = nonzero for every right-hand side this row still touches
            for j in row:
                xs[j - M.cols] = None
            continue
        for k in range(len(bs)):
            if xs[k] is not None:
                xs[k][c] = row.get(M.cols + k, Fraction(0))
    return [tuple(x) if x is not None else None for x in xs]


class FiniteComplex:
    """Cochain complex of finite-dimensional Q-spaces.

    ``differentials[i]`` maps space ``i`` to space ``i + 1``. The composition
    of consecutive differentials is checked to vanish exactly.
    """

    def __init__(self, spaces: Sequence[int], differentials: Sequence[RationalMatrix], check: bool = True):
        self.spaces = list(spaces)
        self.differentials = list(differentials)
        if len(self.differentials) != max(len(self.spaces) - 1, 0):
            raise ValueError("need one differential between consecutive spaces")
        for i, d in enumerate(self.differentials):
            if (d.rows, d.cols) != (self.spaces[i + 1], self.spaces[i]):
                raise ValueError(f"differential {i} has shape {d.rows}x{d.cols}")
        if check:
            for i in range(len(self.differentials) - 1):
                if not (self.differentials[i + 1] @ self.differentials[i]).is_zero():
                    raise ValueError(f"d∘d != 0 at degree {i}")
        self._coh: dict[int, CohomologyData] = {}
        self._ranks: dict[int, int] = {}

    def __len__(self):
        return len(self.spaces)

    def d(self, q: int) -> RationalMatrix:
        """Differential out of degree q (zero map past either end)."""
        if 0 <= q < len(self.differentials):
            return self.differentials[q]
        dim = self.spaces[q] if 0 <= q < len(self.spaces) else 0
        nxt = self.spaces[q + 1] if 0 <= q + 1 < len(self.spaces) else 0
        return RationalMatrix.zero(nxt, dim)

    def dim(self, q: int) -> int:
        return self.spaces[q] if 0 <= q < len(self.spaces) else 0

    def rank_of(self, q: int) -> int:
        """Rank of the differential out of degree q, cached."""
        r = self._ranks.get(q)
        if r is None:
            r = rank(self.d(q)) if 0 <= q < len(self.differentials) else 0
            self._ranks[q] = r
        return r

    def cohomology_dim(self, q: int) -> int:
        if q < 0 or q >= len(self.spaces):
            return 0
        if q in self._coh:
            return self._coh[q].dim
        return self.spaces[q] - self.rank_of(q) - self.rank_of(q - 1)

    def cohomology(self, q: int) -> "CohomologyData":
        if q not in self._coh:
            self._coh[q] = CohomologyData.build(self, q)
        return self._coh[q]


class IncrementalSpan:
    """Echelon rows kept one vector at a time; ``add`` reports independence."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, v: Sequence) -> dict[int, Fraction]:
        w = {j: Fraction(x) for j, x in enumerate(v) if x}
        while w:
            c = min(w)
            row = self.rows.get(c)
            if row is None:
                break
            a = w[c]
            for j, x in row.items():
                nv = w.get(j, 0) - a * x
                if nv:
                    w[j] = nv
                else:
                    w.pop(j, None)
        return w

    def add(self, v: Sequence) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        c = min(w)
        p = w[c]
        self.rows[c] = {j: x / p for j, x in w.items()}
        return True

    def __len__(self):
        return len(self.rows)


def cohomology_dim(C: FiniteComplex, q: int) -> int:
    if q < 0 or q >= len(C.spaces):
        if q < 0:
            raise ValueError("negative cohomological degree")
        return 0
    return C.dim(q) - rank(C.d(q)) - rank(C.d(q - 1))


@dataclass
class CohomologyData:
    """A chosen basis of H^q together with a coordinate map on cocycles."""

    ambient: int
    boundaries: list[Vector]
    reps: list[Vector]
    _coords: RationalMatrix

    @property
    def dim(self) -> int:
        return len(self.reps)

    @classmethod
    def build(cls, C: FiniteComplex, q: int) -> "CohomologyData":
        dim = C.dim(q)
        Z = kernel_basis(C.d(q))
        B = image_basis(C.d(q - 1))
        reps: list[Vector] = []
        red = IncrementalSpan()
        for b in B:
            red.add(b)
        for z in Z:
            if red.add(z):
                reps.append(z)
        basis = B + reps
        coords = _left_inverse(basis, dim) if basis else RationalMatrix.zero(0, dim)
        return cls(dim, B, reps, coords)

    def coordinates(self, z: Sequence) -> Vector:
        """Class of the cocycle ``z`` in the basis ``reps``."""
        full = self._coords.apply(z)
        return full[len(self.boundaries):]

    def class_matrix(self, vectors: Sequence[Sequence]) -> list[Vector]:
        return [self.coordinates(v) for v in vectors]


def _left_inverse(columns: Sequence[Vector], dim: int) -> RationalMatrix:
    """L with L @ N = I for N with the given independent columns."""
    m = len(columns)
    N = RationalMatrix.from_columns(columns, dim)
    # choose m independent rows of N
    pivot_rows = [c for c, _ in _rref(N.transpose().row_dicts())]
    sub = RationalMatrix(m, m, {(a, j): N.entries[(i, j)]
                                for a, i in enumerate(pivot_rows)
                                for j in range(m) if (i, j) in N.entries})
    inv = inverse(sub)
    ent = {}
    for (a, b), v in inv.entries.items():
        ent[(a, pivot_rows[b])] = v
    return RationalMatrix(m, dim, ent)
