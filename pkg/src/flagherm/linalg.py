"""Small exact linear algebra over ExactScalar (row reduction, kernels, solves)."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .rootsys import AlgebraVector, RootSystem
from .scalars import ONE, ZERO, ExactScalar

Vec = List[ExactScalar]


def to_coords(rs: RootSystem, v: AlgebraVector) -> Vec:
    """Coordinates (Cartan part, then X_alpha in canonical root order)."""
    out = list(v.cartan)
    out.extend(v.roots.get(r, ZERO) for r in rs.roots)
    return out


def from_coords(rs: RootSystem, c: Sequence[ExactScalar]) -> AlgebraVector:
    k = rs.rank
    roots = {r: x for r, x in zip(rs.roots, c[k:]) if x}
    return AlgebraVector._raw(tuple(c[:k]), roots)


class Echelon:
    """Incrementally maintained reduced row echelon form of a span."""

    def __init__(self, width: int):
        self.width = width
        self.rows: List[Vec] = []
        self.pivots: List[int] = []

    def reduce(self, v: Sequence[ExactScalar]) -> Vec:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence[ExactScalar]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[ExactScalar]) -> bool:
        """Insert v; return False if it was already in the span."""
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv if x else x for x in v]
        for k, row in enumerate(self.rows):
            c = row[p]
            if c:
                self.rows[k] = [a - c * b if b else a for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def rank_of(vectors: Sequence[Sequence[ExactScalar]]) -> int:
    if not vectors:
        return 0
    e = Echelon(len(vectors[0]))
    for v in vectors:
        e.add(v)
    return e.dim


def kernel(matrix: Sequence[Sequence[ExactScalar]], ncols: int) -> List[Vec]:
    """Basis of {x : M x = 0} for M given as a list of rows."""
    rows = [list(r) for r in matrix if any(r)]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -rows[i][f]
        basis.append(x)
    return basis


def inverse(matrix: Sequence[Sequence[ExactScalar]]) -> Optional[List[Vec]]:
    """Inverse of a square matrix, or None if singular."""
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv if x else x for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                c = aug[i][col]
                aug[i] = [a - c * b if b else a for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def mat_vec(m: Sequence[Sequence[ExactScalar]], v: Sequence[ExactScalar]) -> Vec:
    out = []
    for row in m:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def combine(vectors: Sequence[AlgebraVector], coeffs: Sequence[ExactScalar], zero: AlgebraVector) -> AlgebraVector:
    acc = zero
    for v, c in zip(vectors, coeffs):
        if c:
            acc = acc + v.scale(c)
    return acc


def independent_subset(vectors: Sequence[Sequence[ExactScalar]]) -> Tuple[int, ...]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    if not vectors:
        return ()
    e = Echelon(len(vectors[0]))
    return tuple(i for i, v in enumerate(vectors) if e.add(v))
