"""Classical root systems A-D with a normalized Weyl basis.

Roots are integer tuples in the simple-root basis.  The Weyl basis is read
off an explicit matrix model: elementary matrices for ``sl(n+1)``, and the
standard orthogonal/symplectic block forms for types B, C, D.  Root vectors of
negative roots are transposes of the positive ones (the Chevalley involution
``X -> -X^T``), then both are rescaled so that ``B(X_a, X_-a) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, ExactScalar, sqrt_rational

Root = Tuple[int, ...]
Matrix = Dict[Tuple[int, int], Fraction]

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

# B(X, Y) = KILLING_FACTOR * tr(XY) in the defining representation.
KILLING_FACTOR = {
    "A": lambda n: 2 * (n + 1),
    "B": lambda n: 2 * n - 1,
    "C": lambda n: 2 * n + 2,
    "D": lambda n: 2 * n - 2,
}


class RootSystemError(ValueError):
    """Unsupported family/rank or an invalid root."""


def neg(root: Root) -> Root:
    return tuple(-c for c in root)


def height(root: Root) -> int:
    return sum(root)


# ---------------------------------------------------------------------------
# root systems


def _check_family(family: str, rank: int) -> str:
    family = str(family).upper()
    if family not in FAMILIES:
        raise RootSystemError(f"unsupported family {family!r}; expected one of {FAMILIES}")
    if not isinstance(rank, int) or rank < MIN_RANK[family]:
        raise RootSystemError(f"family {family} needs rank >= {MIN_RANK[family]}, got {rank!r}")
    return family


def _ambient_dim(family: str, n: int) -> int:
    return n + 1 if family == "A" else n


def _unit(dim: int, i: int, s: int = 1) -> list:
    v = [0] * dim
    v[i] = s
    return v


def _eps_roots(family: str, n: int) -> Tuple[list, list]:
    """All roots and simple roots in orthonormal coordinates."""
    dim = _ambient_dim(family, n)
    roots = []
    if family == "A":
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i], v[j] = 1, -1
                    roots.append(v)
        simples = []
        for i in range(n):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            simples.append(v)
        return roots, simples
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    roots.append(v)
    if family == "B":
        roots += [_unit(n, i, s) for i in range(n) for s in (1, -1)]
    elif family == "C":
        roots += [_unit(n, i, 2 * s) for i in range(n) for s in (1, -1)]
    simples = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simples.append(v)
    if family == "B":
        simples.append(_unit(n, n - 1))
    elif family == "C":
        simples.append(_unit(n, n - 1, 2))
    else:
        v = [0] * n
        v[n - 2], v[n - 1] = 1, 1
        simples.append(v)
    return roots, simples


def _solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> list:
    """Solve sum_k x_k * columns[k] = target exactly (consistent system assumed)."""
    rows = len(target)
    k = len(columns)
    mat = [[Fraction(columns[c][r]) for c in range(k)] + [Fraction(target[r])] for r in range(rows)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    if any(mat[i][k] for i in range(r, rows)):
        raise RootSystemError("vector not in the span of the simple roots")
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = mat[i][k]
    return x


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    roots: Tuple[Root, ...]
    positives: Tuple[Root, ...]
    simples: Tuple[Root, ...]
    cartan_pairing: Tuple[Tuple[int, ...], ...]
    eps_coords: Mapping[Root, Tuple[int, ...]] = field(repr=False)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def positive_set(self) -> frozenset:
        return frozenset(self.positives)

    @cached_property
    def index(self) -> Dict[Root, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def sums(self) -> Dict[Tuple[Root, Root], Root]:
        """All pairs whose sum is again a root."""
        table = {}
        rs = self.root_set
        for a in self.roots:
            for b in self.roots:
                s = tuple(x + y for x, y in zip(a, b))
                if s in rs:
                    table[a, b] = s
        return table

    def is_positive(self, root: Root) -> bool:
        return root in self.positive_set

    def label(self, root: Root) -> str:
        """Readable root name: ``a(i,j)`` for type A, coordinates otherwise."""
        root = tuple(root)
        sign = ""
        if root not in self.positive_set:
            sign, root = "-", neg(root)
        if self.family == "A":
            nz = [k for k, c in enumerate(root) if c]
            return f"{sign}a({nz[0] + 1},{nz[-1] + 2})"
        return sign + "(" + ",".join(map(str, root)) + ")"

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank}, |R|={len(self.roots)})"


def build_root_system(family: str, rank: int) -> RootSystem:
    family = _check_family(family, rank)
    eps_roots, eps_simples = _eps_roots(family, rank)
    to_simple: Dict[Root, Tuple[int, ...]] = {}
    eps_of: Dict[Root, Tuple[int, ...]] = {}
    for v in eps_roots:
        x = _solve_rational(eps_simples, v)
        if any(c.denominator != 1 for c in x):
            raise RootSystemError("non-integral root coordinates")
        coords = tuple(int(c) for c in x)
        to_simple[tuple(v)] = coords
        eps_of[coords] = tuple(v)
    positives = sorted(
        (c for c in eps_of if all(x >= 0 for x in c)),
        key=lambda c: (height(c), tuple(-x for x in c)),
    )
    if len(positives) * 2 != len(eps_of):
        raise RootSystemError("positivity split failed")
    roots = tuple(positives) + tuple(neg(p) for p in positives)
    simples = tuple(_unit(rank, i) for i in range(rank))
    simples = tuple(tuple(s) for s in simples)

    def ip(a, b):
        return sum(x * y for x, y in zip(a, b))

    pairing = tuple(
        tuple(2 * ip(eps_simples[i], eps_simples[j]) // ip(eps_simples[j], eps_simples[j]) for j in range(rank))
        for i in range(rank)
    )
    return RootSystem(
        family=family,
        rank=rank,
        roots=roots,
        positives=tuple(positives),
        simples=simples,
        cartan_pairing=pairing,
        eps_coords=eps_of,
    )


def sum_root(rs: RootSystem, alpha: Root, beta: Root) -> Optional[Root]:
    """alpha + beta if it is a root, else None (in particular for alpha = -beta)."""
    return rs.sums.get((tuple(alpha), tuple(beta)))


# ---------------------------------------------------------------------------
# matrix model


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows: Dict[int, list] = {}
    for (k, j), v in b.items():
        rows.setdefault(k, []).append((j, v))
    out: Matrix = {}
    for (i, k), u in a.items():
        for j, v in rows.get(k, ()):
            s = out.get((i, j), 0) + u * v
            if s:
                out[i, j] = s
            else:
                out.pop((i, j), None)
    return out


def mat_add(a: Matrix, b: Matrix, sb: Fraction = Fraction(1)) -> Matrix:
    out = dict(a)
    for key, v in b.items():
        s = out.get(key, 0) + sb * v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), Fraction(-1))


def transpose(a: Matrix) -> Matrix:
    return {(j, i): v for (i, j), v in a.items()}


def trace(a: Matrix) -> Fraction:
    return sum((v for (i, j), v in a.items() if i == j), Fraction(0))


def proportionality(a: Matrix, b: Matrix) -> Optional[Fraction]:
    """t with a = t*b, or None if not proportional (b nonzero)."""
    if not b:
        raise ValueError("reference matrix is zero")
    key = next(iter(b))
    t = a.get(key, Fraction(0)) / b[key]
    if a.keys() != b.keys() and t:
        return None
    for k, v in b.items():
        if a.get(k, 0) != t * v:
            return None
    if t == 0 and a:
        return None
    return t


@dataclass(frozen=True, eq=False)
class MatrixRealization:
    """Defining representation: raw root matrices, Cartan matrices, trace factor."""

    size: int
    form: Optional[Matrix]
    root_matrix: Mapping[Root, Matrix]
    cartan_matrix: Tuple[Matrix, ...]  # matrices of H_{alpha_i}
    scale: Mapping[Root, ExactScalar]  # X_a = root_matrix[a] / scale[a]
    killing_factor: int

    def trace_form(self, a: Matrix, b: Matrix) -> Fraction:
        return self.killing_factor * trace(mat_mul(a, b))


def _diag_weights(family: str, n: int) -> list:
    if family == "A":
        return [tuple(_unit(n + 1, p)) for p in range(n + 1)]
    w = [tuple(_unit(n, p)) for p in range(n)] + [tuple(_unit(n, p, -1)) for p in range(n)]
    if family == "B":
        w.append(tuple([0] * n))
    return w


def _form_matrix(family: str, n: int) -> Optional[Matrix]:
    if family == "A":
        return None
    form: Matrix = {}
    for i in range(n):
        form[i, n + i] = Fraction(1)
        form[n + i, i] = Fraction(-1 if family == "C" else 1)
    if family == "B":
        form[2 * n, 2 * n] = Fraction(1)
    return form


def _form_inverse(family: str, form: Matrix) -> Matrix:
    # the forms are signed permutation matrices: inverse is transpose
    return transpose(form)


def _build_realization(rs: RootSystem) -> MatrixRealization:
    family, n = rs.family, rs.rank
    weights = _diag_weights(family, n)
    size = len(weights)
    form = _form_matrix(family, n)
    form_inv = _form_inverse(family, form) if form is not None else None
    by_weight: Dict[Tuple[int, ...], Tuple[int, int]] = {}
    for p in range(size):
        for q in range(size):
            if p == q:
                continue
            w = tuple(x - y for x, y in zip(weights[p], weights[q]))
            by_weight.setdefault(w, (p, q))
    kf = KILLING_FACTOR[family](n)
    root_matrix: Dict[Root, Matrix] = {}
    scale: Dict[Root, ExactScalar] = {}
    for pos in rs.positives:
        p, q = by_weight[rs.eps_coords[pos]]
        e: Matrix = {(p, q): Fraction(1)}
        if form is not None:
            # projection onto {X : X^T F + F X = 0}
            e = mat_add(e, mat_mul(mat_mul(form_inv, transpose(e)), form), Fraction(-1))
        root_matrix[pos] = e
        root_matrix[neg(pos)] = transpose(e)
        b = kf * trace(mat_mul(e, transpose(e)))
        s = sqrt_rational(b)
        scale[pos] = s
        scale[neg(pos)] = s
    kappa = 1 if family == "A" else 2
    cartan = []
    for simple in rs.simples:
        eps = rs.eps_coords[simple]
        h = [Fraction(x, kf * kappa) for x in eps]
        diag = list(h) if family == "A" else list(h) + [-x for x in h] + ([Fraction(0)] if family == "B" else [])
        cartan.append({(i, i): v for i, v in enumerate(diag) if v})
    return MatrixRealization(
        size=size,
        form=form,
        root_matrix=root_matrix,
        cartan_matrix=tuple(cartan),
        scale=scale,
        killing_factor=kf,
    )


# ---------------------------------------------------------------------------
# algebra vectors


class AlgebraVector:
    """Element of g: Cartan coordinates on ``H_{alpha_i}`` plus root coefficients on ``X_alpha``."""

    __slots__ = ("cartan", "roots")

    def __init__(self, cartan: Iterable = (), roots: Optional[Mapping[Root, object]] = None, rank: Optional[int] = None):
        cartan = tuple(c if isinstance(c, ExactScalar) else ExactScalar(c) for c in cartan)
        if not cartan and rank is not None:
            cartan = (ZERO,) * rank
        self.cartan = cartan
        self.roots = {}
        for r, c in (roots or {}).items():
            c = c if isinstance(c, ExactScalar) else ExactScalar(c)
            if c:
                self.roots[tuple(r)] = c

    @classmethod
    def _raw(cls, cartan: tuple, roots: dict) -> "AlgebraVector":
        obj = cls.__new__(cls)
        obj.cartan = cartan
        obj.roots = roots
        return obj

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def has_cartan(self) -> bool:
        return any(c for c in self.cartan)

    def is_zero(self) -> bool:
        return not self.roots and not self.has_cartan()

    def __bool__(self):
        return not self.is_zero()

    def coeff(self, root: Root) -> ExactScalar:
        return self.roots.get(root, ZERO)

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        cartan = tuple(a + b for a, b in zip(self.cartan, other.cartan)) if (self.has_cartan() or other.has_cartan()) else self.cartan
        roots = dict(self.roots)
        for r, c in other.roots.items():
            s = roots.get(r)
            if s is None:
                roots[r] = c
            else:
                s = s + c
                if s:
                    roots[r] = s
                else:
                    del roots[r]
        return AlgebraVector._raw(cartan, roots)

    def __neg__(self):
        return AlgebraVector._raw(tuple(-c for c in self.cartan), {r: -c for r, c in self.roots.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "AlgebraVector":
        if not s:
            return AlgebraVector._raw((ZERO,) * len(self.cartan), {})
        cartan = tuple(c * s for c in self.cartan) if self.has_cartan() else self.cartan
        return AlgebraVector._raw(cartan, {r: c * s for r, c in self.roots.items()})

    def __mul__(self, s):
        if isinstance(s, (ExactScalar, int, Fraction)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, ExactScalar):
            return self.scale(s.inverse())
        return self.scale(1 / Fraction(s))

    def __eq__(self, other):
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        return self.roots == other.roots and all(a == b for a, b in zip(self.cartan, other.cartan))

    def __hash__(self):
        return hash((self.cartan, frozenset(self.roots.items())))

    def conjugate(self) -> "AlgebraVector":
        """Entrywise complex conjugation of coefficients."""
        return AlgebraVector._raw(
            tuple(c.conjugate() for c in self.cartan), {r: c.conjugate() for r, c in self.roots.items()}
        )

    def render(self, rs: Optional[RootSystem] = None) -> str:
        parts = []
        for i, c in enumerate(self.cartan):
            if c:
                parts.append(f"({c})*H{i + 1}")
        order = rs.index if rs is not None else {}
        for r in sorted(self.roots, key=lambda k: order.get(k, 0)):
            name = rs.label(r) if rs is not None else str(r)
            parts.append(f"({self.roots[r]})*X[{name}]")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AlgebraVector({self.render()})"


# ---------------------------------------------------------------------------
# Weyl basis


@dataclass(frozen=True, eq=False)
class WeylBasis:
    rs: RootSystem
    n: Mapping[Tuple[Root, Root], ExactScalar]
    killing_h: Tuple[Tuple[Fraction, ...], ...]
    riesz: Mapping[Root, Tuple[int, ...]]
    realization: MatrixRealization = field(repr=False)

    @cached_property
    def _root_weights(self) -> Dict[Root, Tuple[Fraction, ...]]:
        """alpha(H_{alpha_i}) = (alpha, alpha_i) for each root."""
        g = self.killing_h
        k = self.rs.rank
        return {
            a: tuple(sum((a[j] * g[j][i] for j in range(k)), Fraction(0)) for i in range(k))
            for a in self.rs.roots
        }

    def root_value(self, alpha: Root, cartan: Sequence[ExactScalar]) -> ExactScalar:
        """alpha(H) for H given in Cartan coordinates."""
        w = self._root_weights[alpha]
        acc = ZERO
        for c, x in zip(cartan, w):
            if c and x:
                acc = acc + c * x
        return acc

    @property
    def rank(self) -> int:
        return self.rs.rank

    def zero(self) -> AlgebraVector:
        return AlgebraVector._raw((ZERO,) * self.rank, {})

    def x(self, root: Root, coeff=1) -> AlgebraVector:
        """The basis vector coeff * X_root."""
        root = tuple(root)
        if root not in self.rs.root_set:
            raise RootSystemError(f"{root} is not a root")
        c = coeff if isinstance(coeff, ExactScalar) else ExactScalar(coeff)
        return AlgebraVector._raw((ZERO,) * self.rank, {root: c} if c else {})

    def h(self, i: int, coeff=1) -> AlgebraVector:
        """coeff * H_{alpha_i} (0-based simple index)."""
        c = coeff if isinstance(coeff, ExactScalar) else ExactScalar(coeff)
        cartan = [ZERO] * self.rank
        cartan[i] = c
        return AlgebraVector._raw(tuple(cartan), {})

    def h_root(self, root: Root) -> AlgebraVector:
        """The Riesz element H_alpha."""
        return AlgebraVector._raw(tuple(ExactScalar(c) for c in self.riesz[tuple(root)]), {})

    def matrix_of(self, v: AlgebraVector) -> Dict[Tuple[int, int], ExactScalar]:
        """Image of v in the defining representation (exact entries)."""
        real = self.realization
        out: Dict[Tuple[int, int], ExactScalar] = {}

        def acc(m: Matrix, c: ExactScalar):
            for key, val in m.items():
                s = out.get(key, ZERO) + c * val
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)

        for i, c in enumerate(v.cartan):
            if c:
                acc(real.cartan_matrix[i], c)
        for r, c in v.roots.items():
            acc(real.root_matrix[r], c / real.scale[r])
        return out


def build_weyl_basis(rs: RootSystem) -> WeylBasis:
    real = _build_realization(rs)
    n: Dict[Tuple[Root, Root], ExactScalar] = {}
    for (a, b), s in rs.sums.items():
        t = proportionality(commutator(real.root_matrix[a], real.root_matrix[b]), real.root_matrix[s])
        if t is None or t == 0:
            raise RootSystemError(f"commutator of {a}, {b} is not a multiple of X_{s}")
        n[a, b] = real.scale[s] * t * (real.scale[a] * real.scale[b]).inverse()
    k = rs.rank
    kappa = 1 if rs.family == "A" else 2
    eps = [rs.eps_coords[s] for s in rs.simples]
    gram = tuple(
        tuple(Fraction(sum(x * y for x, y in zip(eps[i], eps[j])), real.killing_factor * kappa) for j in range(k))
        for i in range(k)
    )
    return WeylBasis(rs=rs, n=n, killing_h=gram, riesz={r: r for r in rs.roots}, realization=real)


def structure_constant(wb: WeylBasis, alpha: Root, beta: Root) -> ExactScalar:
    return wb.n.get((tuple(alpha), tuple(beta)), ZERO)


def bracket(wb: WeylBasis, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """Lie bracket [v, w] extended bilinearly from the Weyl basis table."""
    rs = wb.rs
    k = wb.rank
    roots: Dict[Root, ExactScalar] = {}
    cartan = None

    def put(r, c):
        s = roots.get(r)
        if s is None:
            roots[r] = c
        else:
            s = s + c
            if s:
                roots[r] = s
            else:
                del roots[r]

    if w.has_cartan():
        for a, c in v.roots.items():
            val = wb.root_value(a, w.cartan)
            if val:
                put(a, -(c * val))
    if v.has_cartan():
        for b, c in w.roots.items():
            val = wb.root_value(b, v.cartan)
            if val:
                put(b, c * val)
    sums = rs.sums
    nn = wb.n
    for a, ca in v.roots.items():
        na = neg(a)
        for b, cb in w.roots.items():
            if b == na:
                c = ca * cb
                if cartan is None:
                    cartan = [ZERO] * k
                for i, x in enumerate(a):
                    if x:
                        cartan[i] = cartan[i] + c * x
                continue
            s = sums.get((a, b))
            if s is not None:
                put(s, ca * cb * nn[a, b])
    return AlgebraVector._raw(tuple(cartan) if cartan is not None else (ZERO,) * k, roots)


def killing(wb: WeylBasis, v: AlgebraVector, w: AlgebraVector) -> ExactScalar:
    """Killing form B(v, w) in the normalized basis."""
    acc = ZERO
    if v.has_cartan() and w.has_cartan():
        g = wb.killing_h
        for i, ci in enumerate(v.cartan):
            if not ci:
                continue
            for j, cj in enumerate(w.cartan):
                if cj and g[i][j]:
                    acc = acc + ci * cj * g[i][j]
    wr = w.roots
    for a, c in v.roots.items():
        d = wr.get(neg(a))
        if d is not None:
            acc = acc + c * d
    return acc


# ---------------------------------------------------------------------------
# identity suite


def basis_vectors(wb: WeylBasis) -> List[Tuple[str, AlgebraVector]]:
    """H_{alpha_i} followed by X_alpha in canonical root order."""
    out = [(f"H{i + 1}", wb.h(i)) for i in range(wb.rank)]
    out += [(f"X[{wb.rs.label(r)}]", wb.x(r)) for r in wb.rs.roots]
    return out


def weyl_basis_checks(wb: WeylBasis, triples: bool = True) -> Dict[str, bool]:
    """Exact checks of the Weyl-basis identities.

    normalization      B(X_a, X_b) = 1 if a+b = 0 else 0
    antisymmetry       n_{a,b} = -n_{b,a} = -n_{-a,-b}
    support            n_{a,b} != 0 iff a+b is a root
    cyclic             n_{a,b} = n_{b,c} = n_{c,a} when a+b+c = 0
    coroot             [X_a, X_-a] = H_a and a(H) = B(H, H_a)
    jacobi, invariance on every basis triple (skipped with triples=False)
    """
    rs = wb.rs
    roots = rs.roots
    res: Dict[str, bool] = {}
    res["normalization"] = all(
        killing(wb, wb.x(a), wb.x(b)) == (ONE if a == neg(b) else ZERO) for a in roots for b in roots
    )
    n = wb.n
    anti = True
    support = True
    for a in roots:
        for b in roots:
            s = rs.sums.get((a, b))
            if (s is not None) != bool(n.get((a, b), ZERO)):
                support = False
            if s is None:
                continue
            if not (n[a, b] == -n[b, a] == -n[neg(a), neg(b)]):
                anti = False
    res["antisymmetry"] = anti
    res["support"] = support
    cyc = True
    for (a, b), s in rs.sums.items():
        c = neg(s)
        if not (n[a, b] == n[b, c] == n[c, a]):
            cyc = False
    res["cyclic"] = cyc
    hs = [wb.h(i) for i in range(wb.rank)]
    res["coroot"] = all(
        bracket(wb, wb.x(a), wb.x(neg(a))) == wb.h_root(a)
        and all(wb.root_value(a, h.cartan) == killing(wb, h, wb.h_root(a)) for h in hs)
        for a in roots
    )
    if triples:
        vecs = [v for _, v in basis_vectors(wb)]
        jac = True
        inv = True
        m = len(vecs)
        br = [[bracket(wb, u, v) for v in vecs] for u in vecs]
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    t = bracket(wb, br[i][j], vecs[k]) + bracket(wb, br[j][k], vecs[i]) + bracket(wb, br[k][i], vecs[j])
                    if t:
                        jac = False
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if killing(wb, br[i][j], vecs[k]) != killing(wb, vecs[i], br[j][k]):
                        inv = False
        res["jacobi"] = jac
        res["invariance"] = inv
    return res
