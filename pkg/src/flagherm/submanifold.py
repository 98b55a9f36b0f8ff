"""Invariant holomorphic submanifolds L/(L cap K_Theta) of a flag manifold.

Two inputs are supported: a sub-flag given by a second simple-root subset
Theta', and an explicit list of generators of a subalgebra l of the compact
form u.  Everything downstream (second fundamental form, mean curvature,
partial/normal/intrinsic codifferentials) works on a complex basis of n^C
that does not depend on the metric; metric-dependent tables are memoized per
lambda so that sweeps over epsilon reuse them.

The intrinsic connection is computed from its own defining identity on n
(n-projected brackets and U' solved against a basis of n), never by
restricting the ambient connection table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .ahstruct import AHStructure, _frame, _g, _j
from .flag import FlagManifold, span_roots
from .geometry import codifferential, cov_deriv_j, cov_deriv_omega, nabla_vec, nijenhuis
from .linalg import Echelon, inverse, kernel, mat_vec, to_coords
from .rootsys import AlgebraVector, Root, bracket, neg
from .scalars import I, ONE, ZERO, ExactScalar, sqrt_rational

__all__ = [
    "SubmanifoldError",
    "SubmanifoldData",
    "build_subflag",
    "build_from_subalgebra",
    "subflag_generators",
    "second_fundamental_form",
    "mean_curvature",
    "partial_codifferential",
    "normal_codifferential",
    "intrinsic_codifferential",
    "intrinsic_cov_deriv_j",
    "intrinsic_nijenhuis",
    "gauss_residual",
    "bracket_n",
    "contains_borel",
    "certify",
    "tau",
]

Coords = List[ExactScalar]
FramePair = Tuple[str, AlgebraVector, AlgebraVector]


class SubmanifoldError(ValueError):
    """Rejected submanifold input (degenerate, not closed, not holomorphic, ...)."""


def tau(v: AlgebraVector) -> AlgebraVector:
    """Conjugation fixing u: c X_a -> -conj(c) X_-a, c H -> -conj(c) H."""
    return AlgebraVector._raw(
        tuple(-c.conjugate() for c in v.cartan),
        {neg(r): -c.conjugate() for r, c in v.roots.items()},
    )


# ---------------------------------------------------------------------------
# metric-independent skeleton


@dataclass(eq=False)
class _Skeleton:
    flag: FlagManifold
    kind: str
    basis: Tuple[AlgebraVector, ...]  # complex basis of n^C
    theta_prime: Optional[Tuple[int, ...]] = None
    r_prime: Optional[frozenset] = None
    tangent_roots: Optional[Tuple[Root, ...]] = None
    generators: Optional[Tuple[AlgebraVector, ...]] = None
    real_span: Tuple[AlgebraVector, ...] = ()
    metric_cache: Dict[tuple, "_MetricTables"] = field(default_factory=dict)

    @cached_property
    def brackets_m(self) -> List[List[AlgebraVector]]:
        f = self.flag
        b = self.basis
        return [[f.project_m(bracket(f.wb, x, y)) for y in b] for x in b]

    def tables(self, s: AHStructure) -> "_MetricTables":
        key = s.g.lambdas
        t = self.metric_cache.get(key)
        if t is None:
            if len(self.metric_cache) > 64:
                self.metric_cache.clear()
            t = _MetricTables(self, s)
            self.metric_cache[key] = t
        return t


class _MetricTables:
    """Gram matrix, n-brackets, U', nabla', Lambda' and alpha on the basis of n^C."""

    def __init__(self, sk: _Skeleton, s: AHStructure):
        self.sk = sk
        self.s = s
        b = sk.basis
        d = len(b)
        self.gram = [[_g(s, x, y) for y in b] for x in b]
        inv = inverse(self.gram)
        if inv is None:
            raise SubmanifoldError("metric restricted to n is degenerate")
        self.gram_inv = inv
        half = ExactScalar(1) / 2
        brm = sk.brackets_m
        # [b_i, b_j]_n as coordinates: orthogonal projection of the m-bracket
        self.brn = [[self.coords(brm[i][j]) for j in range(d)] for i in range(d)]
        brn_vec = [[self.vector(self.brn[i][j]) for j in range(d)] for i in range(d)]
        # 2 g(U'(X,Y), Z) = g([Z,X]_n, Y) + g(X, [Z,Y]_n) against every Z = b_l
        self.uprime = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                rhs = [
                    (_g(s, brn_vec[l][i], b[j]) + _g(s, b[i], brn_vec[l][j])) * half
                    for l in range(d)
                ]
                c = mat_vec(self.gram_inv, rhs)
                self.uprime[i][j] = c
                self.uprime[j][i] = c
        self.nabla_p = [
            [[u - x * half for u, x in zip(self.uprime[i][j], self.brn[i][j])] for j in range(d)]
            for i in range(d)
        ]
        self.lam_p = [
            [[u + x * half for u, x in zip(self.uprime[i][j], self.brn[i][j])] for j in range(d)]
            for i in range(d)
        ]
        self.alpha = [
            [nabla_vec(s, b[i], b[j]) - self.vector(self.nabla_p[i][j]) for j in range(d)]
            for i in range(d)
        ]
        for i in range(d):
            for j in range(d):
                if any(self.coords(self.alpha[i][j])):
                    raise RuntimeError("second fundamental form has a tangent component")

    def coords(self, v: AlgebraVector) -> Coords:
        """Coordinates of the g-orthogonal projection of v onto n^C."""
        return mat_vec(self.gram_inv, [_g(self.s, v, x) for x in self.sk.basis])

    def vector(self, c: Sequence[ExactScalar]) -> AlgebraVector:
        acc = self.s.flag.wb.zero()
        for x, v in zip(c, self.sk.basis):
            if x:
                acc = acc + v.scale(x)
        return acc


def _bilinear_vec(table, x: Coords, y: Coords, zero: AlgebraVector) -> AlgebraVector:
    acc = zero
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if yj:
                v = row[j]
                if v:
                    acc = acc + v.scale(xi * yj)
    return acc


def _bilinear_coords(table, x: Coords, y: Coords) -> Coords:
    d = len(x)
    acc = [ZERO] * d
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, t in enumerate(table[i][j]):
                if t:
                    acc[k] = acc[k] + c * t
    return acc


# ---------------------------------------------------------------------------
# the data object


@dataclass(frozen=True, eq=False)
class SubmanifoldData:
    ambient: AHStructure
    skeleton: _Skeleton
    r_n: Tuple[Root, ...]
    n_frame: Tuple[FramePair, ...]
    n_perp_frame: Tuple[FramePair, ...]

    @property
    def kind(self) -> str:
        return self.skeleton.kind

    @property
    def theta_prime(self) -> Optional[Tuple[int, ...]]:
        return self.skeleton.theta_prime

    @property
    def r_prime(self) -> Optional[frozenset]:
        return self.skeleton.r_prime

    @property
    def flag(self) -> FlagManifold:
        return self.ambient.flag

    @property
    def r(self) -> int:
        """Complex dimension: the tangent J-frame has 2r vectors."""
        return len(self.n_frame)

    @property
    def real_dim(self) -> int:
        return 2 * len(self.n_frame)

    @property
    def real_codim(self) -> int:
        return 2 * len(self.n_perp_frame)

    @property
    def n_basis(self) -> List[Tuple[str, AlgebraVector]]:
        out = []
        for name, e, je in self.n_frame:
            out.append((name, e))
            out.append(("J" + name, je))
        return out

    @property
    def n_perp_basis(self) -> List[Tuple[str, AlgebraVector]]:
        out = []
        for name, e, je in self.n_perp_frame:
            out.append((name, e))
            out.append(("J" + name, je))
        return out

    @cached_property
    def tables(self) -> _MetricTables:
        return self.skeleton.tables(self.ambient)

    def coords(self, v: AlgebraVector) -> Coords:
        return self.tables.coords(v)

    def proj_n(self, v: AlgebraVector) -> AlgebraVector:
        return self.tables.vector(self.coords(v))

    def proj_perp(self, v: AlgebraVector) -> AlgebraVector:
        return self.flag.project_m(v) - self.proj_n(v)

    def in_n(self, v: AlgebraVector) -> bool:
        return self.flag.in_m(v) and v == self.proj_n(v)

    def require_n(self, *vs: AlgebraVector) -> None:
        for v in vs:
            if not self.in_n(v):
                raise SubmanifoldError("vector is not tangent to the submanifold")

    @cached_property
    def j_coords(self) -> List[Coords]:
        """Column k holds the coordinates of J b_k."""
        return [self.coords(_j(self.ambient, b)) for b in self.skeleton.basis]

    def apply_j_coords(self, c: Coords) -> Coords:
        d = len(c)
        out = [ZERO] * d
        for k, x in enumerate(c):
            if x:
                for l, y in enumerate(self.j_coords[k]):
                    if y:
                        out[l] = out[l] + x * y
        return out

    def __repr__(self):
        tp = [i + 1 for i in self.theta_prime] if self.theta_prime is not None else None
        return f"SubmanifoldData({self.kind}, theta_prime={tp}, dim={self.real_dim}, codim={self.real_codim})"


# ---------------------------------------------------------------------------
# construction


def subflag_generators(f: FlagManifold, theta_prime: Sequence[int]) -> List[AlgebraVector]:
    """Real basis of the compact subalgebra l generated by Theta' (0-based indices)."""
    rs, wb = f.rs, f.wb
    gens = [wb.h_root(rs.simples[i]).scale(I) for i in sorted(theta_prime)]
    rp = span_roots(rs, theta_prime)
    zero = wb.zero().cartan
    for a in rs.positives:
        if a in rp:
            na = neg(a)
            gens.append(AlgebraVector._raw(zero, {a: ONE, na: -ONE}))
            gens.append(AlgebraVector._raw(zero, {a: I, na: I}))
    return gens


def _frame_label(f: FlagManifold, a: Root) -> str:
    return f"V[{f.rs.label(a)}]"


def build_subflag(s: AHStructure, theta_prime: Sequence[int]) -> SubmanifoldData:
    """Sub-flag of Theta' (0-based simple indices): n^C = span X_a, a in R' cap R_Theta."""
    f = s.flag
    tp = tuple(sorted(set(theta_prime)))
    if len(tp) != len(list(theta_prime)):
        raise SubmanifoldError("theta_prime has repeated indices")
    for i in tp:
        if not isinstance(i, int) or not 0 <= i < f.rs.rank:
            raise SubmanifoldError(f"theta_prime index {i!r} out of range for rank {f.rs.rank}")
    if not tp:
        raise SubmanifoldError("theta_prime is empty")
    if set(tp) <= set(f.theta):
        raise SubmanifoldError("theta_prime is contained in theta: no tangent directions")
    key = ("subflag", f.rs.family, f.rs.rank, f.theta, tp)
    sk = _SKELETONS.get(key)
    if sk is None or sk.flag is not f:
        r_prime = span_roots(f.rs, tp)
        tangent = tuple(a for a in f.m_positive if a in r_prime)
        wb = f.wb
        basis = []
        for a in tangent:
            basis.append(wb.x(a))
            basis.append(wb.x(neg(a)))
        sk = _Skeleton(
            flag=f,
            kind="subflag",
            basis=tuple(basis),
            theta_prime=tp,
            r_prime=r_prime,
            tangent_roots=tangent,
        )
        _SKELETONS[key] = sk
    tangent = set(sk.tangent_roots)
    n_frame, perp = [], []
    for a, v, jv in _frame(s):
        (n_frame if a in tangent else perp).append((_frame_label(f, a), v, jv))
    return SubmanifoldData(s, sk, sk.tangent_roots, tuple(n_frame), tuple(perp))


_SKELETONS: Dict[tuple, _Skeleton] = {}


def _orthonormal_pairs(
    s: AHStructure,
    candidates: Sequence[AlgebraVector],
    start: Sequence[FramePair],
    target: int,
    prefix: str,
) -> List[FramePair]:
    """Pair-orthonormalize: take E from the next candidate, adjoin JE, project out, repeat."""
    done = list(start)
    out: List[FramePair] = []
    for cand in candidates:
        if len(out) == target:
            break
        v = cand
        for _, e, je in done + out:
            c1 = _g(s, v, e)
            c2 = _g(s, v, je)
            if c1:
                v = v - e.scale(c1)
            if c2:
                v = v - je.scale(c2)
        if not v:
            continue
        nn = _g(s, v, v)
        if not nn.is_rational():
            raise SubmanifoldError(
                f"squared norm {nn.render()} is not rational; its square root is not a single-term scalar"
            )
        e = v / sqrt_rational(nn.as_fraction())
        out.append((f"{prefix}{len(out) + 1}", e, _j(s, e)))
    if len(out) != target:
        raise SubmanifoldError("could not complete a J-frame")
    return out


def build_from_subalgebra(s: AHStructure, generators: Sequence[AlgebraVector]) -> SubmanifoldData:
    """Submanifold L/(L cap K_Theta) from a real basis (or spanning set) of l in u."""
    f = s.flag
    rs, wb = f.rs, f.wb
    if not generators:
        raise SubmanifoldError("no generators given")
    for k, v in enumerate(generators):
        if tau(v) != v:
            raise SubmanifoldError(f"generator {k} is not in the compact real form u")
    width = rs.rank + len(rs.roots)
    ech = Echelon(width)
    basis: List[AlgebraVector] = []
    for v in generators:
        if ech.add(to_coords(rs, v)):
            basis.append(v)
    for i, j in itertools.combinations(range(len(basis)), 2):
        br = bracket(wb, basis[i], basis[j])
        if not ech.contains(to_coords(rs, br)):
            raise SubmanifoldError(f"span is not bracket-closed: [g{i}, g{j}] leaves it")
    dim_l = len(basis)
    rc = f.r_complement
    k_rows = [c for c in range(rs.rank)] + [rs.rank + t for t, r in enumerate(rs.roots) if r not in rc]
    m_rows = [rs.rank + t for t, r in enumerate(rs.roots) if r in rc]
    cols = [to_coords(rs, v) for v in basis]

    def sub_kernel(rows):
        mat = [[cols[j][r] for j in range(dim_l)] for r in rows]
        return kernel(mat, dim_l)

    lk = sub_kernel(m_rows)  # l cap k
    ln = sub_kernel(k_rows)  # l cap m
    if len(lk) + len(ln) != dim_l:
        raise SubmanifoldError("l does not split as (l cap k_Theta) + (l cap m)")
    zero = wb.zero()
    n_basis = []
    for c in ln:
        v = zero
        for x, b in zip(c, basis):
            if x:
                v = v + b.scale(x)
        n_basis.append(v)
    if not n_basis:
        raise SubmanifoldError("n = 0: the orbit is a point")
    if len(n_basis) == len(rc):
        raise SubmanifoldError("n = m: codimension 0, not a proper submanifold")
    n_ech = Echelon(width)
    for v in n_basis:
        n_ech.add(to_coords(rs, v))
    for k, v in enumerate(n_basis):
        if not n_ech.contains(to_coords(rs, _j(s, v))):
            raise SubmanifoldError("J(n) is not contained in n: the submanifold is not holomorphic")
    half = ExactScalar(1) / 2
    real_span = []
    for v in n_basis:
        t = tau(v)
        real_span.append((v + t).scale(half))
        real_span.append((v - t).scale(half * (-I)))
    sk = _Skeleton(
        flag=f,
        kind="subalgebra",
        basis=tuple(n_basis),
        generators=tuple(generators),
        real_span=tuple(x for x in real_span if x),
    )
    frame = {a: (v, jv) for a, v, jv in _frame(s)}
    r_n = tuple(
        a
        for a in f.m_positive
        if any(_g(s, x, frame[a][0]) or _g(s, x, frame[a][1]) for x in n_basis)
    )
    n_frame = _orthonormal_pairs(s, sk.real_span, (), len(n_basis) // 2, "E")
    amb = []
    for a, v, jv in _frame(s):
        amb.extend((v, jv))
    perp = _orthonormal_pairs(s, amb, n_frame, len(f.m_positive) - len(n_frame), "F")
    return SubmanifoldData(s, sk, r_n, tuple(n_frame), tuple(perp))


# ---------------------------------------------------------------------------
# extrinsic geometry


def bracket_n(d: SubmanifoldData, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """[X,Y]_n: g-orthogonal projection of [X,Y]_m onto n."""
    return d.proj_n(d.flag.project_m(bracket(d.flag.wb, x, y)))


def second_fundamental_form(d: SubmanifoldData, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """alpha(X,Y) = (-1/2[X,Y]_m + U(X,Y)) - (-1/2[X,Y]_n + U'(X,Y)), in n^perp."""
    d.require_n(x, y)
    return _alpha(d, x, y)


def _alpha(d: SubmanifoldData, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    t = d.tables
    return _bilinear_vec(t.alpha, t.coords(x), t.coords(y), d.flag.wb.zero())


def mean_curvature(d: SubmanifoldData) -> AlgebraVector:
    """H = 1/(2r) sum over the tangent J-frame of alpha(E,E) + alpha(JE,JE)."""
    acc = d.flag.wb.zero()
    for _, e, je in d.n_frame:
        acc = acc + _alpha(d, e, e) + _alpha(d, je, je)
    return acc.scale(ExactScalar(1) / (2 * d.r))


def _frame_codiff(s: AHStructure, frame: Sequence[FramePair], x: AlgebraVector) -> ExactScalar:
    acc = ZERO
    for _, e, je in frame:
        acc = acc + cov_deriv_omega(s, e, e, x) + cov_deriv_omega(s, je, je, x)
    return acc


def partial_codifferential(d: SubmanifoldData, x: AlgebraVector) -> ExactScalar:
    """Tangent-frame part of delta Omega, with the ambient connection."""
    return _frame_codiff(d.ambient, d.n_frame, x)


def normal_codifferential(d: SubmanifoldData, x: AlgebraVector) -> ExactScalar:
    """Normal-frame part of delta Omega, with the ambient connection."""
    return _frame_codiff(d.ambient, d.n_perp_frame, x)


def _intrinsic_dj_coords(d: SubmanifoldData, xc: Coords, zc: Coords) -> Coords:
    """(nabla'_X J) Z = Lambda'(X) JZ - J Lambda'(X) Z in n-coordinates."""
    lam = d.tables.lam_p
    a = _bilinear_coords(lam, xc, d.apply_j_coords(zc))
    b = d.apply_j_coords(_bilinear_coords(lam, xc, zc))
    return [p - q for p, q in zip(a, b)]


def intrinsic_cov_deriv_j(d: SubmanifoldData, x: AlgebraVector, z: AlgebraVector) -> AlgebraVector:
    d.require_n(x, z)
    t = d.tables
    return t.vector(_intrinsic_dj_coords(d, t.coords(x), t.coords(z)))


def intrinsic_codifferential(d: SubmanifoldData, x: AlgebraVector) -> ExactScalar:
    """delta' Omega(X) of the submanifold with its own Levi-Civita connection."""
    d.require_n(x)
    t = d.tables
    s = d.ambient
    xc = t.coords(x)
    acc = ZERO
    for _, e, je in d.n_frame:
        for v in (e, je):
            vc = t.coords(v)
            acc = acc + _g(s, v, t.vector(_intrinsic_dj_coords(d, vc, xc)))
    return acc


def intrinsic_nijenhuis(d: SubmanifoldData, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """N' with n-projected brackets."""
    d.require_n(x, y)
    t = d.tables
    xc, yc = t.coords(x), t.coords(y)
    jx, jy = d.apply_j_coords(xc), d.apply_j_coords(yc)
    b = lambda p, q: _bilinear_coords(t.brn, p, q)
    j = d.apply_j_coords
    terms = [b(jx, jy), j(b(jx, yc)), j(b(xc, jy)), b(xc, yc)]
    out = [a - p - q - r for a, p, q, r in zip(*terms)]
    return t.vector([c * 2 for c in out])


def gauss_residual(d: SubmanifoldData, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """(nabla_X J)Y - [(nabla'_X J)Y + alpha(X,JY) - J alpha(X,Y)]; zero when consistent."""
    s = d.ambient
    lhs = cov_deriv_j(s, x, y)
    rhs = intrinsic_cov_deriv_j(d, x, y) + _alpha(d, x, _j(s, y)) - _j(s, _alpha(d, x, y))
    return lhs - rhs


def contains_borel(d: SubmanifoldData) -> bool:
    """q_Theta' = l cap p_Theta contains the Borel subalgebra of l (sub-flag case).

    Positive roots of R' must be roots of p_Theta, i.e. lie in R^+ or R(Theta)^-.
    """
    if d.r_prime is None:
        raise SubmanifoldError("only defined for sub-flags")
    f = d.flag
    p_roots = set(f.rs.positives) | {a for a in f.r_theta_closed}
    return all(a in p_roots for a in f.rs.positives if a in d.r_prime)


# ---------------------------------------------------------------------------
# certificate


def _render_vec(d: SubmanifoldData, v: AlgebraVector) -> str:
    return v.render(d.flag.rs)


def certify(d: SubmanifoldData, classes: bool = True) -> dict:
    """Exact checks of holomorphy, minimality, total geodesy and class inheritance.

    For sub-flags minimal and totally_geodesic are required outcomes; a
    failure of either is reported as an implementation bug.
    """
    s = d.ambient
    wit: Dict[str, dict] = {}
    t = d.tables

    holo = all(d.in_n(je) for _, _, je in d.n_frame)
    if not holo:
        wit["holomorphic"] = {"input": [d.n_frame[0][0]], "value": "J(n) not in n"}

    tg = True
    nb = d.n_basis
    zero = d.flag.wb.zero()
    nbc = [(name, t.coords(x)) for name, x in nb]
    for (ln, x), (lm, y) in itertools.combinations_with_replacement(nbc, 2):
        a = _bilinear_vec(t.alpha, x, y, zero)
        if a:
            tg = False
            wit["totally_geodesic"] = {"input": [ln, lm], "value": _render_vec(d, a)}
            break

    h = mean_curvature(d)
    minimal = not h
    if not minimal:
        wit["minimal"] = {"input": ["H"], "value": _render_vec(d, h)}
    else:
        for name, z in d.n_perp_basis:
            v = partial_codifferential(d, z)
            if v:
                minimal = False
                wit["minimal"] = {"input": [name], "value": v.render()}
                break

    cert = {
        "kind": d.kind,
        "dim": d.real_dim,
        "codim": d.real_codim,
        "holomorphic": holo,
        "minimal": minimal,
        "totally_geodesic": tg,
        "witnesses": wit,
    }
    required = ["holomorphic", "minimal"] + (["totally_geodesic"] if d.kind == "subflag" else [])

    if classes:
        amb_ask = all(not codifferential(s, x) for _, x in _real_basis_m(s))
        amb_h = all(
            not nijenhuis(s, x, y) for (_, x), (_, y) in itertools.combinations(_real_basis_m(s), 2)
        )
        sub_ask = True
        for name, x in nb:
            v = intrinsic_codifferential(d, x)
            if v:
                sub_ask = False
                wit["submanifold_ASK"] = {"input": [name], "value": v.render()}
                break
        sub_h = True
        for (ln, x), (lm, y) in itertools.combinations(nb, 2):
            v = intrinsic_nijenhuis(d, x, y)
            if v:
                sub_h = False
                wit["submanifold_H"] = {"input": [ln, lm], "value": _render_vec(d, v)}
                break
        same = (not amb_ask or sub_ask) and (not (amb_ask and amb_h) or (sub_ask and sub_h))
        cert["classes"] = {
            "ambient": {"ASK": amb_ask, "H": amb_h, "SK": amb_ask and amb_h},
            "submanifold": {"ASK": sub_ask, "H": sub_h, "SK": sub_ask and sub_h},
            "same_class": same,
        }
        required.append("same_class")
    ok = all(cert["classes"]["same_class"] if k == "same_class" else cert[k] for k in required)
    cert["required"] = required
    cert["passed"] = ok
    if not ok:
        cert["diagnostic"] = "a required outcome failed; this indicates an implementation bug"
    return cert


def _real_basis_m(s: AHStructure):
    from .flag import real_basis

    return real_basis(s.flag)
