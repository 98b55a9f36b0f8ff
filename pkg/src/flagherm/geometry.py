"""Invariant Levi-Civita connection and the derived tensors of (g, J).

Two operators live here and must not be confused:

* ``nabla_vec(s, X, Y)`` is ``(nabla_{X*} Y*)_o`` for the fundamental fields of
  X, Y in m: ``-1/2 [X,Y]_m + U(X,Y)``, i.e. ``r_{a,b} X_{a+b}`` on the basis.
* ``nomizu(s, X, Y)`` is ``Lambda(X)Y = 1/2 [X,Y]_m + U(X,Y)``, the operator
  through which an invariant tensor is differentiated at the origin:
  ``(nabla_X J) = [Lambda(X), J]``.  On the basis it equals ``r_{b,a} X_{a+b}``.

J is invariant but ``J(Y*)`` is not the fundamental field of ``JY``, so
``nabla J`` has to go through Lambda.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Literal, Tuple

from .ahstruct import AHStructure, StructureError, _frame, _g, _j, _require_m
from .rootsys import AlgebraVector, Root, bracket, neg
from .scalars import I, ZERO, ExactScalar

__all__ = [
    "ConnectionTable",
    "connection_table",
    "u_map",
    "u_vec",
    "u_map_general",
    "nabla",
    "nabla_vec",
    "nomizu",
    "nabla_real",
    "cov_deriv_j",
    "cov_deriv_omega",
    "d_omega",
    "codifferential",
    "codifferential_terms",
    "nijenhuis",
    "bracket_m",
]

Pair = Tuple[Root, Root]


class ConnectionTable:
    """r_{a,b}, U-coefficients and the nabla-Omega kernel for one structure."""

    __slots__ = ("structure", "r", "u", "target", "_omega_kernel")

    def __init__(self, s: AHStructure):
        self.structure = s
        f = s.flag
        # r and U depend on lambda only; share them across epsilon
        shared = f.__dict__.setdefault("_metric_tables", {})
        key = s.g.lambdas
        if key not in shared:
            if len(shared) > 64:
                shared.clear()
            shared[key] = _metric_tables(s)
        self.r, self.u, self.target = shared[key]
        self._omega_kernel = None

    def omega_kernel(self) -> Dict[Root, List[Tuple[Root, Root, ExactScalar]]]:
        """For each a: list of (c, b, w) with (nabla_{X_a} Omega)(X_b, X_c) = w, b = -(a+c).

        (nabla_{X_a} J) X_c = i (eps_c - eps_{a+c}) r_{c,a} X_{a+c}; pairing with X_b
        contributes g(X_b, X_{a+c}) = -lambda_{a+c}.
        """
        if self._omega_kernel is None:
            s = self.structure
            eps = s.eps
            lam = s.lam
            out: Dict[Root, List[Tuple[Root, Root, ExactScalar]]] = {}
            for (c, a), t in self.target.items():
                d = eps[c] - eps[t]
                if not d:
                    continue
                w = self.r[c, a] * I * (-d * lam[t])
                if w:
                    out.setdefault(a, []).append((c, neg(t), w))
            self._omega_kernel = {a: v for a, v in out.items()}
        return self._omega_kernel


def _metric_tables(s: AHStructure):
    f = s.flag
    rc = f.r_complement
    lam = s.lam
    nn = f.wb.n
    r: Dict[Pair, ExactScalar] = {}
    u: Dict[Pair, ExactScalar] = {}
    target: Dict[Pair, Root] = {}
    for (a, b), c in f.rs.sums.items():
        if a not in rc or b not in rc or c not in rc:
            continue
        lc = lam[c]
        target[a, b] = c
        # r_{a,b} = n_{b,a} (l_c + l_a - l_b) / (2 l_c)
        r[a, b] = nn[b, a] * ((lc + lam[a] - lam[b]) / (2 * lc))
        u[a, b] = nn[a, b] * ((lam[b] - lam[a]) / (2 * lc))
    return r, u, target


def connection_table(s: AHStructure) -> ConnectionTable:
    tab = s.__dict__.get("_connection")
    if tab is None:
        tab = ConnectionTable(s)
        object.__setattr__(s, "_connection", tab)
    return tab


def _zero(s: AHStructure) -> AlgebraVector:
    return s.flag.wb.zero()


def _combine(s: AHStructure, table: Dict[Pair, ExactScalar], target: Dict[Pair, Root], v, w) -> AlgebraVector:
    out: Dict[Root, ExactScalar] = {}
    for a, ca in v.roots.items():
        for b, cb in w.roots.items():
            coef = table.get((a, b))
            if coef is None:
                continue
            t = target[a, b]
            val = ca * cb * coef
            prev = out.get(t)
            if prev is None:
                out[t] = val
            else:
                val = prev + val
                if val:
                    out[t] = val
                else:
                    del out[t]
    return AlgebraVector._raw(_zero(s).cartan, {k: c for k, c in out.items() if c})


# ---------------------------------------------------------------------------
# U and the connection


def u_map(s: AHStructure, alpha: Root, beta: Root) -> AlgebraVector:
    """U(X_a, X_b) = n_{a,b} (l_b - l_a) / (2 l_{a+b}) X_{a+b}, or 0."""
    alpha, beta = tuple(alpha), tuple(beta)
    _require_roots(s, alpha, beta)
    tab = connection_table(s)
    c = tab.u.get((alpha, beta))
    if not c:
        return _zero(s)
    return AlgebraVector._raw(_zero(s).cartan, {tab.target[alpha, beta]: c})


def u_vec(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """Bilinear extension of u_map."""
    tab = connection_table(s)
    return _combine(s, tab.u, tab.target, v, w)


def bracket_m(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    return s.flag.project_m(bracket(s.flag.wb, v, w))


def u_map_general(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """Solve 2 g(U(v,w), Z) = g([Z,v]_m, w) + g(v, [Z,w]_m) against every Z = X_-c.

    With U = sum a_c X_c, g(U, X_-c) = a_c g(X_c, X_-c) = -a_c lambda_c.
    """
    _require_m(s, v)
    _require_m(s, w)
    wb = s.flag.wb
    out = {}
    for c in s.flag.complement_order:
        z = wb.x(neg(c))
        rhs = _g(s, bracket_m(s, z, v), w) + _g(s, v, bracket_m(s, z, w))
        if rhs:
            out[c] = rhs * Fraction(1, 2) * (1 / s.g_pair[c])
    return AlgebraVector._raw(wb.zero().cartan, out)


def _require_roots(s: AHStructure, *roots: Root) -> None:
    rc = s.flag.r_complement
    for r in roots:
        if r not in rc:
            raise StructureError(f"{r} is not a complementary root")


def nabla(s: AHStructure, alpha: Root, beta: Root) -> AlgebraVector:
    """(nabla_{X_a*} X_b*)_o = r_{a,b} X_{a+b} when a+b in R_Theta, else 0."""
    alpha, beta = tuple(alpha), tuple(beta)
    _require_roots(s, alpha, beta)
    tab = connection_table(s)
    c = tab.r.get((alpha, beta))
    if c is None:
        return _zero(s)
    return AlgebraVector._raw(_zero(s).cartan, {tab.target[alpha, beta]: c})


def nabla_vec(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """(nabla_{v*} w*)_o for v, w in m^C."""
    tab = connection_table(s)
    return _combine(s, tab.r, tab.target, v, w)


def nomizu(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """Lambda(v) w = 1/2 [v,w]_m + U(v,w) = (nabla_{w*} v*)_o."""
    return nabla_vec(s, w, v)


def nabla_real(
    s: AHStructure,
    x_kind: Literal["A", "S"],
    beta: Root,
    y_kind: Literal["A", "S"],
    alpha: Root,
) -> AlgebraVector:
    """nabla_X Y for X in {A_beta, S_beta}, Y in {A_alpha, S_alpha}, by bilinear expansion."""
    from .flag import a_vec, s_vec

    f = s.flag
    make = {"A": a_vec, "S": s_vec}
    return nabla_vec(s, make[x_kind](f, tuple(beta)), make[y_kind](f, tuple(alpha)))


# ---------------------------------------------------------------------------
# derivatives of J and Omega


def cov_deriv_j(s: AHStructure, x: AlgebraVector, z: AlgebraVector) -> AlgebraVector:
    """(nabla_X J) Z = Lambda(X) JZ - J Lambda(X) Z."""
    return nomizu(s, x, _j(s, z)) - _j(s, nomizu(s, x, z))


def cov_deriv_omega(s: AHStructure, x: AlgebraVector, y: AlgebraVector, z: AlgebraVector) -> ExactScalar:
    """(nabla_X Omega)(Y, Z) = g(Y, (nabla_X J) Z), evaluated multilinearly."""
    kernel = connection_table(s).omega_kernel()
    yr = y.roots
    zr = z.roots
    acc = ZERO
    for a, xa in x.roots.items():
        entries = kernel.get(a)
        if not entries:
            continue
        for c, b, w in entries:
            zc = zr.get(c)
            if zc is None:
                continue
            yb = yr.get(b)
            if yb is None:
                continue
            acc = acc + xa * yb * zc * w
    return acc


def d_omega(s: AHStructure, x: AlgebraVector, y: AlgebraVector, z: AlgebraVector) -> ExactScalar:
    """dOmega(X,Y,Z) = 1/3 of the cyclic sum of (nabla Omega)."""
    total = cov_deriv_omega(s, x, y, z) + cov_deriv_omega(s, y, z, x) + cov_deriv_omega(s, z, x, y)
    return total * Fraction(1, 3)


def codifferential_terms(s: AHStructure, x: AlgebraVector) -> List[Tuple[Root, ExactScalar, ExactScalar]]:
    """Per frame root b: ((nabla_{V_b} Omega)(V_b, X), (nabla_{JV_b} Omega)(JV_b, X))."""
    return [
        (b, cov_deriv_omega(s, v, v, x), cov_deriv_omega(s, jv, jv, x))
        for b, v, jv in _frame(s)
    ]


def codifferential(s: AHStructure, x: AlgebraVector) -> ExactScalar:
    """(delta Omega)(X) summed over the invariant J-frame."""
    acc = ZERO
    for _, t1, t2 in codifferential_terms(s, x):
        acc = acc + t1 + t2
    return acc


def nijenhuis(s: AHStructure, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """N(X,Y) = 2([JX,JY]_m - J[JX,Y]_m - J[X,JY]_m - [X,Y]_m) at the origin."""
    jx, jy = _j(s, x), _j(s, y)
    n = bracket_m(s, jx, jy) - _j(s, bracket_m(s, jx, y)) - _j(s, bracket_m(s, x, jy)) - bracket_m(s, x, y)
    return n.scale(2)
