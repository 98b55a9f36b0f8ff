"""Invariant almost Hermitian structures (g, J) on a flag manifold.

Conventions: ``g = -sum_i lambda_i B|m_i``.  With ``B(X_a, X_-a) = 1`` this
gives ``g(X_a, X_-a) = -lambda_a``, so that ``g(A_a, A_a) = 2 lambda_a > 0``.
``J X_a = i eps_a X_a`` with ``eps_-a = -eps_a``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from .flag import FlagManifold
from .rootsys import AlgebraVector, Root, neg
from .scalars import I, ZERO, ExactScalar, parse_rational, sqrt_rational

__all__ = [
    "StructureError",
    "InvariantMetric",
    "IACS",
    "AHStructure",
    "build_metric",
    "build_iacs",
    "build_structure",
    "metric_eval",
    "apply_j",
    "j_frame",
    "omega",
    "random_lambda",
    "all_epsilons",
    "canonical_epsilon",
]

ClassMap = Union[Mapping[Union[str, int], object], Sequence[object]]


class StructureError(ValueError):
    """Invalid lambda/epsilon data or a vector outside m^C."""


def _class_values(f: FlagManifold, values: ClassMap, what: str) -> list:
    k = len(f.summands)
    if isinstance(values, Mapping):
        out = [None] * k
        for key, v in values.items():
            idx = key
            if isinstance(key, str):
                if not key.startswith("class_") or not key[6:].isdigit():
                    raise StructureError(f"bad {what} key {key!r}; expected class_<k>")
                idx = int(key[6:])
            if not isinstance(idx, int) or not 0 <= idx < k:
                raise StructureError(f"{what} key {key!r} does not name one of the {k} summand classes")
            out[idx] = v
        missing = [f"class_{i}" for i, v in enumerate(out) if v is None]
        if missing:
            raise StructureError(f"{what} missing for {', '.join(missing)}")
        return out
    values = list(values)
    if len(values) != k:
        raise StructureError(f"{what} needs {k} values (one per summand class), got {len(values)}")
    return values


@dataclass(frozen=True)
class InvariantMetric:
    lambdas: Tuple[Fraction, ...]  # indexed by summand class

    def as_config(self) -> Dict[str, str]:
        return {f"class_{k}": str(v) for k, v in enumerate(self.lambdas)}


@dataclass(frozen=True)
class IACS:
    signs: Tuple[int, ...]  # epsilon on the positive roots of each class

    def as_config(self) -> Dict[str, int]:
        return {f"class_{k}": s for k, s in enumerate(self.signs)}


def build_metric(f: FlagManifold, lam: ClassMap) -> InvariantMetric:
    vals = []
    for v in _class_values(f, lam, "lambda"):
        try:
            q = parse_rational(v) if isinstance(v, str) else Fraction(v)
        except (TypeError, ValueError) as exc:
            raise StructureError(f"lambda value {v!r} is not rational") from exc
        if q <= 0:
            raise StructureError(f"lambda must be positive, got {q}")
        vals.append(q)
    return InvariantMetric(tuple(vals))


def build_iacs(f: FlagManifold, eps: ClassMap) -> IACS:
    vals = []
    for v in _class_values(f, eps, "epsilon"):
        if isinstance(v, str):
            v = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}.get(v.strip(), v)
        if v not in (1, -1):
            raise StructureError(f"epsilon must be +1 or -1, got {v!r}")
        vals.append(int(v))
    return IACS(tuple(vals))


@dataclass(frozen=True, eq=False)
class AHStructure:
    flag: FlagManifold
    g: InvariantMetric
    j: IACS

    def __post_init__(self):
        k = len(self.flag.summands)
        if len(self.g.lambdas) != k or len(self.j.signs) != k:
            raise StructureError("lambda/epsilon do not match the summand classes")
        # g(JX_a, JX_-a) = (i eps_a)(i eps_-a) g(X_a, X_-a): compatibility is eps_-a = -eps_a
        for a in self.flag.m_positive:
            if self.eps[a] * self.eps[neg(a)] != -1:
                raise StructureError("J is not compatible with g")

    @cached_property
    def lam(self) -> Dict[Root, Fraction]:
        """lambda on every complementary root (both signs)."""
        cls = self.flag.class_of
        return {a: self.g.lambdas[cls[a]] for a in self.flag.r_complement}

    @cached_property
    def eps(self) -> Dict[Root, int]:
        out = {}
        for k, roots in enumerate(self.flag.summands):
            s = self.j.signs[k]
            for a in roots:
                out[a] = s
                out[neg(a)] = -s
        return out

    @cached_property
    def j_coeff(self) -> Dict[Root, ExactScalar]:
        """i * eps_a for each complementary root."""
        minus_i = -I
        return {a: (I if e > 0 else minus_i) for a, e in self.eps.items()}

    @cached_property
    def g_pair(self) -> Dict[Root, Fraction]:
        """g(X_a, X_-a) = -lambda_a."""
        return {a: -v for a, v in self.lam.items()}

    def __repr__(self):
        return f"AHStructure({self.flag!r}, lambda={[str(x) for x in self.g.lambdas]}, eps={list(self.j.signs)})"


def build_structure(f: FlagManifold, lam: ClassMap, eps: ClassMap) -> AHStructure:
    return AHStructure(f, build_metric(f, lam), build_iacs(f, eps))


def _require_m(s: AHStructure, v: AlgebraVector) -> None:
    if v.has_cartan():
        raise StructureError("vector has a Cartan component; not in m^C")
    rc = s.flag.r_complement
    for r in v.roots:
        if r not in rc:
            raise StructureError(f"support root {s.flag.rs.label(r)} lies outside R_Theta")


def metric_eval(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> ExactScalar:
    """Complex-bilinear extension of g to m^C."""
    _require_m(s, v)
    _require_m(s, w)
    return _g(s, v, w)


def _g(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> ExactScalar:
    gp = s.g_pair
    wr = w.roots
    acc = ZERO
    if len(v.roots) > len(wr):
        v, wr = w, v.roots
    for a, c in v.roots.items():
        d = wr.get(neg(a))
        if d is not None:
            acc = acc + c * d * gp[a]
    return acc


def apply_j(s: AHStructure, v: AlgebraVector) -> AlgebraVector:
    _require_m(s, v)
    return _j(s, v)


def _j(s: AHStructure, v: AlgebraVector) -> AlgebraVector:
    jc = s.j_coeff
    return AlgebraVector._raw(v.cartan, {r: c * jc[r] for r, c in v.roots.items()})


def j_frame(s: AHStructure) -> List[Tuple[Root, AlgebraVector, AlgebraVector]]:
    """Invariant orthonormal J-frame: (a, V_a, JV_a) with V_a = A_a / sqrt(2 lambda_a)."""
    return list(_frame(s))


def _frame(s: AHStructure) -> Tuple[Tuple[Root, AlgebraVector, AlgebraVector], ...]:
    cache = s.__dict__.get("_frame_cache")
    if cache is None:
        zero = s.flag.wb.zero().cartan
        out = []
        for a in s.flag.m_positive:
            inv = sqrt_rational(2 * s.lam[a]).inverse()
            na = neg(a)
            v = AlgebraVector._raw(zero, {a: inv, na: -inv})
            jv = AlgebraVector._raw(zero, {a: inv * s.j_coeff[a], na: inv * s.j_coeff[a]})
            out.append((a, v, jv))
        cache = tuple(out)
        object.__setattr__(s, "_frame_cache", cache)
    return cache


def omega(s: AHStructure, v: AlgebraVector, w: AlgebraVector) -> ExactScalar:
    """Kaehler form Omega(v, w) = g(v, Jw)."""
    _require_m(s, v)
    _require_m(s, w)
    return _g(s, v, _j(s, w))


def random_lambda(f: FlagManifold, rng: random.Random) -> Tuple[Fraction, ...]:
    """Positive rationals p/q with p, q uniform in [1, 20], one per summand class."""
    return tuple(Fraction(rng.randint(1, 20), rng.randint(1, 20)) for _ in f.summands)


def all_epsilons(f: FlagManifold) -> Iterator[Tuple[int, ...]]:
    """Every class-constant sign assignment, in lexicographic order (+1 first)."""
    return itertools.product((1, -1), repeat=len(f.summands))


def canonical_epsilon(f: FlagManifold) -> Tuple[int, ...]:
    """Signs of the integrable structure J_C (eps = +1 on positive roots)."""
    return (1,) * len(f.summands)
