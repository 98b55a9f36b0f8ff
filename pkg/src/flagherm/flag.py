"""Flag manifolds F = U/K_Theta described entirely by root data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from .rootsys import (
    AlgebraVector,
    Root,
    RootSystem,
    WeylBasis,
    build_root_system,
    build_weyl_basis,
    neg,
)
from .scalars import I, ONE

__all__ = [
    "FlagError",
    "FlagManifold",
    "build_flag",
    "isotropy_summands",
    "real_basis",
    "flag_from_config",
    "closure_of",
    "span_roots",
]


class FlagError(ValueError):
    """Invalid Theta or other flag-construction input."""


def span_roots(rs: RootSystem, indices: Iterable[int]) -> frozenset:
    """Roots lying in the span of the given simple roots (0-based indices)."""
    idx = set(indices)
    return frozenset(r for r in rs.roots if all(c == 0 for k, c in enumerate(r) if k not in idx))


def closure_of(rs: RootSystem, indices: Iterable[int]) -> frozenset:
    """Close {+-alpha_i} under root addition."""
    current = set()
    for i in indices:
        current.add(rs.simples[i])
        current.add(neg(rs.simples[i]))
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            for b in list(current):
                for s in (rs.sums.get((a, b)), rs.sums.get((b, a))):
                    if s is not None and s not in current:
                        current.add(s)
                        new.append(s)
        frontier = new
    return frozenset(current)


def _check_indices(rs: RootSystem, theta: Iterable[int], name: str = "theta") -> Tuple[int, ...]:
    out = []
    for i in theta:
        if not isinstance(i, int) or not 0 <= i < rs.rank:
            raise FlagError(f"{name} index {i!r} out of range for rank {rs.rank}")
        out.append(i)
    if len(set(out)) != len(out):
        raise FlagError(f"{name} has repeated indices: {sorted(out)}")
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class FlagManifold:
    rs: RootSystem
    wb: WeylBasis
    theta: Tuple[int, ...]  # 0-based simple indices
    r_theta_closed: frozenset
    r_complement: frozenset
    m_positive: Tuple[Root, ...]
    summands: Tuple[Tuple[Root, ...], ...]

    @property
    def real_dim(self) -> int:
        return 2 * len(self.m_positive)

    @property
    def is_point(self) -> bool:
        return not self.m_positive

    @cached_property
    def class_of(self) -> Dict[Root, int]:
        """Summand index of every complementary root (either sign)."""
        out = {}
        for k, cls in enumerate(self.summands):
            for a in cls:
                out[a] = k
                out[neg(a)] = k
        return out

    @cached_property
    def complement_order(self) -> Tuple[Root, ...]:
        return tuple(self.m_positive) + tuple(neg(a) for a in self.m_positive)

    def class_names(self) -> List[str]:
        return [f"class_{k}" for k in range(len(self.summands))]

    def k_generators(self) -> List[AlgebraVector]:
        """Generators of k_Theta^C: the Cartan basis and X_beta, beta in R(Theta)."""
        gens = [self.wb.h(i) for i in range(self.rs.rank)]
        gens += [self.wb.x(b) for b in self.rs.roots if b in self.r_theta_closed]
        return gens

    def project_m(self, v: AlgebraVector) -> AlgebraVector:
        """m^C-component: drop the Cartan part and the R(Theta) root spaces."""
        rc = self.r_complement
        return AlgebraVector._raw(
            (self.wb.zero().cartan), {r: c for r, c in v.roots.items() if r in rc}
        )

    def in_m(self, v: AlgebraVector) -> bool:
        return not v.has_cartan() and all(r in self.r_complement for r in v.roots)

    def theta_labels(self) -> List[str]:
        return [self.rs.label(self.rs.simples[i]) for i in self.theta]

    def __repr__(self):
        return (
            f"FlagManifold({self.rs.family}{self.rs.rank}, theta={[i + 1 for i in self.theta]}, "
            f"dim={self.real_dim})"
        )


def isotropy_summands(rs: RootSystem, theta: Sequence[int], m_positive: Sequence[Root]) -> Tuple[Tuple[Root, ...], ...]:
    """Group complementary positive roots by their restriction to the centre of k_Theta.

    The restriction is the coordinate vector on the simple roots outside Theta.
    Classes are ordered by their first root in canonical root order.
    """
    outside = [k for k in range(rs.rank) if k not in set(theta)]
    groups: Dict[Tuple[int, ...], List[Root]] = {}
    for a in m_positive:
        groups.setdefault(tuple(a[k] for k in outside), []).append(a)
    order = rs.index
    classes = [tuple(sorted(g, key=order.__getitem__)) for g in groups.values()]
    classes.sort(key=lambda c: order[c[0]])
    return tuple(classes)


def build_flag(rs: RootSystem, wb: WeylBasis, theta: Iterable[int]) -> FlagManifold:
    """Flag manifold for Theta given as 0-based simple-root indices."""
    theta = _check_indices(rs, theta)
    closed = closure_of(rs, theta)
    complement = frozenset(rs.roots) - closed
    m_positive = tuple(a for a in rs.positives if a in complement)
    return FlagManifold(
        rs=rs,
        wb=wb,
        theta=theta,
        r_theta_closed=closed,
        r_complement=complement,
        m_positive=m_positive,
        summands=isotropy_summands(rs, theta, m_positive),
    )


def real_basis(f: FlagManifold) -> List[Tuple[str, AlgebraVector]]:
    """Labelled real basis [A_a, iS_a, ...] of m, a in R_Theta^+ in canonical order."""
    out = []
    for a in f.m_positive:
        na = neg(a)
        name = f.rs.label(a)
        out.append((f"A{name}", AlgebraVector._raw(f.wb.zero().cartan, {a: ONE, na: -ONE})))
        out.append((f"iS{name}", AlgebraVector._raw(f.wb.zero().cartan, {a: I, na: I})))
    return out


def a_vec(f: FlagManifold, root: Root) -> AlgebraVector:
    """A_a = X_a - X_-a for any root a."""
    return AlgebraVector._raw(f.wb.zero().cartan, {tuple(root): ONE, neg(root): -ONE})


def s_vec(f: FlagManifold, root: Root) -> AlgebraVector:
    """S_a = X_a + X_-a for any root a."""
    return AlgebraVector._raw(f.wb.zero().cartan, {tuple(root): ONE, neg(root): ONE})


_CACHE: Dict[Tuple[str, int], Tuple[RootSystem, WeylBasis]] = {}


def algebra(family: str, rank: int) -> Tuple[RootSystem, WeylBasis]:
    """Root system and Weyl basis, memoized per (family, rank)."""
    key = (str(family).upper(), rank)
    if key not in _CACHE:
        rs = build_root_system(*key)
        _CACHE[key] = (rs, build_weyl_basis(rs))
    return _CACHE[key]


def flag_from_config(family: str, rank: int, theta_1based: Iterable[int]) -> FlagManifold:
    """Build from the external config form (1-based simple-root indices)."""
    rs, wb = algebra(family, rank)
    theta = []
    for i in theta_1based:
        if not isinstance(i, int) or not 1 <= i <= rank:
            raise FlagError(f"theta index {i!r} out of range 1..{rank}")
        theta.append(i - 1)
    return build_flag(rs, wb, theta)
