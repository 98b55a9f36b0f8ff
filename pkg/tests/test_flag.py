import itertools

import pytest

from flagherm.flag import (
    FlagError,
    algebra,
    build_flag,
    closure_of,
    flag_from_config,
    real_basis,
    span_roots,
)
from flagherm.rootsys import bracket, neg

from helpers import a_root, all_flags


def labels(f, roots):
    return sorted(f.rs.label(r) for r in roots)


def test_sl8_example_r_theta_and_dimension():
    f = flag_from_config("A", 7, [1, 2, 5])
    want = set()
    for i, j in [(1, 2), (2, 3), (1, 3), (5, 6)]:
        want |= {a_root(7, i, j), neg(a_root(7, i, j))}
    assert f.r_theta_closed == want
    assert f.real_dim == 48
    assert len(real_basis(f)) == 48
    # dim su(8) - dim k = 63 - 15
    assert 63 - (7 + len(f.r_theta_closed)) == 48


def test_maximal_flag():
    f = flag_from_config("B", 3, [])
    assert not f.r_theta_closed
    assert f.r_complement == frozenset(f.rs.roots)
    assert all(len(c) == 1 for c in f.summands)


def test_a1_maximal_basis():
    f = flag_from_config("A", 1, [])
    basis = real_basis(f)
    assert [name for name, _ in basis] == ["Aa(1,2)", "iSa(1,2)"]
    assert f.real_dim == 2


def test_a2_single_class():
    f = flag_from_config("A", 2, [1])
    assert len(f.summands) == 1
    assert set(f.summands[0]) == {a_root(2, 2, 3), a_root(2, 1, 3)}


def test_bad_theta():
    with pytest.raises(FlagError):
        flag_from_config("A", 3, [4])
    with pytest.raises(FlagError):
        flag_from_config("A", 3, [0])
    rs, wb = algebra("A", 3)
    with pytest.raises(FlagError):
        build_flag(rs, wb, [1, 1])


ALL_SMALL = [(fam, r) for fam, r in [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4)]]


def flags_of(family, rank):
    return all_flags(family, rank, include_point=True)


@pytest.mark.parametrize("family,rank", ALL_SMALL)
def test_structural_invariants(family, rank):
    for f in flags_of(family, rank):
        rs = f.rs
        assert f.r_theta_closed == span_roots(rs, f.theta) == closure_of(rs, f.theta)
        assert all(neg(a) in f.r_complement for a in f.r_complement)
        pos_theta = {a for a in rs.positives if a in f.r_theta_closed}
        assert pos_theta.isdisjoint(f.m_positive)
        assert pos_theta | set(f.m_positive) == set(rs.positives)
        assert sorted(itertools.chain(*f.summands)) == sorted(f.m_positive)
        for (a, b), s in rs.sums.items():
            if a in f.r_theta_closed and b in f.r_theta_closed:
                assert s in f.r_theta_closed


def orbit_classes(f):
    """Connected components of R_Theta^+ under X_a -> [X_g, X_a], g in R(Theta)."""
    parent = {a: a for a in f.m_positive}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a in f.m_positive:
        for g in f.r_theta_closed:
            b = f.rs.sums.get((g, a))
            if b is not None and b in parent:
                parent[find(a)] = find(b)
    groups = {}
    for a in f.m_positive:
        groups.setdefault(find(a), set()).add(a)
    return sorted(map(frozenset, groups.values()), key=sorted)


@pytest.mark.parametrize("family,rank", ALL_SMALL)
def test_summands_match_orbit_oracle(family, rank):
    for f in flags_of(family, rank):
        assert sorted(map(frozenset, f.summands), key=sorted) == orbit_classes(f)


def leaks(f, part):
    """True if span{X_a : a in +-part} is not ad(k_Theta)-invariant modulo k_Theta."""
    inside = set(part) | {neg(a) for a in part}
    for y in f.k_generators():
        for a in inside:
            w = f.project_m(bracket(f.wb, y, f.wb.x(a)))
            if any(r not in inside for r in w.roots):
                return True
    return False


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3)])
def test_summands_invariant_and_minimal(family, rank):
    for f in flags_of(family, rank):
        for cls in f.summands:
            assert not leaks(f, cls)
            for k in range(1, len(cls)):
                for part in itertools.combinations(cls, k):
                    assert leaks(f, part), (f, part)


def test_sl8_class_count():
    f = flag_from_config("A", 7, [1, 2, 5])
    outside = [k for k in range(7) if k not in f.theta]
    assert len(f.summands) == len({tuple(a[k] for k in outside) for a in f.m_positive}) == 10
