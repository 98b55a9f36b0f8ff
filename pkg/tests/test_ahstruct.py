import itertools
import random
from fractions import Fraction

import pytest

from flagherm.ahstruct import (
    AHStructure,
    StructureError,
    all_epsilons,
    apply_j,
    build_iacs,
    build_metric,
    build_structure,
    canonical_epsilon,
    j_frame,
    metric_eval,
    omega,
    random_lambda,
)
from flagherm.flag import flag_from_config, real_basis
from flagherm.rootsys import bracket, neg
from flagherm.scalars import I, ONE, ZERO, ExactScalar
from helpers import a_root, all_flags


@pytest.fixture
def a2():
    return flag_from_config("A", 2, [])


def test_metric_validation(a2):
    m = build_metric(a2, [1, 1, 2])
    assert m.lambdas == (1, 1, 2)
    assert build_metric(a2, {"class_0": "1", "class_1": "3/2", "class_2": 2}).lambdas[1] == Fraction(3, 2)
    with pytest.raises(StructureError):
        build_metric(a2, {"class_0": 1, "class_1": 1})
    with pytest.raises(StructureError):
        build_metric(a2, [1, 0, 1])
    with pytest.raises(StructureError):
        build_metric(a2, [1, -2, 1])
    with pytest.raises(StructureError):
        build_metric(a2, [1, 1])
    with pytest.raises(StructureError):
        build_metric(a2, ["1", "x", "1"])
    with pytest.raises(StructureError):
        build_metric(a2, {"class_0": 1, "class_1": 1, "class_7": 1})


def test_iacs_validation(a2):
    assert build_iacs(a2, "+,-,+".split(",")).signs == (1, -1, 1)
    with pytest.raises(StructureError):
        build_iacs(a2, [1, 0, 1])


def test_metric_values(a2):
    s = build_structure(a2, [1, 1, 2], [1, 1, 1])
    wb = a2.wb
    a13 = a_root(2, 1, 3)
    # g = -lambda B and B(X_a, X_-a) = 1
    assert metric_eval(s, wb.x(a13), wb.x(neg(a13))) == ExactScalar(-2)
    for name, v in real_basis(a2):
        for name2, w in real_basis(a2):
            val = metric_eval(s, v, w)
            if name == name2:
                lam = s.lam[a2.rs.roots[[a2.rs.label(r) for r in a2.rs.roots].index(name.lstrip("AiS"))]]
                assert val == ExactScalar(2 * lam)
            else:
                assert val == ZERO
    with pytest.raises(StructureError):
        metric_eval(s, wb.h(0), wb.x(a13))


def test_metric_rejects_r_theta_support():
    f = flag_from_config("A", 2, [1])
    s = build_structure(f, [1], [1])
    with pytest.raises(StructureError):
        metric_eval(s, f.wb.x(a_root(2, 1, 2)), f.wb.x(a_root(2, 1, 3)))


def test_j(a2):
    s = build_structure(a2, [1, 1, 1], [1, -1, 1])
    wb = a2.wb
    a23 = a_root(2, 2, 3)
    assert apply_j(s, wb.x(a23)) == wb.x(a23, -I)
    for _, v in real_basis(a2):
        assert apply_j(s, apply_j(s, v)) == -v
    a12 = a_root(2, 1, 2)
    A = wb.x(a12) - wb.x(neg(a12))
    S = wb.x(a12) + wb.x(neg(a12))
    assert apply_j(s, A) == S.scale(I)


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 3)])
def test_frame_orthonormal_and_compatible(family, rank):
    rng = random.Random(5)
    for f in all_flags(family, rank):
        for eps in itertools.islice(all_epsilons(f), 4):
            s = build_structure(f, random_lambda(f, rng), eps)
            frame = []
            for _, v, jv in j_frame(s):
                frame += [v, jv]
            assert len(frame) == f.real_dim
            for i, v in enumerate(frame):
                for j, w in enumerate(frame):
                    assert metric_eval(s, v, w) == (ONE if i == j else ZERO)
            basis = [v for _, v in real_basis(f)]
            for v in basis:
                for w in basis:
                    assert metric_eval(s, apply_j(s, v), apply_j(s, w)) == metric_eval(s, v, w)


def test_omega_values(a2):
    s = build_structure(a2, [1, 2, 3], [1, -1, 1])
    for _, v, jv in j_frame(s):
        assert omega(s, v, jv) == -ONE
        assert omega(s, v, v) == ZERO
    wb = a2.wb
    for a in a2.m_positive:
        # g(X_a, i eps_-a X_-a) = i eps_a lambda_a under g(X_a, X_-a) = -lambda_a
        assert omega(s, wb.x(a), wb.x(neg(a))) == I * (s.eps[a] * s.lam[a])
    basis = [v for _, v in real_basis(a2)]
    for v, w in itertools.product(basis, repeat=2):
        assert omega(s, v, w) == -omega(s, w, v)


def test_iacs_count(a2):
    assert len(list(all_epsilons(a2))) == 8
    assert canonical_epsilon(a2) == (1, 1, 1)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3)])
def test_j_equivariance(family, rank):
    for f in all_flags(family, rank):
        for eps in itertools.islice(all_epsilons(f), 3):
            s = build_structure(f, [1] * len(f.summands), eps)
            for y in f.k_generators():
                for _, x in real_basis(f):
                    lhs = apply_j(s, f.project_m(bracket(f.wb, y, x)))
                    rhs = f.project_m(bracket(f.wb, y, apply_j(s, x)))
                    assert lhs == rhs


def test_sign_varying_inside_a_class_breaks_equivariance():
    f = flag_from_config("A", 2, [1])
    cls = f.summands[0]
    signs = {cls[0]: 1, cls[1]: -1}
    signs.update({neg(a): -e for a, e in list(signs.items())})

    def j(v):
        return type(v)._raw(v.cartan, {r: c * I * signs[r] for r, c in v.roots.items()})

    broken = False
    for y in f.k_generators():
        for _, x in real_basis(f):
            if j(f.project_m(bracket(f.wb, y, x))) != f.project_m(bracket(f.wb, y, j(x))):
                broken = True
    assert broken


def test_random_lambda_range_and_seed(a2):
    draws = [random_lambda(a2, random.Random(9)) for _ in range(2)]
    assert draws[0] == draws[1]
    rng = random.Random(0)
    for _ in range(200):
        for q in random_lambda(a2, rng):
            assert 1 <= q.numerator <= 20 and 1 <= q.denominator <= 20 and q > 0


def test_structure_rejects_wrong_lengths(a2):
    with pytest.raises(StructureError):
        AHStructure(a2, build_metric(a2, [1, 1, 1]), build_iacs(flag_from_config("A", 2, [1]), [1]))
