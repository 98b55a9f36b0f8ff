import itertools
import json
import random
from fractions import Fraction

import pytest

from flagherm.ahstruct import _j, all_epsilons, build_structure, canonical_epsilon, random_lambda
from flagherm.classify import (
    CLASSES,
    ClassReport,
    classify,
    theta_subsets,
    verify_ask_universal,
)
from flagherm.flag import flag_from_config, real_basis
from flagherm.geometry import codifferential, cov_deriv_j, d_omega, nijenhuis
from helpers import all_flags


@pytest.fixture
def a2_max():
    return flag_from_config("A", 2, [])


def test_kaehler_example(a2_max):
    rep = classify(build_structure(a2_max, [1, 1, 2], [1, 1, 1]))
    assert all(rep.flags.values())
    assert rep.witnesses == {}


def test_nearly_kaehler_example(a2_max):
    s = build_structure(a2_max, [1, 1, 1], [1, 1, -1])
    rep = classify(s)
    assert rep.flags["NK"] and rep.flags["QK"] and rep.flags["ASK"]
    assert not rep.flags["K"] and not rep.flags["H"]
    # direct expansion: (nabla_X J) X = 0 for a generic combination, nonzero dJ somewhere
    basis = [v for _, v in real_basis(a2_max)]
    x = basis[0]
    for k, v in enumerate(basis[1:], 2):
        x = x + v.scale(Fraction(k, 7))
    assert not cov_deriv_j(s, x, x)
    assert any(cov_deriv_j(s, a, b) for a, b in itertools.product(basis, repeat=2))


def test_canonical_structure_is_hermitian():
    rng = random.Random(2)
    for fam, rk in [("A", 2), ("A", 3), ("B", 2), ("C", 3)]:
        for f in all_flags(fam, rk):
            for _ in range(2):
                rep = classify(build_structure(f, random_lambda(f, rng), canonical_epsilon(f)))
                assert rep.flags["H"] and rep.flags["SK"]


def _reevaluate(s, cls, labels):
    basis = dict(real_basis(s.flag))
    v = [basis[x] for x in labels]
    if cls == "K":
        return cov_deriv_j(s, *v)
    if cls == "AK":
        return d_omega(s, *v)
    if cls == "NK":
        return cov_deriv_j(s, v[0], v[1]) + cov_deriv_j(s, v[1], v[0])
    if cls == "QK":
        return cov_deriv_j(s, v[0], v[1]) + cov_deriv_j(s, _j(s, v[0]), _j(s, v[1]))
    if cls in ("ASK",):
        return codifferential(s, v[0])
    if cls == "H":
        return nijenhuis(s, *v)
    if cls == "SK":
        return codifferential(s, v[0]) if len(v) == 1 else nijenhuis(s, *v)
    raise AssertionError(cls)


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 3)])
def test_lattice_witnesses_and_scaling(family, rank):
    rng = random.Random(11)
    seen = set()
    for f in all_flags(family, rank):
        for eps in itertools.islice(all_epsilons(f), 16):
            lam = random_lambda(f, rng)
            s = build_structure(f, lam, eps)
            rep = classify(s)
            assert rep.lattice_violations() == []
            assert rep.flags["ASK"]
            for cls, w in rep.witnesses.items():
                assert not rep.flags[cls]
                assert _reevaluate(s, cls, w["input"])
            assert set(rep.witnesses) == {c for c in CLASSES if not rep.flags[c]}
            scaled = classify(build_structure(f, [q * Fraction(7, 3) for q in lam], eps))
            assert scaled.flags == rep.flags
            seen.add(tuple(rep.flags.values()))
    # the sweep meets more than one class pattern
    assert len(seen) > 1


def test_witness_is_deterministic(a2_max):
    s1 = build_structure(a2_max, [1, 2, 5], [1, -1, 1])
    s2 = build_structure(a2_max, [1, 2, 5], [1, -1, 1])
    assert classify(s1).to_json() == classify(s2).to_json()
    json.dumps(classify(s1).to_json())


def test_lattice_violation_detection():
    flags = {c: True for c in CLASSES}
    flags["ASK"] = False
    bad = ClassReport(flags).lattice_violations()
    assert "QK=>ASK" in bad and "SK<=>ASK&H" in bad


def test_point_is_vacuously_everything():
    f = flag_from_config("A", 2, [1, 2])
    assert f.is_point
    rep = classify(build_structure(f, [], []))
    assert all(rep.flags.values())


def test_theta_subsets():
    assert theta_subsets(2) == [(), (0,), (1,), (0, 1)]
    assert len(theta_subsets(4)) == 16


def test_verify_ask_small():
    cert = verify_ask_universal("A", 2, 5, seed=1)
    assert cert.passed
    assert [r["rank"] for r in cert.ranks] == [1, 2]
    row = cert.ranks[-1]
    assert row["theta_subsets"] == 4 and row["skipped"] == 1
    # 3 flags: maximal (8 eps), two with one class (2 eps each)
    assert row["configurations"] == (8 + 2 + 2) * 5
    assert verify_ask_universal("B", 2, 3).passed
    out = verify_ask_universal("A", 3, 3, seed=5).to_json()
    assert out["passed"] and [r["rank"] for r in out["ranks"]] == [1, 2, 3]
    assert verify_ask_universal("A", 3, 3, seed=5).to_json() == out


def test_verify_ask_total_only():
    cert = verify_ask_universal("C", 2, 2, termwise=False, min_rank=2)
    assert cert.passed and cert.ranks[0]["termwise_evaluations"] == 0
