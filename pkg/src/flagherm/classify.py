"""Gray-Hervella class membership and the ASK sweep."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .ahstruct import AHStructure, IACS, InvariantMetric, _j, all_epsilons, random_lambda
from .flag import algebra, build_flag, real_basis
from .geometry import codifferential, codifferential_terms, cov_deriv_j, d_omega, nijenhuis
from .rootsys import MIN_RANK

log = logging.getLogger(__name__)

CLASSES = ("K", "AK", "NK", "QK", "ASK", "SK", "H")

# (stronger, weaker): membership in the first forces the second
IMPLICATIONS = (
    ("K", "AK"), ("K", "NK"), ("K", "QK"), ("K", "H"), ("K", "SK"), ("K", "ASK"),
    ("AK", "QK"), ("NK", "QK"), ("QK", "ASK"), ("SK", "ASK"), ("SK", "H"),
)


@dataclass
class ClassReport:
    flags: Dict[str, bool]
    witnesses: Dict[str, dict] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"flags": dict(self.flags), "witnesses": dict(self.witnesses)}

    def lattice_violations(self) -> List[str]:
        bad = [f"{a}=>{b}" for a, b in IMPLICATIONS if self.flags[a] and not self.flags[b]]
        if self.flags["SK"] != (self.flags["ASK"] and self.flags["H"]):
            bad.append("SK<=>ASK&H")
        return bad


def _vec_witness(s: AHStructure, labels, value) -> dict:
    return {"input": list(labels), "value": value.render(s.flag.rs)}


def classify(s: AHStructure) -> ClassReport:
    """Test every defining condition exactly on the real basis of m.

    The first failing tuple in canonical basis order is kept as witness.
    """
    basis = real_basis(s.flag)
    flags: Dict[str, bool] = {}
    wit: Dict[str, dict] = {}
    dj = {}

    def dJ(i, j):
        key = (i, j)
        if key not in dj:
            dj[key] = cov_deriv_j(s, basis[i][1], basis[j][1])
        return dj[key]

    n = len(basis)
    flags["K"] = True
    for i, j in itertools.product(range(n), repeat=2):
        v = dJ(i, j)
        if v:
            flags["K"] = False
            wit["K"] = _vec_witness(s, (basis[i][0], basis[j][0]), v)
            break

    flags["AK"] = True
    for i, j, k in itertools.combinations(range(n), 3):
        v = d_omega(s, basis[i][1], basis[j][1], basis[k][1])
        if v:
            flags["AK"] = False
            wit["AK"] = {"input": [basis[i][0], basis[j][0], basis[k][0]], "value": v.render()}
            break

    flags["NK"] = True
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        v = dJ(i, j) + dJ(j, i)
        if v:
            flags["NK"] = False
            wit["NK"] = _vec_witness(s, (basis[i][0], basis[j][0]), v)
            break

    # J of a basis vector is +-1 times another basis vector (same root), so
    # (nabla_{JX} J) JY reuses the cached table.
    jindex = {}
    for k, (_, v) in enumerate(basis):
        jv = _j(s, v)
        for m, (_, w) in enumerate(basis):
            if jv == w:
                jindex[k] = (m, 1)
                break
            if jv == -w:
                jindex[k] = (m, -1)
                break
    flags["QK"] = True
    for i, j in itertools.product(range(n), repeat=2):
        (ji, si), (jj, sj) = jindex[i], jindex[j]
        v = dJ(i, j) + dJ(ji, jj).scale(si * sj)
        if v:
            flags["QK"] = False
            wit["QK"] = _vec_witness(s, (basis[i][0], basis[j][0]), v)
            break

    flags["ASK"] = True
    for i in range(n):
        total = codifferential(s, basis[i][1])
        if total:
            flags["ASK"] = False
            wit["ASK"] = {"input": [basis[i][0]], "value": total.render()}
            break

    flags["H"] = True
    for i, j in itertools.combinations(range(n), 2):
        v = nijenhuis(s, basis[i][1], basis[j][1])
        if v:
            flags["H"] = False
            wit["H"] = _vec_witness(s, (basis[i][0], basis[j][0]), v)
            break

    flags["SK"] = flags["ASK"] and flags["H"]
    if not flags["SK"]:
        wit["SK"] = wit.get("ASK") or wit["H"]
    return ClassReport({k: flags[k] for k in CLASSES}, wit)


def integrable_by_roots(s: AHStructure) -> bool:
    """Root criterion: eps_a = eps_b = +1 and a+b in R_Theta force eps_{a+b} = +1."""
    rc = s.flag.r_complement
    eps = s.eps
    for (a, b), c in s.flag.rs.sums.items():
        if a in rc and b in rc and c in rc and eps[a] == 1 and eps[b] == 1 and eps[c] != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# ASK sweep


@dataclass
class SweepCertificate:
    family: str
    ranks: List[dict] = field(default_factory=list)
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "passed": self.passed,
            "ranks": self.ranks,
            "counterexample": self.counterexample,
        }


def theta_subsets(rank: int) -> List[Tuple[int, ...]]:
    """All subsets of range(rank), ordered by size then lexicographically."""
    return [c for k in range(rank + 1) for c in itertools.combinations(range(rank), k)]


def sweep_ask_rank(
    family: str,
    rank: int,
    samples: int,
    rng: random.Random,
    termwise: bool = True,
) -> Tuple[dict, Optional[dict]]:
    """All Theta (except Sigma), all class-constant eps, `samples` random lambda.

    Checks delta Omega(X) = 0 on the real basis and, with ``termwise``, each
    frame term (nabla_{V_b} Omega)(V_b, X) and (nabla_{JV_b} Omega)(JV_b, X).
    """
    rs, wb = algebra(family, rank)
    stats = {
        "rank": rank,
        "theta_subsets": 0,
        "skipped": 0,
        "configurations": 0,
        "evaluations": 0,
        "termwise_evaluations": 0,
    }
    for theta in theta_subsets(rank):
        stats["theta_subsets"] += 1
        f = build_flag(rs, wb, theta)
        if f.is_point:
            log.info("skipping theta=%s for %s%d: R_Theta is empty", [i + 1 for i in theta], family, rank)
            stats["skipped"] += 1
            continue
        basis = real_basis(f)
        for eps in all_epsilons(f):
            for _ in range(samples):
                lam = random_lambda(f, rng)
                s = AHStructure(f, InvariantMetric(lam), IACS(eps))
                stats["configurations"] += 1
                for label, x in basis:
                    terms = codifferential_terms(s, x)
                    total = None
                    for b, t1, t2 in terms:
                        if termwise:
                            stats["termwise_evaluations"] += 2
                            if t1 or t2:
                                return stats, _counterexample(s, label, "termwise", b, t1 if t1 else t2)
                        total = (t1 + t2) if total is None else total + t1 + t2
                    stats["evaluations"] += 1
                    if total:
                        return stats, _counterexample(s, label, "delta_omega", None, total)
    return stats, None


def _counterexample(s: AHStructure, label, kind, root, value) -> dict:
    f = s.flag
    return {
        "family": f.rs.family,
        "rank": f.rs.rank,
        "theta": [i + 1 for i in f.theta],
        "lambda": [str(x) for x in s.g.lambdas],
        "epsilon": list(s.j.signs),
        "check": kind,
        "frame_root": f.rs.label(root) if root is not None else None,
        "input": label,
        "value": value.render(),
    }


def verify_ask_universal(
    family: str,
    max_rank: int,
    samples: int,
    seed: int = 0,
    min_rank: Optional[int] = None,
    termwise: bool = True,
) -> SweepCertificate:
    """Sweep every rank from the family minimum (or ``min_rank``) up to ``max_rank``."""
    family = family.upper()
    lo = MIN_RANK.get(family, 1) if min_rank is None else min_rank
    rng = random.Random(seed)
    cert = SweepCertificate(family)
    for rank in range(lo, max_rank + 1):
        stats, bad = sweep_ask_rank(family, rank, samples, rng, termwise=termwise)
        stats["passed"] = bad is None
        cert.ranks.append(stats)
        if bad is not None:
            cert.counterexample = bad
            break
    return cert
