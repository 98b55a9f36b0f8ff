"""Command-line front end.

Exit codes: 0 every check passed, 1 a theorem check failed, 2 invalid input.
JSON output is written with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Any, Dict, List, Optional, Sequence

from .ahstruct import (
    AHStructure,
    StructureError,
    all_epsilons,
    build_iacs,
    build_metric,
    random_lambda,
)
from .classify import classify, verify_ask_universal
from .flag import FlagError, FlagManifold, algebra, build_flag, span_roots
from .geometry import connection_table
from .rootsys import RootSystemError, weyl_basis_checks
from .scalars import ExactScalar
from .submanifold import SubmanifoldError, build_subflag, certify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("flagherm")

# reference data for `verify example`
EXAMPLE = {
    "family": "A",
    "rank": 7,
    "theta": [1, 2, 5],
    "theta_prime": [1, 2, 3, 7],
    "r_theta": ["a(1,2)", "a(2,3)", "a(1,3)", "a(5,6)"],
    "r_prime": ["a(1,2)", "a(2,3)", "a(1,3)", "a(3,4)", "a(1,4)", "a(2,4)", "a(7,8)"],
    "dim_flag": 48,
    "dim_subflag": 8,
}


class InputError(ValueError):
    pass


INPUT_ERRORS = (InputError, FlagError, StructureError, SubmanifoldError, RootSystemError)


# ---------------------------------------------------------------------------
# parsing


def parse_index_list(text: Any, name: str) -> List[int]:
    if isinstance(text, list):
        items = text
    elif text is None:
        return []
    else:
        text = str(text).strip().strip("{}[]")
        items = [t for t in (p.strip() for p in text.split(",")) if t]
    out = []
    for t in items:
        try:
            out.append(int(t))
        except (TypeError, ValueError):
            raise InputError(f"{name}: {t!r} is not an integer index") from None
    return out


def _split(text: str) -> List[str]:
    return [t.strip() for t in str(text).split(",") if t.strip()]


def resolve_lambda(f: FlagManifold, value: Any, rng: random.Random):
    """Explicit values (list, comma string, or class map) or None for random."""
    if value is None or value == "random":
        return None
    if isinstance(value, str):
        value = _split(value)
    return build_metric(f, value).lambdas


def resolve_epsilons(f: FlagManifold, value: Any) -> List[tuple]:
    if value is None or value == "all":
        return list(all_epsilons(f))
    if isinstance(value, str):
        value = _split(value)
    return [build_iacs(f, value).signs]


def render_scalar(x: ExactScalar, approx: bool) -> Dict[str, str]:
    out = {"value": x.render()}
    if approx:
        z = x.approx()
        out["approx"] = f"{z.real:.12g}" if z.imag == 0 else f"{z.real:.12g}{z.imag:+.12g}i"
    return out


# ---------------------------------------------------------------------------
# configuration


DEFAULTS = {
    "family": None,
    "rank": None,
    "theta": [],
    "theta_prime": None,
    "lambda": None,
    "epsilon": None,
    "seed": 0,
    "samples": None,
    "max_rank": None,
    "min_rank": None,
    "json": False,
    "approx": False,
    "certify": False,
}


def load_config(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise InputError("config file must hold a JSON object")
        for k, v in data.items():
            k = k.replace("-", "_")
            if k not in cfg:
                raise InputError(f"unknown config key {k!r}")
            cfg[k] = v
    for k in cfg:
        v = getattr(args, k, None)
        if v is not None and v is not False:
            cfg[k] = v
    return cfg


def require(cfg: Dict[str, Any], *keys: str) -> None:
    for k in keys:
        if cfg.get(k) is None:
            raise InputError(f"--{k.replace('_', '-')} is required")


def make_flag(cfg: Dict[str, Any]) -> FlagManifold:
    require(cfg, "family", "rank")
    try:
        rank = int(cfg["rank"])
    except (TypeError, ValueError):
        raise InputError("rank must be an integer") from None
    rs, wb = algebra(str(cfg["family"]), rank)
    theta = parse_index_list(cfg["theta"], "theta")
    for i in theta:
        if not 1 <= i <= rank:
            raise FlagError(f"theta index {i} out of range 1..{rank}")
    return build_flag(rs, wb, [i - 1 for i in theta])


def labels(f: FlagManifold, roots) -> List[str]:
    order = f.rs.index
    return [f.rs.label(r) for r in sorted(roots, key=order.__getitem__)]


def positive_labels(f: FlagManifold, roots) -> List[str]:
    return labels(f, [r for r in roots if f.rs.is_positive(r)])


# ---------------------------------------------------------------------------
# commands


def cmd_build(cfg) -> tuple:
    f = make_flag(cfg)
    rs = f.rs
    rep = {
        "family": rs.family,
        "rank": rs.rank,
        "roots": len(rs.roots),
        "positive_roots": len(rs.positives),
        "theta": [i + 1 for i in f.theta],
        "theta_labels": f.theta_labels(),
        "r_theta": positive_labels(f, f.r_theta_closed),
        "r_theta_size": len(f.r_theta_closed),
        "complement_positive": labels(f, f.m_positive),
        "summands": {f"class_{k}": labels(f, c) for k, c in enumerate(f.summands)},
        "real_dim": f.real_dim,
        "iacs_count": 2 ** len(f.summands),
    }
    text = [
        f"{rs.family}{rs.rank}: {len(rs.roots)} roots ({len(rs.positives)} positive)",
        f"theta = {rep['theta']} {rep['theta_labels']}",
        "R(theta) = " + ", ".join("+-" + x for x in rep["r_theta"]),
        f"real dimension = {f.real_dim}",
        f"summand classes = {len(f.summands)}",
    ]
    text += [f"  {k}: {', '.join(v)}" for k, v in rep["summands"].items()]
    return rep, text, EXIT_OK


def cmd_classify(cfg) -> tuple:
    f = make_flag(cfg)
    if f.is_point:
        raise InputError("theta = Sigma gives a point; nothing to classify")
    rng = random.Random(int(cfg["seed"]))
    lam = resolve_lambda(f, cfg["lambda"] if cfg["lambda"] is not None else ["1"] * len(f.summands), rng)
    if lam is None:
        lam = random_lambda(f, rng)
    eps_list = resolve_epsilons(f, cfg["epsilon"] if cfg["epsilon"] is not None else ["+"] * len(f.summands))
    results = []
    code = EXIT_OK
    text = []
    for eps in eps_list:
        s = AHStructure(f, build_metric(f, lam), build_iacs(f, eps))
        r = classify(s)
        entry = r.to_json()
        entry["lambda"] = s.g.as_config()
        entry["epsilon"] = s.j.as_config()
        bad = r.lattice_violations()
        if bad or not r.flags["ASK"]:
            code = EXIT_FAIL
            entry["violations"] = bad + ([] if r.flags["ASK"] else ["ASK"])
        results.append(entry)
        on = [k for k, v in r.flags.items() if v]
        text.append(f"lambda={[str(x) for x in lam]} epsilon={list(eps)}: {' '.join(on) or '-'}")
        for k, w in r.witnesses.items():
            text.append(f"  not {k}: {w['input']} -> {w['value']}")
    rep = results[0] if len(results) == 1 else {"configurations": results}
    return rep, text, code


def cmd_verify(cfg, what: str) -> tuple:
    if what == "ask":
        require(cfg, "family")
        max_rank = cfg["max_rank"] if cfg["max_rank"] is not None else cfg["rank"]
        if max_rank is None:
            raise InputError("--max-rank is required")
        samples = int(cfg["samples"] or 5)
        cert = verify_ask_universal(
            str(cfg["family"]),
            int(max_rank),
            samples,
            seed=int(cfg["seed"]),
            min_rank=int(cfg["min_rank"]) if cfg["min_rank"] is not None else None,
        )
        rep = cert.to_json()
        rep.update({"samples": samples, "seed": int(cfg["seed"])})
        text = [
            f"rank {r['rank']}: {r['theta_subsets']} theta subsets ({r['skipped']} skipped), "
            f"{r['configurations']} configurations, {r['evaluations']} evaluations -> "
            f"{'pass' if r['passed'] else 'FAIL'}"
            for r in rep["ranks"]
        ]
        text.append("ASK universality: " + ("pass" if cert.passed else f"FAIL {cert.counterexample}"))
        return rep, text, EXIT_OK if cert.passed else EXIT_FAIL
    if what == "basis":
        require(cfg, "family", "rank")
        rs, wb = algebra(str(cfg["family"]), int(cfg["rank"]))
        checks = weyl_basis_checks(wb)
        ok = all(checks.values())
        rep = {"family": rs.family, "rank": rs.rank, "checks": checks, "passed": ok}
        text = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
        return rep, text, EXIT_OK if ok else EXIT_FAIL
    if what in ("tg", "sk"):
        return _subflag_sweep(cfg, classes=(what == "sk"))
    if what == "example":
        return _example(cfg)
    raise InputError(f"unknown verify target {what!r}")


def _theta_prime(cfg, f: FlagManifold) -> List[int]:
    require(cfg, "theta_prime")
    tp = parse_index_list(cfg["theta_prime"], "theta_prime")
    for i in tp:
        if not 1 <= i <= f.rs.rank:
            raise SubmanifoldError(f"theta_prime index {i} out of range 1..{f.rs.rank}")
    return [i - 1 for i in tp]


def _lambda_draws(cfg, f: FlagManifold, rng: random.Random, default_samples: int) -> List[tuple]:
    lam = resolve_lambda(f, cfg["lambda"], rng)
    if lam is not None:
        return [lam]
    n = int(cfg["samples"] or default_samples)
    return [random_lambda(f, rng) for _ in range(n)]


def _subflag_sweep(cfg, classes: bool) -> tuple:
    """Certify the sub-flag for every requested (lambda, epsilon)."""
    f = make_flag(cfg)
    tp = _theta_prime(cfg, f)
    rng = random.Random(int(cfg["seed"]))
    lams = _lambda_draws(cfg, f, rng, 3)
    eps_list = resolve_epsilons(f, cfg["epsilon"])
    count = 0
    failure = None
    sk_ambient = 0
    d = None
    for lam in lams:
        for eps in eps_list:
            s = AHStructure(f, build_metric(f, lam), build_iacs(f, eps))
            d = build_subflag(s, tp)
            c = certify(d, classes=classes)
            count += 1
            if classes and c["classes"]["ambient"]["SK"]:
                sk_ambient += 1
            if not c["passed"] and failure is None:
                failure = {"lambda": s.g.as_config(), "epsilon": s.j.as_config(), "certificate": c}
    rep = {
        "theta": [i + 1 for i in f.theta],
        "theta_prime": [i + 1 for i in tp],
        "r_prime": positive_labels(f, d.r_prime),
        "tangent_roots": labels(f, d.r_n),
        "dim": d.real_dim,
        "codim": d.real_codim,
        "lambda_draws": [[str(x) for x in lam] for lam in lams],
        "configurations": count,
        "passed": failure is None,
        "counterexample": failure,
    }
    if classes:
        rep["ambient_sk_configurations"] = sk_ambient
    name = "SK inheritance" if classes else "totally geodesic + minimal"
    text = [
        f"sub-flag theta'={rep['theta_prime']}: dim {d.real_dim}, codim {d.real_codim}",
        f"{count} configurations: {name} " + ("pass" if failure is None else "FAIL"),
    ]
    return rep, text, EXIT_OK if failure is None else EXIT_FAIL


def _example(cfg) -> tuple:
    ex = EXAMPLE
    base = dict(cfg)
    base.update({"family": ex["family"], "rank": ex["rank"], "theta": ex["theta"], "theta_prime": ex["theta_prime"]})
    f = make_flag(base)
    r_theta = positive_labels(f, f.r_theta_closed)
    r_prime = positive_labels(f, span_roots(f.rs, [i - 1 for i in ex["theta_prime"]]))
    checks = {
        "r_theta": sorted(r_theta) == sorted(ex["r_theta"]),
        "r_prime": sorted(r_prime) == sorted(ex["r_prime"]),
        "dim_flag": f.real_dim == ex["dim_flag"],
    }
    if cfg["samples"] is None:
        base["samples"] = 5
    sweep, _, code = _subflag_sweep(base, classes=False)
    checks["dim_subflag"] = sweep["dim"] == ex["dim_subflag"]
    checks["certify"] = sweep["passed"]
    ok = all(checks.values())
    rep = {
        "r_theta": r_theta,
        "r_prime": r_prime,
        "dim_flag": f.real_dim,
        "dim_subflag": sweep["dim"],
        "codim": sweep["codim"],
        "configurations": sweep["configurations"],
        "lambda_draws": sweep["lambda_draws"],
        "counterexample": sweep["counterexample"],
        "checks": checks,
        "passed": ok,
    }
    text = [
        "R(theta) = " + ", ".join("+-" + x for x in r_theta),
        "R' = " + ", ".join("+-" + x for x in r_prime),
        f"dim F = {f.real_dim}, sub-flag dim = {sweep['dim']}, codim = {sweep['codim']}",
        f"{sweep['configurations']} configurations certified: " + ("pass" if sweep["passed"] else "FAIL"),
    ]
    text += [f"{k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    return rep, text, EXIT_OK if ok else EXIT_FAIL


def cmd_subflag(cfg) -> tuple:
    f = make_flag(cfg)
    tp = _theta_prime(cfg, f)
    rng = random.Random(int(cfg["seed"]))
    lam = resolve_lambda(f, cfg["lambda"] if cfg["lambda"] is not None else ["1"] * len(f.summands), rng)
    if lam is None:
        lam = random_lambda(f, rng)
    eps_value = cfg["epsilon"] if cfg["epsilon"] is not None else ["+"] * len(f.summands)
    eps_list = resolve_epsilons(f, eps_value)
    out = []
    code = EXIT_OK
    text = []
    for eps in eps_list:
        s = AHStructure(f, build_metric(f, lam), build_iacs(f, eps))
        d = build_subflag(s, tp)
        entry = {
            "theta": [i + 1 for i in f.theta],
            "theta_prime": [i + 1 for i in tp],
            "r_prime": positive_labels(f, d.r_prime),
            "tangent_roots": labels(f, d.r_n),
            "dim": d.real_dim,
            "codim": d.real_codim,
            "lambda": s.g.as_config(),
            "epsilon": s.j.as_config(),
        }
        text.append(f"lambda={[str(x) for x in lam]} epsilon={list(eps)}")
        text.append(f"  R' = {', '.join('+-' + x for x in entry['r_prime'])}")
        text.append(f"  tangent roots = {', '.join(entry['tangent_roots'])}; dim {d.real_dim}, codim {d.real_codim}")
        if cfg["certify"]:
            c = certify(d)
            entry["certificate"] = c
            if not c["passed"]:
                code = EXIT_FAIL
            text.append(
                f"  minimal={c['minimal']} totally_geodesic={c['totally_geodesic']} "
                f"holomorphic={c['holomorphic']} classes={c['classes']['submanifold']}"
            )
        out.append(entry)
    rep = out[0] if len(out) == 1 else {"configurations": out}
    return rep, text, code


def cmd_emit_table(cfg, which: str) -> tuple:
    require(cfg, "family", "rank")
    approx = bool(cfg["approx"])
    if which == "n":
        rs, wb = algebra(str(cfg["family"]), int(cfg["rank"]))
        rows = []
        for a in rs.roots:
            for b in rs.roots:
                if (a, b) in wb.n:
                    row = {"alpha": rs.label(a), "beta": rs.label(b)}
                    sc = render_scalar(wb.n[a, b], approx)
                    row["n"] = sc.pop("value")
                    row.update(sc)
                    rows.append(row)
        text = [f"n[{r['alpha']}, {r['beta']}] = {r['n']}" + (f"  ~{r['approx']} (approx)" if approx else "") for r in rows]
        return {"table": "n", "rows": rows}, text, EXIT_OK
    f = make_flag(cfg)
    if which == "summands":
        rows = [{"class": f"class_{k}", "roots": labels(f, c)} for k, c in enumerate(f.summands)]
        return {"table": "summands", "rows": rows}, [f"{r['class']}: {', '.join(r['roots'])}" for r in rows], EXIT_OK
    if which == "r":
        rng = random.Random(int(cfg["seed"]))
        lam = resolve_lambda(f, cfg["lambda"] if cfg["lambda"] is not None else ["1"] * len(f.summands), rng)
        if lam is None:
            lam = random_lambda(f, rng)
        s = AHStructure(f, build_metric(f, lam), build_iacs(f, [1] * len(f.summands)))
        tab = connection_table(s)
        order = f.rs.index
        rows = []
        for a, b in sorted(tab.r, key=lambda p: (order[p[0]], order[p[1]])):
            row = {"alpha": f.rs.label(a), "beta": f.rs.label(b)}
            sc = render_scalar(tab.r[a, b], approx)
            row["r"] = sc.pop("value")
            row.update(sc)
            rows.append(row)
        text = [f"r[{r['alpha']}, {r['beta']}] = {r['r']}" + (f"  ~{r['approx']} (approx)" if approx else "") for r in rows]
        return {"table": "r", "lambda": s.g.as_config(), "rows": rows}, text, EXIT_OK
    raise InputError(f"unknown table {which!r}")


# ---------------------------------------------------------------------------
# argument parser


def _common(p: argparse.ArgumentParser, *extra: str) -> None:
    p.add_argument("--config", help="JSON file with any of the options below")
    p.add_argument("--family", help="A, B, C or D")
    p.add_argument("--rank", type=int)
    p.add_argument("--theta", help='1-based simple-root indices, e.g. "1,2,5" ("" for the maximal flag)')
    p.add_argument("--json", action="store_true", default=None, help="emit JSON")
    p.add_argument("--approx", action="store_true", default=None, help="add non-authoritative decimal values")
    p.add_argument("--seed", type=int)
    if "metric" in extra:
        p.add_argument("--lambda", dest="lambda", help='"1,1,2" (one per summand class) or "random"')
        p.add_argument("--epsilon", help='"+,+,-" (one per summand class) or "all"')
        p.add_argument("--samples", type=int, help="number of random lambda draws")
    if "sub" in extra:
        p.add_argument("--theta-prime", dest="theta_prime", help='1-based indices of Theta\', e.g. "1,2,3,7"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagherm",
        description="Exact invariant almost Hermitian geometry on classical flag manifolds.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("build", help="root data, R(Theta), summand classes, dimension"))
    _common(sub.add_parser("classify", help="Gray-Hervella class membership"), "metric")

    pv = sub.add_parser("verify", help="theorem and identity checks")
    vs = pv.add_subparsers(dest="target", required=True)
    p = vs.add_parser("ask", help="delta Omega = 0 over all Theta, epsilon and random lambda")
    _common(p, "metric")
    p.add_argument("--max-rank", dest="max_rank", type=int)
    p.add_argument("--min-rank", dest="min_rank", type=int)
    _common(vs.add_parser("basis", help="Weyl-basis identity suite"))
    _common(vs.add_parser("tg", help="sub-flag is totally geodesic and minimal"), "metric", "sub")
    _common(vs.add_parser("sk", help="sub-flag inherits ASK/SK from the ambient structure"), "metric", "sub")
    _common(vs.add_parser("example", help="reproduce the sl(8) sub-flag example"), "metric")

    p = sub.add_parser("subflag", help="sub-flag data and optional certificate")
    _common(p, "metric", "sub")
    p.add_argument("--certify", action="store_true", default=None)

    pe = sub.add_parser("emit-table", help="dump n, r or summand tables")
    es = pe.add_subparsers(dest="table", required=True)
    _common(es.add_parser("n", help="structure constants n_{alpha,beta}"))
    _common(es.add_parser("r", help="connection coefficients r_{alpha,beta}"), "metric")
    _common(es.add_parser("summands", help="isotropy summand classes"))
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = load_config(args)
        if args.command == "build":
            rep, text, code = cmd_build(cfg)
        elif args.command == "classify":
            rep, text, code = cmd_classify(cfg)
        elif args.command == "verify":
            rep, text, code = cmd_verify(cfg, args.target)
        elif args.command == "subflag":
            rep, text, code = cmd_subflag(cfg)
        else:
            rep, text, code = cmd_emit_table(cfg, args.table)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg["json"]:
        stdout.write(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write("\n".join(text) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
