"""Verification harness: named suites, flat-file config, JSON/markdown reports.

Every suite is a pure function of (config, seed) and the report is
serialized with sorted keys and no timing data, so identical inputs give
byte-identical JSON.  Expected-fail suites (the no-go results) count as
passing exactly when they produce their witness.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import pi

import numpy as np

from . import __version__, algebra, envariance, hilbert, moyalpos, quantion
from .errors import CompalgError, ConfigError, SchemaMismatch, UnexpectedPass
from .phasepoly import CLASSES, ELLIPTIC, PhasePoly, alpha, hbar_zero_limit, poisson
from .scalars import (
    SplitComplex,
    check_polarization_parallelogram,
    minimizer_nonuniqueness_witness,
    para_cauchy_schwarz_holds,
    revalidate_witness,
)

SCHEMA_VERSION = 1


@dataclass
class SuiteConfig:
    suites: list = field(default_factory=lambda: ["all"])
    seed: int = 0
    hbar: list = field(default_factory=lambda: [Fraction(2)])
    degree_cap: int = 4
    dim_cap: int = 6
    ghost_bound: int = 2
    berezin_n: int = 16
    identity_count: int = 25
    pair_count: int = 200
    report: str = ""
    format: str = "json"
    record_timings: bool = False


_CONFIG_KEYS = {
    "suites", "seed", "hbar", "degree_cap", "dim_cap", "ghost_bound",
    "berezin_n", "identity_count", "pair_count", "report", "format",
    "record_timings",
}


def parse_config(text: str) -> SuiteConfig:
    """Flat key = value lines; '#' comments; lists comma-separated."""
    cfg = SuiteConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip().strip('"')
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key == "suites":
            cfg.suites = [s.strip() for s in val.split(",") if s.strip()]
        elif key == "hbar":
            cfg.hbar = [Fraction(s.strip()) for s in val.split(",")]
        elif key in ("report", "format"):
            setattr(cfg, key, val)
        elif key == "record_timings":
            cfg.record_timings = val.lower() in ("1", "true", "yes")
        else:
            setattr(cfg, key, int(val))
    _validate(cfg)
    return cfg


def _validate(cfg: SuiteConfig):
    for cap in (cfg.degree_cap, cfg.dim_cap, cfg.ghost_bound, cfg.berezin_n,
                cfg.identity_count, cfg.pair_count):
        if cap <= 0:
            raise ConfigError("all caps and counts must be positive")
    names = set(SUITES)
    for s in cfg.suites:
        if s != "all" and s not in names:
            raise ConfigError(f"unknown suite {s!r}")
    if cfg.format not in ("json", "md"):
        raise ConfigError(f"unknown format {cfg.format!r}")


def config_echo(cfg: SuiteConfig) -> dict:
    return {
        "suites": list(cfg.suites),
        "seed": cfg.seed,
        "hbar": [str(h) for h in cfg.hbar],
        "degree_cap": cfg.degree_cap,
        "dim_cap": cfg.dim_cap,
        "ghost_bound": cfg.ghost_bound,
        "berezin_n": cfg.berezin_n,
        "identity_count": cfg.identity_count,
        "pair_count": cfg.pair_count,
    }


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _result(name, expected, passed, samples, failures=None, max_residual=0.0, extra=None):
    out = {
        "name": name,
        "anchor": SUITES[name][1],
        "expected": expected,
        "verdict": "pass" if passed else "fail",
        "samples": samples,
        "failures": failures or [],
        "max_residual": max_residual,
    }
    if extra:
        out["witness"] = extra
    return out


def _suite_identities(cls):
    def run(cfg: SuiteConfig, seed: int):
        failures = []
        total = 0
        worst = 0.0
        for h in cfg.hbar:
            for dof in (1, 2):
                carrier = algebra.phase_poly_carrier(cls, h, dof, cfg.degree_cap)
                for rep in algebra.check_all_identities(
                    carrier, cfg.identity_count, seed
                ):
                    total += rep.samples
                    worst = max(worst, rep.max_residual)
                    if not rep.passed:
                        failures.append({"carrier": rep.carrier, "identity": rep.identity})
        name = f"identities-{cls}-phase"
        return _result(name, "pass", not failures, total, failures, worst)

    return run


def _suite_hilbert(cfg: SuiteConfig, seed: int):
    failures = []
    total = 0
    worst = 0.0
    for dim in (4, min(6, cfg.dim_cap)):
        carrier = hilbert.matrix_carrier(dim)
        for rep in algebra.check_all_identities(carrier, cfg.identity_count, seed):
            total += rep.samples
            worst = max(worst, rep.max_residual)
            if not rep.passed:
                failures.append({"carrier": rep.carrier, "identity": rep.identity})
    return _result("identities-hilbert", "pass", not failures, total, failures, worst)


def _suite_monoid(cfg: SuiteConfig, seed: int):
    failures = []
    total = 0
    worst = 0.0
    for cls in CLASSES:
        c = algebra.phase_poly_carrier(cls, cfg.hbar[0], 1, 2)
        rep = algebra.check_monoid(c, c, c, count=max(4, cfg.identity_count // 3), seed=seed)
        total += rep.samples
        worst = max(worst, rep.max_residual)
        if not rep.passed:
            failures.extend(rep.failures)
    return _result("composition-monoid", "pass", not failures, total, failures, worst)


def _suite_falsify_a(cfg: SuiteConfig, seed: int):
    c = algebra.phase_poly_carrier(ELLIPTIC, cfg.hbar[0], 1, 3)
    witnesses = []
    ok = True
    for a in (Fraction(1), Fraction(-1), Fraction(1, 2)):
        try:
            rep = algebra.falsify_nonzero_a(c, c, a, count=50, seed=seed)
            witnesses.append({"a": str(a), "counterexamples": len(rep.failures)})
            ok &= rep.passed
        except UnexpectedPass:
            ok = False
    rep0 = algebra.falsify_nonzero_a(c, c, Fraction(0), count=50, seed=seed)
    ok &= rep0.passed
    return _result(
        "falsify-nonzero-a", "fail", ok, 200, max_residual=0.0, extra=witnesses
    )


def _suite_triviality(cfg: SuiteConfig, seed: int):
    c = algebra.phase_poly_carrier(ELLIPTIC, cfg.hbar[0], 1, 3)
    rep = algebra.single_product_triviality(c, count=cfg.identity_count, seed=seed)
    return _result(
        "single-product-triviality", "pass", rep.passed, rep.samples,
        rep.failures, rep.max_residual,
    )


def _suite_deformation(cfg: SuiteConfig, seed: int):
    rng = random.Random(seed)
    bad = []
    for i in range(cfg.pair_count):
        f = algebra.sample_poly(rng, 1, cfg.degree_cap)
        g = algebra.sample_poly(rng, 1, cfg.degree_cap)
        if hbar_zero_limit(f, g) != poisson(f, g):
            bad.append({"sample": i})
    q, p = PhasePoly.q(1, 2), PhasePoly.p(1, 2)
    if poisson(q, p) != PhasePoly.const(1, 2):
        bad.append({"sample": "canonical"})
    if poisson(q, PhasePoly.p(2, 2)) != PhasePoly(2):
        bad.append({"sample": "canonical-cross"})
    return _result("deformation-limit", "pass", not bad, cfg.pair_count + 2, bad)


def _suite_ghost(cfg: SuiteConfig, seed: int):
    try:
        w = moyalpos.ghost_search(cfg.hbar[0], cfg.ghost_bound)
        extra = {"coeffs": list(w.coeffs), "value": str(w.value_real), "g": w.canonical}
        return _result("ghost-hyperbolic", "fail", True, (2 * cfg.ghost_bound + 1) ** 5, extra=extra)
    except CompalgError as e:
        return _result("ghost-hyperbolic", "fail", False, 0, [{"error": str(e)}])


def _suite_positivity(cfg: SuiteConfig, seed: int):
    bound = min(cfg.ghost_bound, 1)  # full sweep over both levels stays fast
    mn = moyalpos.elliptic_control_sweep(cfg.hbar[0], bound)
    ok = mn >= 0
    return _result(
        "positivity-elliptic", "pass", ok, 2 * (2 * bound + 1) ** 5,
        extra={"min_value": str(mn)},
    )


def _suite_split_geometry(cfg: SuiteConfig, seed: int):
    rng = random.Random(seed)
    bad = []
    checked_cs = 0
    for i in range(cfg.pair_count):
        x = SplitComplex(Fraction(rng.randint(-20, 20), rng.randint(1, 4)),
                         Fraction(rng.randint(-20, 20), rng.randint(1, 4)))
        y = SplitComplex(Fraction(rng.randint(-20, 20), rng.randint(1, 4)),
                         Fraction(rng.randint(-20, 20), rng.randint(1, 4)))
        pol, par = check_polarization_parallelogram(x, y)
        if not (pol and par):
            bad.append({"sample": i})
        try:
            if not para_cauchy_schwarz_holds(x, y):
                bad.append({"sample": i, "law": "cauchy-schwarz"})
            checked_cs += 1
        except CompalgError:
            pass
    try:
        revalidate_witness(minimizer_nonuniqueness_witness())
    except AssertionError:
        bad.append({"law": "minimizer-witness"})
    return _result(
        "split-complex-geometry", "pass", not bad, cfg.pair_count,
        bad, extra={"cauchy_schwarz_admissible": checked_cs},
    )


def _suite_minimizer(cfg: SuiteConfig, seed: int):
    try:
        w = minimizer_nonuniqueness_witness()
        extra = {
            "segment": [str(w.segment[0]), str(w.segment[1])],
            "distance_square": str(w.distance_square(Fraction(0))),
        }
        return _result("minimizer-no-go", "fail", True, 101, extra=extra)
    except AssertionError as e:
        return _result("minimizer-no-go", "fail", False, 0, [{"error": str(e)}])


def _suite_kahler(cfg: SuiteConfig, seed: int):
    rng = random.Random(seed)
    bad = []
    for n in range(1, 6):
        tr = hilbert.build_kahler(n)
        for _ in range(20):
            x = np.array([rng.randint(-5, 5) for _ in range(2 * n)])
            y = np.array([rng.randint(-5, 5) for _ in range(2 * n)])
            if not hilbert.hermitean_property_check(tr, x, y):
                bad.append({"n": n, "law": "hermitean"})
    tr = hilbert.build_kahler(2)
    for i in range(20):
        w = hilbert.sample_compatible_symplectic(rng, 2)
        x = np.array([rng.gauss(0, 1) for _ in range(4)])
        x = x / np.sqrt(x @ tr.g.astype(float) @ x)
        if not hilbert.normalization_constraint_check(tr, x, w):
            bad.append({"sample": i, "law": "normalization"})
    return _result("kahler", "pass", not bad, 120, bad)


def _suite_berezin(cfg: SuiteConfig, seed: int):
    import compalg.berezin as bz

    N, h = cfg.berezin_n, 1.0
    grid = bz.build_grid(h, N, 2)
    q, p = PhasePoly.q(), PhasePoly.p()
    one = PhasePoly.const(1, 1)
    bad = []
    e1 = float(np.max(np.abs(bz.trusted(bz.berezin_quantize(one, h, N, grid)) - np.eye(N // 2))))
    if e1 > 1e-6:
        bad.append({"law": "identity", "err": e1})
    qq = bz.berezin_quantize(q, h, N, grid)
    pp_ = bz.berezin_quantize(p, h, N, grid)
    e2 = float(np.max(np.abs(bz.trusted(qq) - bz.trusted(bz.ladder_position_oracle(h, N)))))
    e3 = float(np.max(np.abs(bz.trusted(pp_) - bz.trusted(bz.ladder_momentum_oracle(h, N)))))
    if max(e2, e3) > 1e-6:
        bad.append({"law": "ladder", "err": max(e2, e3)})
    corr = hilbert.op_alpha(qq, pp_, h)
    k = N // 2 - 1
    e4 = float(np.max(np.abs(corr[:k, :k] - np.eye(N)[:k, :k])))
    if e4 > 1e-5:
        bad.append({"law": "correspondence", "err": e4})
    return _result("berezin", "pass", not bad, 4, bad, max(e1, e2, e3, e4))


def _suite_quantions(cfg: SuiteConfig, seed: int):
    rng = random.Random(seed)
    bad = []
    for i in range(cfg.pair_count):
        qn = quantion.sample_quantion(rng)
        scale = max(1.0, abs(quantion.q_det(qn)) ** 2)
        if not quantion.norms_commute(qn, 1e-12 * scale):
            bad.append({"sample": i, "law": "norms-commute"})
        if not quantion.anorm(qn).future_oriented(1e-9):
            bad.append({"sample": i, "law": "future-oriented"})
    rep = quantion.rep_discovery(seed)
    for i in range(cfg.pair_count):
        qn = quantion.sample_quantion(rng)
        if not quantion.dirac_current_check(qn, rep, 1e-12):
            bad.append({"sample": i, "law": "dirac-current"})
    return _result(
        "quantions", "pass", not bad, 2 * cfg.pair_count, bad,
        extra={"gamma_rep": rep.label},
    )


def _suite_envariance(kind):
    def run(cfg: SuiteConfig, seed: int):
        rng = random.Random(seed)
        bad = []
        count = min(cfg.pair_count, 100)
        for i in range(count):
            d1, d2 = rng.randint(2, 4), rng.randint(2, 4)
            st = envariance.random_state(rng, d1, d2)
            r = min(d1, d2)
            phases = [rng.uniform(-pi, pi) for _ in range(r)]
            if kind == "reflexivity":
                winds = [rng.randint(0, 2) for _ in range(r)]
                ok = envariance.verify_reflexivity(st, phases, winds)
                ok = ok and envariance.winding_independence(st, phases)
            elif kind == "symmetry":
                ok = envariance.verify_symmetry(st, phases)
            else:
                st = envariance.random_state(rng, 2, 2)
                phases = [rng.uniform(-pi, pi) for _ in range(2)]
                xi = np.array([rng.gauss(0, 1) + 1j * rng.gauss(0, 1) for _ in range(2)])
                eta = np.array([rng.gauss(0, 1) + 1j * rng.gauss(0, 1) for _ in range(2)])
                ok = envariance.verify_transitivity(st, phases, xi, eta)
            if not ok:
                bad.append({"sample": i})
        return _result(f"envariance-{kind}", "pass", not bad, count, bad)

    return run


# name -> (runner, anchor topic, expected verdict)
SUITES = {
    "identities-elliptic-phase": (_suite_identities(ELLIPTIC), "two-product identity table, sine/cosine realization", "pass"),
    "identities-parabolic-phase": (_suite_identities("parabolic"), "two-product identity table, bracket/product realization", "pass"),
    "identities-hyperbolic-phase": (_suite_identities("hyperbolic"), "two-product identity table, sinh/cosh realization", "pass"),
    "identities-hilbert": (_suite_hilbert, "two-product identity table, operator realization", "pass"),
    "composition-monoid": (_suite_monoid, "bipartite composition commutativity and associativity", "pass"),
    "falsify-nonzero-a": (_suite_falsify_a, "bipartite skew-product coefficient must vanish", "fail"),
    "single-product-triviality": (_suite_triviality, "one-product composition ansatz collapses", "pass"),
    "deformation-limit": (_suite_deformation, "classical limit of the skew product", "pass"),
    "ghost-hyperbolic": (_suite_ghost, "hyperbolic positivity failure witness", "fail"),
    "positivity-elliptic": (_suite_positivity, "elliptic positivity of the squared functional", "pass"),
    "split-complex-geometry": (_suite_split_geometry, "indefinite para-norm identities", "pass"),
    "minimizer-no-go": (_suite_minimizer, "indefinite distance minimizer non-uniqueness", "fail"),
    "kahler": (_suite_kahler, "flat compatible triple and normalization invariance", "pass"),
    "berezin": (_suite_berezin, "coherent-state quantization cross-checks", "pass"),
    "quantions": (_suite_quantions, "quantionic norms, current, and factorization", "pass"),
    "envariance-reflexivity": (_suite_envariance("reflexivity"), "counter-unitary restores the state", "pass"),
    "envariance-symmetry": (_suite_envariance("symmetry"), "equivalence symmetry construction", "pass"),
    "envariance-transitivity": (_suite_envariance("transitivity"), "equivalence transitivity construction", "pass"),
}


# ---------------------------------------------------------------------------
# Run, report, diff
# ---------------------------------------------------------------------------

def run(cfg: SuiteConfig) -> dict:
    names = sorted(SUITES) if "all" in cfg.suites else sorted(set(cfg.suites))
    results = []
    overall = True
    for name in names:
        runner, _, expected = SUITES[name]
        t0 = time.monotonic()
        res = runner(cfg, cfg.seed)
        wall = time.monotonic() - t0
        res["expected"] = expected
        res["wall_ms"] = round(wall * 1000.0, 1) if cfg.record_timings else 0
        if cfg.record_timings:
            print(f"  {name}: {wall:.2f}s", file=sys.stderr)
        overall &= res["verdict"] == "pass"
        results.append(res)
    return {
        "version": SCHEMA_VERSION,
        "tool": __version__,
        "config": config_echo(cfg),
        "suites": results,
        "verdict": "pass" if overall else "fail",
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_md(report: dict) -> str:
    lines = [
        f"# verification report (tool {report['tool']}, schema {report['version']})",
        "",
        "| suite | expected | verdict | samples | max residual |",
        "|---|---|---|---|---|",
    ]
    for s in report["suites"]:
        lines.append(
            f"| {s['name']} | {s['expected']} | {s['verdict']} | "
            f"{s['samples']} | {s['max_residual']:.3g} |"
        )
    lines += ["", f"overall: **{report['verdict']}**", ""]
    return "\n".join(lines)


def diff_reports(old: dict, new: dict) -> dict:
    """Structural diff; wall times ignored, version-only changes flagged."""
    if old.get("version") != new.get("version"):
        raise SchemaMismatch(f"{old.get('version')} vs {new.get('version')}")

    def strip(rep):
        return {
            s["name"]: {k: v for k, v in s.items() if k != "wall_ms"}
            for s in rep["suites"]
        }

    so, sn = strip(old), strip(new)
    changed = sorted(
        name for name in set(so) | set(sn) if so.get(name) != sn.get(name)
    )
    meta_only = not changed and old.get("tool") != new.get("tool")
    return {"changed_suites": changed, "metadata_only": meta_only}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="compalg")
    sub = parser.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--config", default=None)
    v.add_argument("--suite", action="append", default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--report", default=None)
    v.add_argument("--format", choices=("json", "md"), default=None)
    v.add_argument("--timings", action="store_true")

    sub.add_parser("suites", help="list suites with anchors and expected verdicts")

    d = sub.add_parser("diff", help="structural diff of two JSON reports")
    d.add_argument("old")
    d.add_argument("new")

    args = parser.parse_args(argv)
    try:
        if args.cmd == "suites":
            for name in sorted(SUITES):
                _, anchor, expected = SUITES[name]
                print(f"{name:32s} {expected:5s} {anchor}")
            return 0
        if args.cmd == "diff":
            with open(args.old) as f:
                old = json.load(f)
            with open(args.new) as f:
                new = json.load(f)
            delta = diff_reports(old, new)
            print(json.dumps(delta, sort_keys=True, indent=2))
            return 1 if delta["changed_suites"] else 0

        text = ""
        if args.config:
            with open(args.config) as f:
                text = f.read()
        cfg = parse_config(text)
        if args.suite:
            cfg.suites = args.suite
        if args.seed is not None:
            cfg.seed = args.seed
        if args.report is not None:
            cfg.report = args.report
        if args.format is not None:
            cfg.format = args.format
        if args.timings:
            cfg.record_timings = True
        _validate(cfg)
        rep = run(cfg)
        out = report_json(rep) if cfg.format == "json" else report_md(rep)
        if cfg.report:
            with open(cfg.report, "w") as f:
                f.write(out)
        else:
            sys.stdout.write(out)
        return 0 if rep["verdict"] == "pass" else 1
    except (ConfigError, SchemaMismatch, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
