"""Acceptance criteria 1-8, each at its stated tolerance."""

import json
import re
import subprocess
import sys
import time

import numpy as np

from subord_lab.analytic import Z, evaluate, differentiate, pow_principal
from subord_lab.applications import (corollary_expr, philike_expr, philike_identity_residual,
                                     starlike_ratio, theorem31_expr)
from subord_lab.falsify import run_campaign
from subord_lab.families import JanowskiParams, example21_membership, janowski
from subord_lab.geometry import Outcome, SampleGrid, test_subordination
from subord_lab.oracle import finite_difference, grid_containment
from subord_lab.params import ParamSet
from subord_lab.theorem import bracket, check_hypotheses, class_membership, transform_flat, transform_P

from support import (F_FIXTURES, mobius_suite, philike_fixtures, random_disk_points,
                     random_tree)

A_SWEEP = [round(0.1 * k, 1) for k in range(1, 10)]
B_SWEEP = [round(-0.1 * k, 1) for k in range(1, 10)]


def test_criterion_1_hypothesis_fixture(record):
    start = time.perf_counter()
    reports = check_hypotheses(janowski(0.5, -0.5), ParamSet(alpha=1, mu=1, beta=1, gamma=0, delta=0),
                               SampleGrid())
    elapsed = time.perf_counter() - start
    mins = [r.min_value for r in reports]
    ok = (np.allclose(mins, [0.6667, 0.3338, 0.3338], atol=2e-3)
          and all(r.passed for r in reports) and elapsed < 5.0)
    assert record(1, ok, f"mins={[round(m, 5) for m in mins]}, {elapsed:.2f}s")


def test_criterion_2_philike_identity(record):
    start = time.perf_counter()
    fixtures = philike_fixtures(20)
    labels = [f[0] for f in fixtures]
    assert "z/(1-z), w, 1" in labels and "z/(1-z), w+w^2/2, 0.7" in labels
    worst = max(philike_identity_residual(f, phi, a, SampleGrid()) for _, f, phi, a in fixtures)
    elapsed = time.perf_counter() - start
    ok = len(fixtures) == 20 and worst <= 1e-9 and elapsed < 30.0
    assert record(2, ok, f"max residual {worst:.3g} over {len(fixtures)} fixtures, {elapsed:.2f}s")


def _branch_safe(*arrays):
    keep = np.ones(arrays[0].shape, dtype=bool)
    for a in arrays:
        keep &= np.where(a.real >= 0, np.abs(a), np.abs(a.imag)) > 0.1
    return keep


def test_criterion_3_reductions(record):
    rng = np.random.default_rng(31)
    worst_a = 0.0
    names = sorted(F_FIXTURES)
    for k in range(20):
        f = F_FIXTURES[names[k % len(names)]]
        a = float(rng.uniform(0.1, 2.0))
        z = random_disk_points(rng, 1000, 0.95)
        lhs = evaluate(philike_expr(f, Z, a).expr, z)
        rhs = evaluate(corollary_expr(f, "cor33", a).expr, z)
        worst_a = max(worst_a, float(np.max(np.abs(lhs - rhs))))
    worst_b = 0.0
    for k in range(20):
        f = F_FIXTURES[names[k % len(names)]]
        lam = float(rng.uniform(0.2, 2.0))
        alpha, mu = float(rng.uniform(0, 2)), float(rng.uniform(0.2, 1.0))
        app = theorem31_expr(f, ParamSet(alpha=alpha, mu=mu, lam=lam))
        ps = ParamSet(alpha=alpha, mu=mu, beta=1 / lam, gamma=0, delta=0)
        p = starlike_ratio(f)
        z = random_disk_points(rng, 1000, 0.95)
        keep = _branch_safe(evaluate(p, z), evaluate(bracket(p, ps), z))
        z = z[keep]
        lhs = evaluate(app.expr, z)
        rhs = evaluate(transform_P(p, ps), z)
        worst_b = max(worst_b, float(np.max(np.abs(lhs - rhs))))
    ok = worst_a <= 1e-10 and worst_b <= 1e-10
    assert record(3, ok, f"phi-like vs cor33 {worst_a:.3g}, theorem31 vs transform {worst_b:.3g}")


def test_criterion_4_falsification(record):
    start = time.perf_counter()
    report = run_campaign(500, seed=7)
    elapsed = time.perf_counter() - start
    kinds = {r["kind"] for r in report["instances"]}
    ok = (report["inconsistencies"] == 0 and report["inconclusive_rate"] <= 0.05
          and kinds == {"dominant", "subordinant", "sandwich"} and elapsed < 120.0)
    assert record(4, ok, f"{report['inconsistencies']} inconsistent, inconclusive rate "
                         f"{report['inconclusive_rate']:.3f}, {elapsed:.1f}s")


def test_criterion_5_oracle_equivalence(record):
    suite = mobius_suite()
    agree = decided = 0
    for _, f, g in suite:
        v = test_subordination(f, g, SampleGrid())
        if v.outcome is Outcome.INCONCLUSIVE:
            continue
        decided += 1
        agree += v.holds == grid_containment(f, g)
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(100):
        pts = random_disk_points(rng, 100)
        m = random_tree(rng, pts, 6)
        d = evaluate(differentiate(m), pts)
        fd = np.array([finite_difference(m, z) for z in pts])
        worst = max(worst, float(np.max(np.abs(d - fd) / (1 + np.abs(d)))))
    ok = len(suite) == 50 and decided > 0 and agree == decided and worst <= 1e-6
    assert record(5, ok, f"{agree}/{decided} decided pairs agree ({len(suite) - decided} inconclusive), "
                         f"derivative error {worst:.3g}")


def test_criterion_6_example21_sweep(record):
    violations = []
    grid = SampleGrid()
    for delta in (0.0, 2.0):
        ps = ParamSet(beta=1, gamma=0, delta=delta)
        for A in A_SWEEP:
            for B in B_SWEEP:
                first, _ = example21_membership(JanowskiParams(A, B), ps)
                if first and not class_membership(janowski(A, B), ps, grid).passed:
                    violations.append((A, B, delta))
    ref0 = example21_membership(JanowskiParams(0.5, -0.5), ParamSet(delta=0))[0]
    ref2 = example21_membership(JanowskiParams(0.5, -0.5), ParamSet(delta=2))[0]
    ok = not violations and ref0 is False and ref2 is True
    assert record(6, ok, f"{len(violations)} violations; (0.5,-0.5,0)->{ref0}, (0.5,-0.5,2)->{ref2}")


FLAT_FIXTURES = [
    (janowski(0.5, -0.5), ParamSet()),
    (janowski(0.5, -0.5), ParamSet(alpha=0.5, mu=0.5)),
    (janowski(0.8, -0.2), ParamSet(alpha=1.5, mu=0.5, gamma=0.3)),
    (janowski(0.3, -0.6), ParamSet(alpha=0.7, mu=0.9, beta=2, delta=0.5)),
    (janowski(0.9, -0.9), ParamSet(alpha=2.0, mu=0.3)),
    (1 + Z, ParamSet(alpha=0.25, mu=0.75, delta=1.0)),
    (1 + 0.5 * Z + 0.2 * Z * Z, ParamSet(alpha=1.0, mu=0.6, beta=1 + 0.5j, gamma=0.2)),
    (janowski(1.0, -1.0), ParamSet(alpha=0.5, mu=1.0, gamma=1.0)),
    (janowski(0.6, 0.1), ParamSet(alpha=-0.2, mu=0.4, delta=0.3j)),
    (janowski(0.4, -0.4), ParamSet(alpha=3.0, mu=1.0, beta=0.5, gamma=0.5)),
]


def test_criterion_7_flat_power_consistency(record):
    rng = np.random.default_rng(77)
    worst, counted = 0.0, []
    for p, ps in FLAT_FIXTURES:
        z = np.empty(0, dtype=complex)
        while z.size < 1000:
            cand = random_disk_points(rng, 4000, 0.95)
            pv, bv = evaluate(p, cand), evaluate(bracket(p, ps), cand)
            keep = _branch_safe(pv, bv) & (np.abs(ps.ratio * np.angle(pv) + np.angle(bv)) < np.pi)
            z = np.concatenate([z, cand[keep]])
        z = z[:1000]
        lhs = pow_principal(evaluate(transform_flat(p, ps), z), ps.mu)
        rhs = evaluate(transform_P(p, ps), z)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        counted.append(z.size)
    ok = worst <= 1e-9 and counted == [1000] * 10
    assert record(7, ok, f"max |flat^mu - P| = {worst:.3g} over 10 x 1000 points")


def _strip_timestamp(text: str) -> str:
    return re.sub(r'\n\s*"timestamp": "[^"]*",?', "", text)


def _cli(tmp_path, name, *args):
    out = tmp_path / name
    out.mkdir()
    proc = subprocess.run([sys.executable, "-m", "subord_lab", *args, "--out", str(out)],
                          capture_output=True, text=True)
    return proc.returncode, out


def test_criterion_8_cli(record, tmp_path):
    texts = []
    for k in range(2):
        code, out = _cli(tmp_path, f"run{k}", "falsify", "--trials", "100", "--seed", "7")
        texts.append(((out / "falsify.json").read_bytes().decode(), code))
    identical = _strip_timestamp(texts[0][0]) == _strip_timestamp(texts[1][0])
    report = json.loads(texts[0][0])
    codes_ok = texts[0][1] == texts[1][1] == (1 if report["inconsistencies"] else 0)
    fixtures = [
        (["test-subordination", "--f", "1+1.9z", "--g", "(1+z)/(1-z)"], "test-subordination", 1),
        (["test-subordination", "--f", "1+z", "--g", "(1+z)/(1-z)"], "test-subordination", 0),
        (["check-hypotheses", "--family", "janowski", "--A", "0.5", "--B", "-0.5"], "check-hypotheses", 0),
        (["check-class", "--p", "1-2z"], "check-class", 1),
        (["test-subordination", "--f", "1+0.1z", "--g", "1+z+0.9z^3"], "test-subordination", 2),
        (["check-class", "--family", "nope"], None, 3),
    ]
    for i, (args, command, expected) in enumerate(fixtures):
        code, out = _cli(tmp_path, f"fx{i}", *args)
        codes_ok &= code == expected
        if command:
            codes_ok &= json.loads((out / f"{command}.json").read_text())["exit_code"] == expected
    ok = identical and codes_ok
    assert record(8, ok, f"byte-identical modulo timestamp: {identical}; exit codes match: {codes_ok}")
