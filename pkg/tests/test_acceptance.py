"""Acceptance suite: one test per release criterion, each printing a verdict.

Every comparison is exact (zero tolerance); expected values come from
independent brute-force computation or from golden files recorded before
the evaluator was built.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

from __future__ import annotations

import json
import random
import time

import pytest

from biframe.cli import main as cli_main
from biframe.engine import minimal_data
from biframe.harness import (
    Budget,
    Sampler,
    _mending_rhs,
    _sewing_rhs,
    axiom_check,
    functoriality_check,
    phase_twist_mutant,
)
from biframe.intmat import congruent, random_unimodular, signature_symmetric
from biframe.presentation import Presentation
from biframe.scalars import ExactScalar

THEORY_NAMES = ["semion", "conj_semion", "toric_code", "z3", "z4"]


def _report(criterion: int, name: str, ok: bool, elapsed: float) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion} ({name}): {verdict} [{elapsed:.1f}s]")
    assert ok


def test_criterion_1_kirby_invariance(theories):
    start = time.monotonic()
    kirby_budget = Budget(
        seed=101, max_surgery=4, max_genus=2, max_handlebodies=2, max_link=3
    )
    trials_per_theory = 1000
    for name in THEORY_NAMES:
        theory = theories[name]
        sampler = Sampler(theory, kirby_budget)
        for k in range(trials_per_theory):
            p = sampler.presentation()
            if len(p.circles) < 2:
                p = sampler.presentation(n_surgery=2)
            colors = sampler.colors(p)
            before = theory.evaluate(p, colors)
            q = p
            script = sampler.slide_script(p, 20)
            assert len(script) == 20
            for moving, over, sign in script:
                q = q.slide(moving, over, sign)
            after = theory.evaluate(q, colors)
            assert after.equals(before, theory.group_order), (name, k)
            assert q.signature() == p.signature(), (name, k)
    elapsed = time.monotonic() - start
    _report(1, "Kirby invariance, 1000 x 20 slides per theory", elapsed < 60.0, elapsed)


def test_criterion_2_anomaly_law(theories):
    start = time.monotonic()
    for name in THEORY_NAMES:
        theory = theories[name]
        gamma = theory.gauss_milgram()
        assert (gamma * gamma.conj()).equals(ExactScalar.one(), theory.group_order)
        sampler = Sampler(theory, Budget(seed=202, max_surgery=3, max_genus=2))
        for k in range(200):
            p = sampler.presentation()
            colors = sampler.colors(p)
            sign = sampler.rng.choice([1, -1])
            lhs = theory.evaluate(p.blow_up(sign), colors)
            rhs = gamma**sign * theory.evaluate(p, colors)
            assert lhs.equals(rhs, theory.group_order), (name, k, sign)
            assert p.blow_up(sign).signature() == p.signature() + sign
    _report(2, "blow-up scales by gamma^sign; |gamma| = 1", True, time.monotonic() - start)


def test_criterion_3_known_manifolds(theories, fixtures_dir):
    start = time.monotonic()
    semion = theories["semion"]
    sphere = semion.evaluate(Presentation.empty())
    assert sphere == ExactScalar.from_rational(1, -1)  # D^(-1)

    s1s2 = semion.evaluate(Presentation.assemble(surgery=[("K", 0)]))
    assert s1s2.equals(ExactScalar.one(), 2)

    lens = Presentation.assemble(surgery=[("K", 2)])
    assert semion.evaluate(lens).is_zero

    toric = theories["toric_code"]
    golden = json.loads((fixtures_dir / "golden_toric_L21.json").read_text())
    assert toric.evaluate(lens).to_json() == golden
    _report(3, "S^3, S^1xS^2, L(2,1) values", True, time.monotonic() - start)


def test_criterion_4_axiom_suite(theories):
    start = time.monotonic()
    budget = Budget(seed=404, random_instances=200, max_genus=2, exhaustive=True)
    for name in THEORY_NAMES:
        md = minimal_data(theories[name])
        report = axiom_check(md, budget)
        bad = report.failures()
        assert not bad, (name, bad[0].axiom if bad else None)
    # The corrupted oracle must be caught by the Sewing axiom.
    mutant_report = axiom_check(
        phase_twist_mutant(theories["semion"]),
        Budget(seed=404, random_instances=25),
    )
    sewing_failures = [
        r for r in mutant_report.results if r.axiom == "Sewing" and not r.passed
    ]
    assert sewing_failures
    _report(
        4,
        "Symmetry/Nondegeneracy/Sewing/Mending x 5 theories + mutation fixture",
        True,
        time.monotonic() - start,
    )


def test_criterion_5_functor_laws(theories):
    start = time.monotonic()
    budget = Budget(seed=505, random_instances=100, max_genus=2)
    for name in THEORY_NAMES:
        md = minimal_data(theories[name])
        report = functoriality_check(md, budget)
        bad = report.failures()
        assert not bad, (name, bad[0].axiom if bad else None)
        compositions = [r for r in report.results if r.axiom == "Composition"]
        assert len(compositions) == 100
    _report(
        5,
        "composition/identity/union/symmetry/zig-zag x 5 theories",
        True,
        time.monotonic() - start,
    )


def test_criterion_6_sewing_mending_vs_algebra(theories):
    start = time.monotonic()
    for name in THEORY_NAMES:
        theory = theories[name]
        md = minimal_data(theory)
        sampler = Sampler(theory, Budget(seed=606, max_genus=2, max_surgery=2))
        rng = sampler.rng
        n = theory.group_order
        for k in range(50):
            g = rng.randint(0, 2)
            p, q = sampler.sew_pair(g)
            sewn = p.sew(q)
            hx = p.total_genus - g
            for colors in _sample_colorings(theory, sewn.total_genus, rng, 8):
                lhs = theory.evaluate(sewn, colors)
                rhs = _sewing_rhs(md, p, q, g, colors[:hx], colors[hx:])
                assert lhs.equals(rhs, n), (name, "sew", k)
            m = sampler.mend_instance(rng.randint(0, 2))
            gm = m.handlebodies[0].genus
            mended = m.mend()
            for colors in _sample_colorings(theory, mended.total_genus, rng, 8):
                lhs = theory.evaluate(mended, colors)
                rhs = _mending_rhs(md, m, gm, colors)
                assert lhs.equals(rhs, n), (name, "mend", k)
        # Frozen normalization: the D-exponent is -(surgery count + 1),
        # with no per-handlebody adjustment term.
        assert theory.evaluate(Presentation.empty()).dpow == -1
        three = Presentation.assemble(surgery=[("A", 1), ("B", 0), ("C", -1)])
        assert theory.evaluate(three).dpow == -4
    _report(
        6,
        "combinatorial sewing/mending = dual-element contraction; constants frozen",
        True,
        time.monotonic() - start,
    )


def _sample_colorings(theory, total, rng, cap):
    full = list(theory.colorings(total))
    if len(full) <= cap:
        return full
    return [full[rng.randrange(len(full))] for _ in range(cap)]


def test_criterion_7_matrix_infrastructure():
    start = time.monotonic()
    rng = random.Random(707)
    for _ in range(1000):
        n = rng.randint(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-3, 3)
        u = random_unimodular(rng, n)
        assert signature_symmetric(congruent(m, u)) == signature_symmetric(m)

    for _ in range(200):
        n = rng.randint(1, 4)
        p = Presentation.assemble(
            surgery=[(f"K{i}", rng.randint(-3, 3)) for i in range(n)],
            links={
                (f"K{i}", f"K{j}"): rng.randint(-2, 2)
                for i in range(n)
                for j in range(i + 1, n)
            },
        )
        sign = rng.choice([1, -1])
        assert p.blow_up(sign).signature() == p.signature() + sign
        homology = p.first_homology()
        q = p
        for _ in range(6):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i != j:
                q = q.slide(f"K{i}", f"K{j}", rng.choice([1, -1]))
        assert q.first_homology() == homology
    elapsed = time.monotonic() - start
    _report(7, "signature/Smith invariances, 1000 congruences", elapsed < 10.0, elapsed)


def test_criterion_8_cli_contract(capsys, fixtures_dir):
    start = time.monotonic()

    def run(*argv):
        code = cli_main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    eval_args = (
        "eval",
        "--theory",
        str(fixtures_dir / "semion.theory"),
        "--presentation",
        str(fixtures_dir / "lens21.pres"),
        "--json",
    )
    code1, out1, _ = run(*eval_args)
    code2, out2, _ = run(*eval_args)
    assert code1 == code2 == 0
    assert out1 == out2 == (fixtures_dir / "golden_eval_semion_lens21.json").read_text()

    axiom_args = (
        "axioms",
        "--theory",
        str(fixtures_dir / "semion.theory"),
        "--seed",
        "4",
        "--budget",
        "3",
    )
    code3, out3, _ = run(*axiom_args)
    code4, out4, _ = run(*axiom_args)
    assert code3 == code4 == 0
    assert out3 == out4 == (fixtures_dir / "golden_axioms_semion.jsonl").read_text()

    code5, _, err5 = run(
        "eval",
        "--theory",
        str(fixtures_dir / "semion.theory"),
        "--presentation",
        str(fixtures_dir / "bad.pres"),
    )
    assert code5 == 1 and "line 2" in err5

    code6, out6, _ = run(
        "axioms",
        "--theory",
        str(fixtures_dir / "semion.theory"),
        "--seed",
        "4",
        "--budget",
        "3",
        "--mutation",
        "phase-twist",
    )
    assert code6 == 2 and '"pass": false' in out6
    _report(8, "CLI byte-determinism and exit codes", True, time.monotonic() - start)
