from __future__ import annotations

import json

import pytest

from biframe.harness import (
    Budget,
    Sampler,
    axiom_check,
    component_scale_mutant,
    functoriality_check,
    lk_component_count,
    phase_twist_mutant,
)
from biframe.engine import minimal_data
from biframe.presentation import Presentation, pairing_presentation


def test_axiom_check_passes_for_valid_theory(minimal_datas):
    md = minimal_datas["semion"]
    report = axiom_check(md, Budget(seed=3, random_instances=10))
    assert report.all_passed
    axioms = {r.axiom for r in report.results}
    assert axioms == {"Symmetry", "Nondegeneracy", "Sewing", "Mending"}


def test_functoriality_check_passes(minimal_datas):
    md = minimal_datas["semion"]
    report = functoriality_check(md, Budget(seed=3, random_instances=5, max_genus=1))
    assert report.all_passed
    laws = {r.axiom for r in report.results}
    assert {"Identity", "ZigZag", "SymmetryMap", "Composition", "Union"} <= laws


def test_phase_twist_mutant_fails_sewing(semion):
    md = phase_twist_mutant(semion)
    report = axiom_check(md, Budget(seed=3, random_instances=20))
    sewing = [r for r in report.results if r.axiom == "Sewing"]
    failures = [r for r in sewing if not r.passed]
    assert failures, "the corrupted oracle must break the Sewing axiom"
    # Failures carry a counterexample presentation and both values.
    assert failures[0].instance.strip()
    assert failures[0].lhs is not None and failures[0].rhs is not None


def test_component_scale_mutant_fails_only_mending(semion):
    """Kept as a regression fixture: this corruption survives Symmetry,
    Nondegeneracy and Sewing but cannot satisfy Mending, which pins the
    distinct role of the self-gluing axiom."""
    md = component_scale_mutant(semion)
    report = axiom_check(md, Budget(seed=6, random_instances=25))
    by_axiom: dict[str, list[bool]] = {}
    for r in report.results:
        by_axiom.setdefault(r.axiom, []).append(r.passed)
    assert all(by_axiom["Nondegeneracy"])
    assert all(by_axiom["Symmetry"])
    assert all(by_axiom["Sewing"])
    mend = by_axiom["Mending"]
    # Instances whose invariant vanishes cannot see a scale factor, but
    # every nonvanishing one must fail.
    assert mend.count(False) > len(mend) // 2


def test_report_jsonl_shape_and_determinism(semion):
    md1 = minimal_data(semion)
    md2 = minimal_data(semion)
    r1 = axiom_check(md1, Budget(seed=9, random_instances=4))
    r2 = axiom_check(md2, Budget(seed=9, random_instances=4))
    assert r1.to_jsonl() == r2.to_jsonl()
    lines = r1.to_jsonl().strip().splitlines()
    for line in lines:
        entry = json.loads(line)
        assert set(entry) == {"axiom", "instance", "pass", "lhs", "rhs"}
    # A different seed gives different instances.
    r3 = axiom_check(minimal_data(semion), Budget(seed=10, random_instances=4))
    assert r3.to_jsonl() != r1.to_jsonl()


def test_sampler_determinism(semion):
    s1 = Sampler(semion, Budget(seed=12))
    s2 = Sampler(semion, Budget(seed=12))
    for _ in range(5):
        assert s1.presentation() == s2.presentation()


def test_sampler_respects_limits(semion):
    s = Sampler(semion, Budget(seed=1, max_surgery=3, max_genus=1, max_handlebodies=2, max_link=2))
    for _ in range(30):
        p = s.presentation()
        assert p.surgery_count <= 3
        assert len(p.handlebodies) <= 2
        assert all(g <= 1 for g in p.genera)
        assert all(abs(v) <= 4 for row in p.lk for v in row)


def test_lk_component_count():
    assert lk_component_count(Presentation.empty()) == 0
    assert lk_component_count(pairing_presentation(1)) == 1
    p = Presentation.assemble(surgery=[("A", 1), ("B", 1)])
    assert lk_component_count(p) == 2
    q = Presentation.assemble(surgery=[("A", 1), ("B", 1)], links={("A", "B"): 1})
    assert lk_component_count(q) == 1


def test_mutants_label_minimal_data(semion):
    assert phase_twist_mutant(semion).label == "phase-twist"
    assert component_scale_mutant(semion).label == "component-scale"
    assert minimal_data(semion).label == "standard"
