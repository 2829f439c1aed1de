"""
Test verification
Generation closure, per-family reports, the PD lift and pipeline output
"""

import sys
sys.path.append('.')

import json
from math import factorial

import pytest

from src.algebra.chain_maps import Family
from src.algebra.congruence import CongruenceLimits
from src.algebra.reference_counts import bell, catalan, large_schroeder, reference_size
from src.algebra.words import all_words
from src.config import CHAIN_CONFIG
from src.model_validation.run_verification import (VerificationPipeline, audit_normalizer,
                                                   family_sizes, generated_closure,
                                                   generators_generate, random_words, to_json,
                                                   verify_pd_iso, verify_presentation)

REPORT_FIELDS = ["family", "n", "relations_sound", "generators_generate", "concrete_size",
                 "normal_form_count", "presented_size", "derivations_checked", "verdict"]


@pytest.mark.parametrize("fam, n, size", [
    (Family.D, 4, 24),
    (Family.IC, 3, 14),
    (Family.C, 3, 5),
    (Family.ID, 3, 15),
    (Family.PC, 3, 22),
])
def test_generators_generate(fam, n, size):
    assert generators_generate(fam, n)
    assert len(generated_closure(fam, n)) == size


@pytest.mark.parametrize("fam", [Family.D, Family.ID, Family.C, Family.IC, Family.PC])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_small_presentations_pass(fam, n):
    report = verify_presentation(fam, n, random_samples=200)
    assert report.verdict == "pass", report.problems
    assert list(report.to_dict()) == REPORT_FIELDS


def test_d5_report():
    report = verify_presentation(Family.D, 5, random_samples=300, path_independence=False)
    assert report.verdict == "pass"
    assert report.concrete_size == 120
    assert report.normal_form_count == 120
    assert report.derivations_checked > 0


def test_pc4_report():
    report = verify_presentation(Family.PC, 4)
    assert report.verdict == "pass"
    assert report.concrete_size == report.normal_form_count == 90
    assert report.derivations_checked == 0


def test_c4_report():
    report = verify_presentation(Family.C, 4)
    assert report.verdict == "pass"
    assert (report.concrete_size, report.presented_size) == (14, 14)
    assert report.normal_form_count is None


def test_resource_cap_makes_the_report_incomplete(monkeypatch):
    monkeypatch.setitem(CHAIN_CONFIG, "max_candidates", 5)
    report = verify_presentation(Family.D, 4)
    assert report.verdict == "incomplete"
    assert report.to_dict()["incomplete_stage"] == "concrete_size"


def test_exhausted_completion_makes_the_report_incomplete():
    report = verify_presentation(Family.C, 5, limits=CongruenceLimits(max_states=10))
    assert report.relations_sound and report.generators_generate
    assert report.presented_size is None
    assert report.verdict == "incomplete"
    assert report.to_dict()["incomplete_stage"] == "presented_size"


def test_exhausted_completion_is_not_needed_when_normal_forms_count():
    report = verify_presentation(Family.PC, 3, limits=CongruenceLimits(max_states=5))
    assert report.presented_size is None
    assert report.verdict == "pass"
    assert "incomplete_stage" not in report.to_dict()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pd_lift(n):
    report = verify_pd_iso(n)
    assert report.size_match and report.bijective and report.homomorphic
    assert report.pd_size == reference_size(Family.PD, n)
    assert report.pd_size == report.d_size == factorial(n + 1)


def test_pd_lift_checks_every_pair_when_small():
    assert verify_pd_iso(2).pairs_checked == 36


def test_path_independence_audit():
    audit = audit_normalizer(Family.IC, 3, random_samples=0, path_independence=True)
    assert audit.failures == []
    assert audit.checked > 0


@pytest.mark.parametrize("fam", [Family.D, Family.ID, Family.IC])
def test_exhaustive_audit_at_n4(fam):
    # every word of length <= 4, and every one-step rewrite of each
    audit = audit_normalizer(fam, 4, random_samples=0, path_independence=True)
    assert audit.failures == []
    assert audit.checked >= len(all_words(fam, 4, 4))


def test_random_words_are_seeded():
    first = random_words(Family.ID, 4, 20, 12, seed=7)
    assert first == random_words(Family.ID, 4, 20, 12, seed=7)
    assert all(len(w) <= 12 for w in first)


def test_reference_sequences():
    assert [catalan(n) for n in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    assert [large_schroeder(n) for n in range(1, 6)] == [2, 6, 22, 90, 394]
    assert [bell(n) for n in range(6)] == [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("fam", list(Family))
def test_family_sizes_match_reference(fam):
    rows = family_sizes(fam, range(1, 5))
    assert all(r["size"] == r["reference"] for r in rows), rows


def test_pipeline_output_is_reproducible():
    def run():
        pipeline = VerificationPipeline([Family.C, Family.PD], [2, 3])
        pipeline.run_all()
        return to_json(pipeline.output())

    first = run()
    assert first == run()
    data = json.loads(first)
    assert data["acceptance_criteria"]["all_criteria_met"]
    assert [r["family"] for r in data["reports"]] == ["C", "C", "PD", "PD"]


def test_save_results(tmp_path):
    pipeline = VerificationPipeline([Family.C], [3])
    pipeline.run_all()
    path = pipeline.save_results(str(tmp_path / "out" / "verify.json"))
    with open(path) as f:
        assert json.load(f)["reports"][0]["verdict"] == "pass"
    assert pipeline.exit_code() == 0
