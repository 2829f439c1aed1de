"""
Test presentations
Relation lists, soundness against concrete maps, export/parse and the side-condition audit
"""

import sys
sys.path.append('.')

import dataclasses
import os

import pytest

from src.algebra.chain_maps import Family
from src.algebra.derivations import derive
from src.algebra.presentations import (audit_side_conditions, build_presentation, check_soundness,
                                       lemma_relations, parse_presentation)
from src.algebra.words import evaluate, parse_word
from src.errors import UnsupportedFamilyError, ValidationError

PRESENTED = [Family.D, Family.ID, Family.C, Family.IC, Family.PC]
DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def test_d3_relation_list():
    p = build_presentation(Family.D, 3)
    ids = [r.id for r in p.relations]
    assert len(ids) == 7
    assert ids[:3] == ["D.1[1,2]", "D.1[1,3]", "D.1[2,3]"]
    assert "D.3[1,2,3]" in ids
    assert "D.5[1,2,3]" in ids and "D.5[2,1,3]" in ids
    assert p.relation("D.3[1,2,3]").schema == "D.3"


@pytest.mark.parametrize("fam, n", [(Family.D, 3), (Family.C, 4), (Family.IC, 3)])
def test_export_matches_recorded_relations(fam, n):
    path = os.path.join(DATA_DIR, f"{fam.value}_{n}.relations")
    with open(path) as f:
        assert build_presentation(fam, n).export() == f.read().rstrip("\n")


def test_c4_has_eight_relations():
    assert len(build_presentation(Family.C, 4).relations) == 8


def test_trivial_presentations():
    assert build_presentation(Family.D, 1).relations == []
    assert build_presentation(Family.C, 1).alphabet == ()


def test_pd_has_no_presentation():
    with pytest.raises(UnsupportedFamilyError):
        build_presentation(Family.PD, 3)


@pytest.mark.parametrize("fam", PRESENTED)
@pytest.mark.parametrize("n", range(1, 7))
def test_presentations_are_sound(fam, n):
    report = check_soundness(build_presentation(fam, n))
    assert report.passed, report.to_dict()


def test_mutated_relation_is_reported_with_witness():
    p = build_presentation(Family.D, 3)
    rel = p.relation("D.3[1,2,3]")
    # e[1,2] e[1,3] sends 2 to 1, e[1,3] fixes 2
    broken = dataclasses.replace(rel, rhs=parse_word("e[1,3]", Family.D, 3))
    mutated = parse_presentation("\n".join(
        r.to_line() if r.id != rel.id else broken.to_line() for r in p.relations), Family.D, 3)
    report = check_soundness(mutated)
    assert not report.passed
    assert [c.relation_id for c in report.failures] == ["D.3[1,2,3]"]
    assert report.failures[0].witness == 2


def test_export_round_trip():
    p = build_presentation(Family.PC, 3)
    again = parse_presentation(p.export(), Family.PC, 3)
    assert [r.to_line() for r in again.relations] == [r.to_line() for r in p.relations]


def test_parse_rejects_bad_lines():
    with pytest.raises(ValidationError):
        parse_presentation("D.1[1,2] e[1,2] e[1,2]", Family.D, 2)


def test_step_for_finds_both_directions():
    p = build_presentation(Family.D, 3)
    e12, e13 = parse_word("e[1,2]", Family.D, 3)[0], parse_word("e[1,3]", Family.D, 3)[0]
    assert p.step_for((e12, e12), (e12,)) == ("D.1[1,2]", "LR")
    assert p.step_for((e12,), (e12, e12)) == ("D.1[1,2]", "RL")
    assert p.step_for((e12, e13), (e13, e12)) is None


@pytest.mark.parametrize("fam", [Family.ID, Family.IC])
def test_lemma_relations_are_sound_and_derivable(fam):
    p = build_presentation(fam, 4)
    lemmas = lemma_relations(fam, 4)
    assert lemmas
    for rel in lemmas:
        assert evaluate(rel.lhs) == evaluate(rel.rhs), rel.to_line()
        assert derive(p, rel.lhs.letters, rel.rhs.letters), rel.to_line()


@pytest.mark.parametrize("fam", PRESENTED)
def test_side_conditions_exclude_nothing_missing(fam):
    entries = audit_side_conditions(fam, 4)
    assert all(e.status in ("unsound", "redundant") for e in entries), \
        [e for e in entries if e.status not in ("unsound", "redundant")]


def test_overlapping_swaps_d3():
    entries = audit_side_conditions(Family.D, 3)
    swaps = {e.lhs: e.status for e in entries if e.schema == "D.2"}
    # both orders of e[1,2], e[1,3] send everything to 1
    assert swaps == {
        "e[1,2] e[1,3]": "redundant",
        "e[1,2] e[2,3]": "unsound",
        "e[1,3] e[2,3]": "unsound",
    }
