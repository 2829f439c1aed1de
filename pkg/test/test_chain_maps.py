"""
Test chain maps
Composition order, classification, family membership and the brute-force oracle
"""

import sys
sys.path.append('.')

from math import factorial

import numpy as np
import pytest

from src.algebra.chain_maps import (Family, PartialMap, adjoin_bottom, brute_force_enumerate,
                                    candidate_count, classify, compose, generator, generators,
                                    identity, in_family, make_partial_map, partial_identity)
from src.algebra.words import sym
from src.config import CHAIN_CONFIG
from src.errors import ResourceLimitError, ValidationError


def test_make_partial_map_leaves_unlisted_points_undefined():
    alpha = make_partial_map(3, [(2, 1), (3, 2)])
    assert alpha.images == (0, 1, 2)
    assert alpha.domain == (2, 3)
    assert alpha.image == (1, 2)
    assert alpha(1) == 0


@pytest.mark.parametrize("assignments", [[(4, 1)], [(1, 0)], [(2, 1), (2, 2)]])
def test_make_partial_map_rejects_bad_assignments(assignments):
    with pytest.raises(ValidationError):
        make_partial_map(3, assignments)


def test_partial_map_rejects_wrong_length():
    with pytest.raises(ValidationError):
        PartialMap(3, (1, 2))


def test_compose_applies_left_factor_first():
    first = make_partial_map(3, [(1, 1), (2, 2), (3, 1)])
    second = make_partial_map(3, [(1, 1), (2, 2), (3, 2)])
    assert compose(first, second) == first
    assert compose(second, first) == make_partial_map(3, [(1, 1), (2, 2), (3, 2)])


def test_compose_propagates_undefined_points():
    alpha = partial_identity(3, [2])
    beta = make_partial_map(3, [(2, 1), (3, 2)])
    # 1 -> 1 -> undefined, 3 -> 3 -> 2
    assert compose(alpha, beta).images == (0, 0, 2)


def test_compose_rejects_mismatched_sizes():
    with pytest.raises(ValidationError):
        compose(identity(2), identity(3))


def test_classify():
    props = classify(make_partial_map(3, [(1, 1), (3, 1)]))
    assert props.order_decreasing
    assert props.order_preserving
    assert not props.injective
    assert not props.full


def test_in_family():
    shift = make_partial_map(3, [(1, 1), (2, 1), (3, 2)])
    assert in_family(shift, Family.C)
    assert in_family(shift, Family.PC)
    assert not in_family(shift, Family.IC)
    assert not in_family(make_partial_map(2, [(1, 2)]), Family.PD)


@pytest.mark.parametrize("n", range(1, 8))
def test_d_has_factorial_size(n):
    assert len(brute_force_enumerate(Family.D, n)) == factorial(n)


@pytest.mark.parametrize("n, size", enumerate([1, 2, 5, 14, 42, 132, 429, 1430], start=1))
def test_catalan_sizes(n, size):
    assert len(brute_force_enumerate(Family.C, n)) == size


@pytest.mark.parametrize("n, size", enumerate([2, 6, 22, 90, 394], start=1))
def test_schroeder_sizes(n, size):
    assert len(brute_force_enumerate(Family.PC, n)) == size


def test_small_injective_families():
    assert len(brute_force_enumerate(Family.IC, 2)) == 5
    assert len(brute_force_enumerate(Family.IC, 3)) == 14
    assert len(brute_force_enumerate(Family.ID, 3)) == 15
    assert len(brute_force_enumerate(Family.PD, 1)) == 2


@pytest.mark.parametrize("fam", list(Family))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_families_are_closed_under_compose(fam, n):
    elements = brute_force_enumerate(fam, n)
    members = set(elements)
    assert identity(n) in members
    assert all(compose(a, b) in members for a in elements for b in elements)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_compose_is_associative(n):
    elements = brute_force_enumerate(Family.PD, n)
    for a in elements:
        for b in elements:
            ab = compose(a, b)
            for c in elements:
                assert compose(ab, c) == compose(a, compose(b, c))


def test_compose_is_associative_on_sampled_triples():
    elements = brute_force_enumerate(Family.PD, 4)
    rng = np.random.default_rng(4)
    for i, j, k in rng.integers(0, len(elements), size=(3000, 3)):
        a, b, c = elements[i], elements[j], elements[k]
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_brute_force_is_sorted_and_in_family():
    elements = brute_force_enumerate(Family.PC, 3)
    assert list(elements) == sorted(elements)
    assert all(in_family(a, Family.PC) for a in elements)


def test_brute_force_cap(monkeypatch):
    monkeypatch.setitem(CHAIN_CONFIG, "max_candidates", 10)
    assert candidate_count(Family.PD, 3) == 24
    with pytest.raises(ResourceLimitError):
        brute_force_enumerate(Family.PD, 3)


def test_generators_match_their_descriptions():
    assert generator(Family.D, sym("e", 1, 3), 3).images == (1, 2, 1)
    assert generator(Family.ID, sym("a", 1, 3), 3).images == (0, 2, 1)
    assert generator(Family.IC, sym("a", 1), 3).images == (0, 1, 3)
    assert generator(Family.PC, sym("f", 2), 3).images == (1, 0, 3)
    assert generator(Family.C, sym("e", 2), 3).images == (1, 2, 2)


def test_generator_rejects_foreign_letters():
    with pytest.raises(ValidationError):
        generator(Family.C, sym("e", 3), 3)
    with pytest.raises(ValidationError):
        generator(Family.D, sym("e", 2, 1), 3)


def test_generator_count():
    assert len(generators(Family.D, 4)) == 6
    assert len(generators(Family.PC, 4)) == 7


def test_adjoin_bottom():
    alpha = make_partial_map(2, [(2, 1)])
    assert adjoin_bottom(alpha).images == (1, 1, 2)
    assert adjoin_bottom(identity(2)) == identity(3)
