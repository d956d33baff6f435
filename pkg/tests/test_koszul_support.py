"""Koszul complexes and the finite-dimensionality certificate."""

import pytest

from gitwin.errors import InputError
from gitwin.gradedmod.complexes import (
    compose_matrices,
    dual,
    free_module,
    matrix_is_zero,
    restrict_to_fixed,
    strand_cohomology_dim,
    zero_complex,
)
from gitwin.gradedmod.koszul import koszul_skyscraper
from gitwin.gradedmod.ring import WeightedRing
from gitwin.gradedmod.support import finiteness_threshold, is_supported_at_origin

from oracles import koszul_profile_brute


def test_koszul_profile_standard_weights(ring111):
    K = koszul_skyscraper(ring111, 0)
    assert restrict_to_fixed(K).as_dict() == {
        -3: (3,),
        -2: (2, 2, 2),
        -1: (1, 1, 1),
        0: (0,),
    }


def test_koszul_profile_weighted():
    ring = WeightedRing((1, 2))
    K = koszul_skyscraper(ring, 5)
    assert restrict_to_fixed(K).as_dict() == {-2: (8,), -1: (6, 7), 0: (5,)}


def test_koszul_profile_matches_oracle():
    for weights, socle in [
        ((1,), -4),
        ((1, 1), 0),
        ((1, 2), 5),
        ((2, 3, 5), 1),
    ]:
        ring = WeightedRing(weights)
        K = koszul_skyscraper(ring, socle)
        assert restrict_to_fixed(K).as_dict() == koszul_profile_brute(
            weights, socle
        )


def test_koszul_multiplicity(ring11):
    K = koszul_skyscraper(ring11, 1, multiplicity=3)
    assert K.total_rank() == 3 * 4
    assert K.weights(0) == (1, 1, 1)
    # three disjoint copies: the square-zero check ran at construction,
    # but make sure cross-copy blocks really are zero
    d = K.differential(-1)
    assert matrix_is_zero(compose_matrices(d, K.differential(-2)))
    for r in range(3):
        for c in range(6):
            if c % 3 != r:
                assert d[r][c] == {}


def test_koszul_multiplicity_must_be_positive(ring11):
    with pytest.raises(InputError, match="positive integer"):
        koszul_skyscraper(ring11, 0, multiplicity=0)


def test_threshold_of_zero_complex(ring11):
    assert finiteness_threshold(zero_complex(ring11)) == 0


def test_threshold_of_free_module_is_none(ring11):
    assert finiteness_threshold(free_module(ring11, [0])) is None
    assert not is_supported_at_origin(free_module(ring11, [-3, 2]))


def test_threshold_over_ground_field():
    field = WeightedRing(())
    assert finiteness_threshold(free_module(field, [3, -1])) == 3


def test_koszul_is_supported_at_origin():
    cases = [
        (WeightedRing((1, 1)), 0),
        (WeightedRing((1, 1, 1)), 0),
        (WeightedRing((1, 2)), 5),
    ]
    for ring, socle in cases:
        K = koszul_skyscraper(ring, socle)
        tau = finiteness_threshold(K)
        assert tau == socle + ring.eta
        assert is_supported_at_origin(K)
        # certificate check: strands above tau really vanish
        for d in range(K.min_degree(), K.max_degree() + 1):
            for w in range(tau + 1, tau + 4):
                assert strand_cohomology_dim(K, d, w) == 0


def test_dual_koszul_is_supported_at_origin():
    ring = WeightedRing((1, 2))
    K = koszul_skyscraper(ring, 5)
    assert finiteness_threshold(dual(K)) == -5
    assert is_supported_at_origin(dual(K))
