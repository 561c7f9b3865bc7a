#tests/test_cohomology.py

import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from app.core.cohomology import (
    LineBundle,
    cohomology_hypersurface,
    cohomology_hypersurface_in,
    cohomology_projective,
    count_monomials,
    euler_hypersurface,
    line_bundle_cohomology,
    monomial_weight_counts,
    p1_cohomology,
    serre_check,
    serre_partner,
)
from app.core.oracle import enumerate_monomial_counts, fermat_cohomology
from app.models.equicore import Config, ExtTable, WeightedSpace, ambient_weights


def test_count_monomials_examples():
    assert count_monomials(ambient_weights(Config(2, 2, 4)), 2, 0) == 3
    assert count_monomials(ambient_weights(Config(2, 2, 4)), -1, 1) == 0
    assert count_monomials(WeightedSpace.join_line(5), 5, 0) == 2


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=6),
    st.lists(st.integers(min_value=0, max_value=5), min_size=2, max_size=5),
    st.integers(min_value=0, max_value=8),
)
def test_monomial_counts_sum_to_binomial(d, weights, a):
    space = WeightedSpace(d, tuple(weights))
    counts = monomial_weight_counts(space, a)
    assert sum(counts) == comb(a + len(weights) - 1, len(weights) - 1)
    assert counts == enumerate_monomial_counts(space, a)


def test_projective_cohomology_examples():
    space = ambient_weights(Config(2, 2, 4))
    structure = cohomology_projective(LineBundle.on(space, 0, 0))
    assert structure == ExtTable.from_dict(4, {0: {0: 1}})

    assert cohomology_projective(LineBundle.on(space, -4, 0)).row(3).invariant == 0
    assert cohomology_projective(LineBundle.on(space, -4, 2)).row(3).invariant == 1


def test_projective_cohomology_rejects_config_bundle(cfg_224):
    with pytest.raises(TypeError):
        cohomology_projective(LineBundle.on(cfg_224, 0, 0))


def test_hypersurface_examples(cfg_224):
    assert cohomology_hypersurface(cfg_224, 0, 0) == ExtTable.from_dict(4, {0: {0: 1}, 2: {2: 1}})
    assert cohomology_hypersurface(cfg_224, 0, 0).invariants() == {0: 1}
    assert cohomology_hypersurface(cfg_224, 0, -1).invariant_is_zero()
    assert cohomology_hypersurface(cfg_224, 0, -2).invariants() == {2: 1}


def test_hypersurface_needs_three_coordinates():
    with pytest.raises(ValueError):
        cohomology_hypersurface(Config.of(1, 1, 3), 0, 0)
    with pytest.raises(ValueError):
        LineBundle.on(Config.of(1, 1, 3), 0, 0)


def test_line_bundle_cohomology_dispatch(cfg_235):
    assert line_bundle_cohomology(LineBundle.on(cfg_235, 1, 0)) == cohomology_hypersurface(cfg_235, 1, 0)
    line = WeightedSpace.join_line(5)
    assert line_bundle_cohomology(LineBundle.on(line, -2, 1)) == p1_cohomology(5, -2, 1)


def test_p1_cohomology_on_the_join_line():
    assert p1_cohomology(4, 3, 0).row(0).mult == (1, 1, 1, 1)
    assert p1_cohomology(5, 0, 3).row(0).mult == (0, 0, 0, 1, 0)
    # omega = O(-2) chi^{-1}
    assert p1_cohomology(5, -2, -1).invariants() == {1: 1}


@pytest.mark.parametrize("k", range(-8, 9))
def test_euler_hypersurface_matches_rows(cfg_235, k):
    table = cohomology_hypersurface(cfg_235, k, 1)
    sign = -1 if cfg_235.dimension % 2 else 1
    expected = tuple(a + sign * b for a, b in zip(table.row(0).mult, table.row(cfg_235.dimension).mult))
    assert euler_hypersurface(ambient_weights(cfg_235), 5, k, 1) == expected


def test_generalized_hypersurface_engine():
    # the cone over X_f with vertex q sits in P^m with weights [0 x m, -1]
    space = WeightedSpace(4, (0, 0, -1))
    assert cohomology_hypersurface_in(space, 4, 0, 0).invariants() == {0: 1}
    with pytest.raises(ValueError):
        cohomology_hypersurface_in(WeightedSpace.join_line(4), 4, 0, 0)


@pytest.mark.parametrize("triple", [(2, 2, 4), (2, 3, 5)])
def test_fermat_oracle_agrees(triple):
    cfg = Config(*triple)
    space = ambient_weights(cfg)
    for k in range(-6, 7):
        for c in range(cfg.d):
            assert cohomology_hypersurface(cfg, k, c) == fermat_cohomology(space, cfg.d, k, c), (k, c)


@pytest.mark.slow
def test_fermat_oracle_agrees_336(cfg_336):
    space = ambient_weights(cfg_336)
    for k in range(-6, 7):
        for c in range(cfg_336.d):
            assert cohomology_hypersurface(cfg_336, k, c) == fermat_cohomology(space, cfg_336.d, k, c), (k, c)


def test_serre_partner(cfg_224):
    k, c = serre_partner(cfg_224, 0, 0)
    assert (k, c.r) == (0, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2, 4), (2, 3, 5), (3, 3, 6), (2, 4, 7)]), st.integers(-10, 10), st.integers(0, 20))
def test_serre_duality_holds(triple, k, c):
    assert serre_check(Config(*triple), [(k, c)])


def test_serre_check_empty_samples(cfg_224):
    assert serre_check(cfg_224, [])


def test_serre_check_random_samples(cfg_336):
    rng = random.Random(7)
    samples = [(rng.randint(-10, 10), rng.randrange(6)) for _ in range(50)]
    assert serre_check(cfg_336, samples)
