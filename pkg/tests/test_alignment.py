from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doflab.alignment import (achieved_dof, build_design, cross_pairs, extension_length, gamma, joint_matrix,
                              monomial_columns, rank, verify_alignment, verify_decodability)
from doflab.errors import DimensionError, KindError, ParameterError
from doflab.network import extend_channel, sample_instance


def design_for(K, n, seed, reciprocal=True, merge=True):
    inst = sample_instance("full_duplex", K=K, seed=seed, reciprocal=reciprocal)
    ch = extend_channel(inst, extension_length(K, n))
    return build_design(ch, K, n, seed, merge_identical=merge), ch


def test_dimension_oracles():
    assert gamma(3) == 2 and gamma(4) == 6
    assert extension_length(3, 1) == 10
    assert extension_length(3, 3) == 50
    assert extension_length(4, 1) == 195
    assert achieved_dof(3, 1) == Fraction(3, 5)
    assert achieved_dof(3, 3) == Fraction(27, 25)
    assert achieved_dof(3, 50) == Fraction(7500, 5101)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5), st.integers(1, 20))
def test_dimension_budget(K, n):
    g = gamma(K)
    mu = extension_length(K, n)
    # desired streams plus interference dimensions fill the extension exactly
    assert (K - 1) * n ** g + (K - 1) * (n + 1) ** g == mu
    assert achieved_dof(K, n) < achieved_dof(K, n + 1) < Fraction(K, 2)


def test_cross_pairs():
    assert cross_pairs(3, 1) == [(2, 3), (3, 2)]
    assert len(cross_pairs(4, 2)) == 6


def test_monomial_columns():
    w = np.array([1.0, 2.0])
    maps = np.array([[2.0, 3.0], [5.0, 7.0]])
    cols = monomial_columns(w, maps, np.array([[1, 0], [1, 2]]))
    assert np.allclose(cols[:, 0], [2.0, 6.0])
    assert np.allclose(cols[:, 1], [50.0, 294.0])


def test_rank_tolerance():
    a = np.eye(3)
    a[2, 2] = 1e-12
    assert rank(a) == 2
    assert rank(np.zeros((3, 3))) == 0


@pytest.mark.parametrize("K,n", [(3, 1), (3, 2), (3, 3), (4, 1)])
@pytest.mark.parametrize("reciprocal", [True, False])
def test_design_passes_checks(K, n, reciprocal):
    d, ch = design_for(K, n, 11, reciprocal)
    al = verify_alignment(d, ch)
    assert al.passed and al.max_residual <= 1e-10
    assert al.triples_checked == K * (K - 1) * (K - 2)
    dec = verify_decodability(d, ch)
    assert dec.passed and all(dec.checks.values())
    assert d.V[0].shape == (d.mu, n ** gamma(K))
    assert d.I[0].shape == (d.mu, (n + 1) ** gamma(K))


def test_reciprocal_merges_maps():
    d, _ = design_for(3, 2, 4)
    assert d.generators[0] == (((2, 3), (3, 2)),)
    assert d.exponent_index[(2, 3, 1)] == d.exponent_index[(3, 2, 1)]
    d2, _ = design_for(3, 2, 4, reciprocal=False)
    assert len(d2.generators[0]) == 2


def test_naive_indexing_fails_under_reciprocity():
    d, ch = design_for(3, 2, 4, merge=False)
    assert not verify_decodability(d, ch).passed


def test_columns_unit_norm():
    d, _ = design_for(3, 2, 0)
    for v in d.V + d.I:
        assert np.allclose(np.linalg.norm(v, axis=0), 1.0)


def test_degenerate_seed_vectors_fail_joint_rank():
    # pick w_3 so that a desired column at receiver 1 coincides with an interference column
    d, ch = design_for(3, 1, 5)
    w = d.w.copy()
    w[2] = w[0] * ch.link(2, 3) / (ch.link(3, 1) * ch.link(1, 2))
    bad = d.with_seed_vectors(w, ch)
    rep = verify_decodability(bad, ch)
    assert verify_alignment(bad, ch).passed
    assert not rep.passed and not rep.checks["joint_rank"]


def test_perturbed_channel_breaks_alignment():
    d, ch = design_for(3, 1, 2)
    rng = np.random.default_rng(0)
    moved = ch.with_link(2, 3, ch.link(2, 3) * (1 + 0.01 * rng.standard_normal(ch.mu)))
    assert not verify_alignment(d, moved).passed


def test_design_errors():
    inst = sample_instance("full_duplex", K=3, seed=0)
    with pytest.raises(DimensionError):
        build_design(extend_channel(inst, 9), 3, 1, 0)
    with pytest.raises(DimensionError):
        build_design(extend_channel(inst, 10), 4, 1, 0)
    bad = sample_instance("full_duplex", K=3, seed=0).replace(mask=np.ones((3, 3), dtype=bool))
    bad = bad.replace(gains=bad.gains.__class__(0, 3, reciprocal=True))
    with pytest.raises(KindError):
        build_design(extend_channel(bad, 10), 3, 1, 0)
    with pytest.raises(ParameterError):
        extension_length(3, 0)


def test_stream_power_accounting():
    d, _ = design_for(3, 1, 0)
    # mu=10 uses, 6 streams: equal split of rho per use over the block
    assert d.stream_power(6.0) == pytest.approx(10.0)


def test_equal_seed_vectors_alone_are_not_degenerate():
    # receivers 1 and 2 use different cross maps, so w_1 == w_2 keeps full rank
    d, ch = design_for(3, 1, 0)
    w = d.w.copy()
    w[1] = w[0]
    assert verify_decodability(d.with_seed_vectors(w, ch), ch).passed
