from __future__ import annotations

import math

import numpy as np
import pytest

from facetguess.channel import (
    AWGN,
    BSC,
    ChannelModel,
    ebn0_db_to_sigma,
    transmit_all_zeros,
    trial_rng,
)


def test_bsc_noiseless_is_all_negative():
    rec = transmit_all_zeros(ChannelModel.bsc(0.0), 50, 3, 0)
    assert (rec.gamma == -1).all() and (rec.received == 0).all()
    assert rec.sent == (0,) * 50


def test_bsc_flip_rate_within_three_sigma():
    n, eps = 10**5, 0.1
    rec = transmit_all_zeros(ChannelModel.bsc(eps), n, 11, 4)
    flips = int((rec.gamma == 1).sum())
    assert abs(flips - n * eps) <= 3 * math.sqrt(n * eps * (1 - eps))
    assert set(np.unique(rec.gamma)) == {-1.0, 1.0}
    assert ((rec.received == 1) == (rec.gamma == 1)).all()


def test_awgn_noiseless_is_all_negative():
    rec = transmit_all_zeros(ChannelModel.awgn(0.0), 40, 0, 0)
    assert (rec.gamma < 0).all()


def test_awgn_gamma_is_the_log_likelihood_ratio():
    sigma = 0.8
    rec = transmit_all_zeros(ChannelModel.awgn(sigma), 20, 5, 2)
    y = rec.received

    def log_density(y, mean):
        return -((y - mean) ** 2) / (2 * sigma**2)

    # gamma = log P(y | 1) / P(y | 0) with bit 0 -> +1 and bit 1 -> -1
    assert np.allclose(rec.gamma, log_density(y, -1.0) - log_density(y, 1.0))


def test_awgn_noise_statistics():
    sigma = 0.5
    rec = transmit_all_zeros(ChannelModel.awgn(sigma), 10**5, 1, 0)
    noise = rec.received - 1.0
    assert abs(noise.mean()) < 4 * sigma / math.sqrt(10**5)
    assert abs(noise.std() - sigma) < 0.01


def test_ebn0_examples():
    assert ebn0_db_to_sigma(0.0, 1.0) == pytest.approx(1 / math.sqrt(2))
    assert ebn0_db_to_sigma(10 * math.log10(2), 0.5) == pytest.approx(1 / math.sqrt(2))
    assert ebn0_db_to_sigma(3.0103, 0.5) == pytest.approx(1 / math.sqrt(2), rel=1e-5)
    sigmas = [ebn0_db_to_sigma(db, 0.4) for db in np.linspace(-2, 8, 21)]
    assert all(a > b for a, b in zip(sigmas, sigmas[1:]))
    with pytest.raises(ValueError):
        ebn0_db_to_sigma(1.0, 0.0)


def test_awgn_from_ebn0():
    ch = ChannelModel.awgn_ebn0(3.0, 0.4)
    assert ch.kind == AWGN and ch.sigma == pytest.approx(ebn0_db_to_sigma(3.0, 0.4))


def test_reproducible_and_independent_trials():
    ch = ChannelModel.awgn(1.0)
    a = transmit_all_zeros(ch, 30, 7, 3)
    b = transmit_all_zeros(ch, 30, 7, 3)
    assert np.array_equal(a.gamma, b.gamma)
    assert not np.array_equal(a.gamma, transmit_all_zeros(ch, 30, 7, 4).gamma)
    assert not np.array_equal(a.gamma, transmit_all_zeros(ch, 30, 8, 3).gamma)
    # trial order does not matter
    later = [transmit_all_zeros(ch, 30, 7, t).gamma for t in (5, 3)]
    assert np.array_equal(later[1], a.gamma)


def test_trial_rng_paths():
    assert trial_rng(1, 2, 3).integers(10**9) == trial_rng(1, 2, 3).integers(10**9)
    assert trial_rng(1, 2, 3).integers(10**9) != trial_rng(1, 3, 2).integers(10**9)


def test_channel_validation_and_llr_scale():
    with pytest.raises(ValueError):
        ChannelModel.bsc(0.5)
    with pytest.raises(ValueError):
        ChannelModel.awgn(-1.0)
    with pytest.raises(ValueError):
        ChannelModel("erasure")
    assert ChannelModel.bsc(0.1).llr_scale() == pytest.approx(math.log(9))
    assert ChannelModel.awgn(0.7).llr_scale() == 1.0
    assert ChannelModel.bsc(0.1).describe()["kind"] == BSC
