"""Seeded binary-input channels under the all-zeros transmission convention.

Each trial draws from its own stream, ``SeedSequence([seed, trial_index])``,
so trials can be generated in any order or in parallel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BSC = "bsc"
AWGN = "awgn"

# smallest sigma used when a noiseless AWGN channel is requested
SIGMA_FLOOR = 1e-6


@dataclass(frozen=True)
class ChannelModel:
    kind: str
    epsilon: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind == BSC:
            if not 0 <= self.epsilon < 0.5:
                raise ValueError("crossover probability must lie in [0, 1/2)")
        elif self.kind == AWGN:
            if not self.sigma >= 0:
                raise ValueError("noise level must be non-negative")
        else:
            raise ValueError(f"unknown channel {self.kind!r}")

    @classmethod
    def bsc(cls, epsilon: float) -> "ChannelModel":
        return cls(BSC, epsilon=epsilon)

    @classmethod
    def awgn(cls, sigma: float) -> "ChannelModel":
        return cls(AWGN, sigma=sigma)

    @classmethod
    def awgn_ebn0(cls, ebn0_db: float, rate: float) -> "ChannelModel":
        return cls(AWGN, sigma=ebn0_db_to_sigma(ebn0_db, rate))

    def llr_scale(self) -> float:
        """Factor turning gamma into a true log-likelihood ratio.

        BSC objectives are +-1; their likelihood ratio has magnitude
        log((1 - eps) / eps).  AWGN objectives are already exact.
        """
        if self.kind == BSC:
            eps = self.epsilon
            return math.log((1 - eps) / eps) if eps > 0 else 2 * 25.0
        return 1.0

    def describe(self) -> dict:
        if self.kind == BSC:
            return {"kind": BSC, "epsilon": self.epsilon}
        return {"kind": AWGN, "sigma": self.sigma, "bpsk": "bit 0 -> +1", "ebn0": "Es = R Eb, N0 = 2 sigma^2"}


@dataclass(frozen=True)
class TransmissionRecord:
    sent: tuple[int, ...]
    received: np.ndarray
    gamma: np.ndarray
    seed: int
    trial_index: int


def ebn0_db_to_sigma(ebn0_db: float, rate: float) -> float:
    """sqrt(1 / (2 R 10^(Eb/N0 / 10))) for unit-energy BPSK."""
    if not rate > 0 or rate > 1:
        raise ValueError("rate must lie in (0, 1]")
    return math.sqrt(1.0 / (2.0 * rate * 10 ** (ebn0_db / 10.0)))


def trial_rng(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *path]))


def transmit_all_zeros(channel: ChannelModel, n: int, seed: int, trial_index: int) -> TransmissionRecord:
    rng = trial_rng(seed, trial_index)
    if channel.kind == BSC:
        flips = rng.random(n) < channel.epsilon
        received = flips.astype(np.int8)
        gamma = np.where(flips, 1.0, -1.0)
    else:
        sigma = max(channel.sigma, SIGMA_FLOOR)
        received = 1.0 + sigma * rng.standard_normal(n)
        gamma = -2.0 * received / sigma**2
    return TransmissionRecord((0,) * n, received, gamma, seed, trial_index)
