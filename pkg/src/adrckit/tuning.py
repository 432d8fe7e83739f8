"""Controller and observer gain rules.

Two tuning families are provided for the integrator-chain design model:

* bandwidth parameterization -- all controller poles at -omega_cl and all
  observer poles at -k_eso * omega_cl, giving binomial-coefficient gains;
* half-gain tuning -- the same gains divided exactly by two, which
  reproduces the stabilizing solution of the decay-rate Riccati design
  (see the ``riccati`` module for the independent numerical cross-check).

Binomial coefficients are computed in exact integer arithmetic.
"""

from dataclasses import dataclass, replace
from enum import Enum
from math import comb

import numpy as np

from .errors import ModeError

MAX_ORDER = 20


class TuningMode(str, Enum):
    BW = "bw"
    HALF_K = "half-k"
    HALF_L = "half-l"
    HALF_KL = "half-kl"

    @property
    def halves_k(self) -> bool:
        return self in (TuningMode.HALF_K, TuningMode.HALF_KL)

    @property
    def halves_l(self) -> bool:
        return self in (TuningMode.HALF_L, TuningMode.HALF_KL)


def _check_order(n: int):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ModeError(f"plant order must be an integer, got {n!r}")
    if n < 1:
        raise ModeError(f"plant order must be >= 1, got {n}")
    if n > MAX_ORDER:
        raise ModeError(f"plant order {n} exceeds supported maximum {MAX_ORDER}")


@dataclass(frozen=True)
class TuningConfig:
    """Design parameters of one loop: order, bandwidths, plant gain, mode."""

    n: int
    omega_cl: float
    k_eso: float
    b0: float
    mode: TuningMode = TuningMode.BW

    def __post_init__(self):
        _check_order(self.n)
        object.__setattr__(self, "mode", TuningMode(self.mode))
        if self.omega_cl <= 0:
            raise ValueError(f"omega_cl must be > 0, got {self.omega_cl}")
        if self.k_eso <= 0:
            raise ValueError(f"k_eso must be > 0, got {self.k_eso}")
        if self.b0 == 0:
            raise ValueError("b0 must be nonzero")
        if self.mode.halves_k and self.n < 2:
            raise ModeError(
                f"mode {self.mode.value} requires order >= 2; a first-order "
                "half-gain state feedback has a single pole at half the bandwidth"
            )

    @property
    def omega_obs(self) -> float:
        """Observer bandwidth k_eso * omega_cl."""
        return self.k_eso * self.omega_cl

    def with_mode(self, mode) -> "TuningConfig":
        return replace(self, mode=TuningMode(mode))


@dataclass(frozen=True, eq=False)
class GainSet:
    """Controller gains k (length n) and observer gains l (length n+1)."""

    k: np.ndarray
    l: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        l = np.asarray(self.l, dtype=float)
        if l.size != k.size + 1:
            raise ValueError(f"observer gain length {l.size} != controller length {k.size} + 1")
        if np.any(k <= 0) or np.any(l <= 0):
            raise ValueError("all gains must be strictly positive")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)


def bandwidth_controller_gains(n: int, omega_cl: float) -> np.ndarray:
    """Gains placing all n state-feedback poles at -omega_cl.

    k_i = C(n, i-1) * omega_cl^(n-i+1) for i = 1..n, so the closed-loop
    characteristic polynomial is (s + omega_cl)^n.
    """
    _check_order(n)
    if omega_cl <= 0:
        raise ValueError(f"omega_cl must be > 0, got {omega_cl}")
    return np.array([comb(n, i - 1) * omega_cl ** (n - i + 1) for i in range(1, n + 1)])


def bandwidth_observer_gains(n: int, omega_obs: float) -> np.ndarray:
    """Gains placing all n+1 observer poles at -omega_obs.

    l_i = C(n+1, i) * omega_obs^i for i = 1..n+1, so the observer
    characteristic polynomial is (s + omega_obs)^(n+1).
    """
    _check_order(n)
    if omega_obs <= 0:
        raise ValueError(f"omega_obs must be > 0, got {omega_obs}")
    return np.array([comb(n + 1, i) * omega_obs ** i for i in range(1, n + 2)])


def half_gain_controller(k_bw) -> np.ndarray:
    """Exact elementwise halving of bandwidth controller gains."""
    k_bw = np.asarray(k_bw, dtype=float)
    if k_bw.size == 0 or np.any(k_bw <= 0):
        raise ValueError("expected a nonempty vector of positive gains")
    return k_bw / 2.0

def half_gain_observer(l_bw) -> np.ndarray:
    """Exact elementwise halving of bandwidth observer gains."""
    return half_gain_controller(l_bw)


def tune(cfg: TuningConfig) -> GainSet:
    """Gains for one of the four designs: bw, half-k, half-l, half-kl."""
    k = bandwidth_controller_gains(cfg.n, cfg.omega_cl)
    l = bandwidth_observer_gains(cfg.n, cfg.omega_obs)
    if cfg.mode.halves_k:
        k = half_gain_controller(k)
    if cfg.mode.halves_l:
        l = half_gain_observer(l)
    return GainSet(k=k, l=l)
