"""Closed-loop time-domain simulation with reproducible disturbance signals.

The plant is advanced by exact ZOH discretization at the controller sample
time.  Per sample the loop runs measure -> control -> actuate: the plant
output is read, measurement noise added, the controller emits u and
updates its state, then u plus the input disturbance drives the plant over
the next period.  The one-period input delay implied by this ordering is
deliberate.

White noise uses a self-contained splitmix64 generator (increment
0x9E3779B97F4A7C15, mix constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB) feeding a Box-Muller transform, so traces are
bit-identical across platforms for a given seed.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .adrc import DiscreteController, build_controller, controller_step, discretize_zoh
from .errors import DivergenceError, NormalizationError
from .lti import SimTrace, StateSpace, TransferFunction
from .tuning import TuningConfig, TuningMode, tune

SIGNAL_KINDS = ("step", "zero", "white-noise")
DEFAULT_TS = 1e-3
DIVERGENCE_LIMIT = 1e9

_MASK64 = (1 << 64) - 1
_SPLITMIX_INCREMENT = 0x9E3779B97F4A7C15
_SPLITMIX_MIX1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MIX2 = 0x94D049BB133111EB


def _splitmix64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the splitmix64 stream for ``seed``."""
    x = int(seed) & _MASK64
    out = np.empty(count, dtype=np.uint64)
    for i in range(count):
        x = (x + _SPLITMIX_INCREMENT) & _MASK64
        z = x
        z = ((z ^ (z >> 30)) * _SPLITMIX_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _SPLITMIX_MIX2) & _MASK64
        out[i] = z ^ (z >> 31)
    return out


def gaussian_noise(count: int, std: float, seed: int) -> np.ndarray:
    """Zero-mean Gaussian samples from splitmix64 uniforms via Box-Muller."""
    if count == 0:
        return np.zeros(0)
    pairs = (count + 1) // 2
    words = _splitmix64(seed, 2 * pairs) >> np.uint64(11)
    # top 53 bits -> uniform (0, 1]; the +1 keeps log() finite
    u = (words.astype(np.float64) + 1.0) / 9007199254740992.0
    u1, u2 = u[0::2], u[1::2]
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * math.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return std * z[:count]


@dataclass(frozen=True)
class SignalSpec:
    """One exogenous loop signal: a step, silence, or seeded white noise."""

    kind: str
    amplitude: float = 0.0
    start_time: float = 0.0
    noise_std: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in SIGNAL_KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}, expected one of {SIGNAL_KINDS}")
        if self.kind == "white-noise":
            if self.seed is None:
                raise ValueError("white-noise signals require a seed for reproducibility")
            if self.noise_std < 0:
                raise ValueError("noise_std must be >= 0")
        else:
            if self.noise_std != 0.0 or self.seed is not None:
                raise ValueError(f"noise fields are only valid for white-noise, not {self.kind!r}")

    @classmethod
    def step(cls, amplitude: float = 1.0, start_time: float = 0.0) -> "SignalSpec":
        return cls(kind="step", amplitude=amplitude, start_time=start_time)

    @classmethod
    def zero(cls) -> "SignalSpec":
        return cls(kind="zero")

    @classmethod
    def white_noise(cls, noise_std: float, seed: int) -> "SignalSpec":
        return cls(kind="white-noise", noise_std=noise_std, seed=seed)

    def samples(self, count: int, ts: float) -> np.ndarray:
        if self.kind == "zero":
            return np.zeros(count)
        if self.kind == "step":
            t = np.arange(count) * ts
            return np.where(t >= self.start_time - 1e-12, self.amplitude, 0.0)
        return gaussian_noise(count, self.noise_std, self.seed)


@dataclass(frozen=True)
class Metrics:
    """Scalar summary of one closed-loop run."""

    rms_u: float
    rms_y_err: float
    overshoot_pct: float
    settling_time_2pct: float

    def as_dict(self) -> dict:
        return {
            "rms_u": self.rms_u,
            "rms_y_err": self.rms_y_err,
            "overshoot_pct": self.overshoot_pct,
            "settling_time_2pct": self.settling_time_2pct,
        }


def simulate(plant, dc: DiscreteController, r: SignalSpec, d: SignalSpec,
             n: SignalSpec, t_final: float) -> SimTrace:
    """Run the closed loop and return all signals plus observer states.

    ``plant`` may be a TransferFunction or a SISO StateSpace; it is
    discretized by ZOH at the controller sample time.  Raises
    DivergenceError (with the blowup time) when |y| exceeds 1e9.
    """
    if t_final <= 0:
        raise ValueError("t_final must be positive")
    pss = plant.to_ss() if isinstance(plant, TransferFunction) else plant
    if not isinstance(pss, StateSpace) or pss.n_inputs != 1 or pss.n_outputs != 1:
        raise ValueError("plant must be a SISO system")
    ts = dc.ts
    count = int(round(t_final / ts)) + 1
    t = np.arange(count) * ts
    r_sig = r.samples(count, ts)
    d_sig = d.samples(count, ts)
    n_sig = n.samples(count, ts)

    ad_p, bd_p = pss.discretize(ts)
    bd_p = bd_p[:, 0]
    cp, dp = pss.c[0, :], pss.d[0, 0]

    xp = np.zeros(pss.n_states)
    xc = np.zeros(dc.n_states)
    u = np.empty(count)
    y = np.empty(count)
    xhat = np.empty((count, dc.n_states))
    u_plant_prev = 0.0
    for k in range(count):
        yk = float(cp @ xp + dp * u_plant_prev)
        if not math.isfinite(yk) or abs(yk) > DIVERGENCE_LIMIT:
            raise DivergenceError(f"loop diverged at t = {t[k]:.6g} s (|y| > {DIVERGENCE_LIMIT:g})",
                                  time=float(t[k]))
        y[k] = yk
        xhat[k] = xc
        uk, xc = controller_step(dc, xc, r_sig[k], yk + n_sig[k])
        u[k] = uk
        u_plant_prev = uk + d_sig[k]
        xp = ad_p @ xp + bd_p * u_plant_prev

    columns = {"time": t, "r": r_sig, "d": d_sig, "n": n_sig, "u": u, "y": y}
    for i in range(dc.n_states):
        columns[f"xhat{i + 1}"] = xhat[:, i]
    return SimTrace(ts=ts, columns=columns)


def steady_state_rms(trace: SimTrace, ref_value: float = 0.0):
    """(rms of mean-removed u, rms of y - ref) over the last half of the trace."""
    window = slice(len(trace) - len(trace) // 2, None)
    u_w = trace.column("u")[window]
    rms_u = float(np.sqrt(np.mean((u_w - u_w.mean()) ** 2)))
    rms_y_err = float(np.sqrt(np.mean((trace.column("y")[window] - ref_value) ** 2)))
    return rms_u, rms_y_err


def metrics(trace: SimTrace, ref_value: float) -> Metrics:
    """Summary metrics of a trace against a constant reference.

    rms_u is taken over the last half of the samples with its mean removed
    (steady-state noise content); rms_y_err is the RMS of y - ref over the
    same window; settling time is the last time |y - ref| exceeds 2% of
    the reference.
    """
    if len(trace) == 0:
        raise ValueError("empty trace")
    if ref_value == 0.0:
        raise NormalizationError("metrics need a nonzero reference value")
    t = trace.column("time")
    y = trace.column("y")
    overshoot = max(0.0, (float(y.max()) - ref_value) / ref_value * 100.0)
    band = 0.02 * abs(ref_value)
    outside = np.nonzero(np.abs(y - ref_value) > band)[0]
    settling = float(t[outside[-1]]) if outside.size else 0.0
    rms_u, rms_y_err = steady_state_rms(trace, ref_value)
    return Metrics(rms_u=rms_u, rms_y_err=rms_y_err, overshoot_pct=overshoot,
                   settling_time_2pct=settling)


def noise_sensitivity_study(cfg_base: TuningConfig, plant, noise_std: float,
                            seed: int, t_final: float,
                            ts: float = DEFAULT_TS) -> dict:
    """Per-mode metrics for a unit step with seeded measurement noise.

    All four designs run with the identical noise realization so their
    rms_u values are directly comparable.
    """
    if noise_std < 0:
        raise ValueError("noise_std must be >= 0")
    r = SignalSpec.step(1.0, 0.0)
    d = SignalSpec.zero()
    n = SignalSpec.white_noise(noise_std, seed)
    results = {}
    for mode in TuningMode:
        cfg = cfg_base.with_mode(mode)
        dc = discretize_zoh(build_controller(cfg, tune(cfg)), ts)
        trace = simulate(plant, dc, r, d, n, t_final)
        results[mode] = metrics(trace, ref_value=1.0)
    return results


def write_trace_csv(trace: SimTrace, stream) -> None:
    """Write a trace as CSV: header row, LF endings, 12 significant digits."""
    names = trace.names
    stream.write(",".join(names) + "\n")
    data = np.column_stack([trace.column(name) for name in names])
    for row in data:
        stream.write(",".join(f"{v:.12g}" for v in row) + "\n")


def metrics_json(m: Metrics) -> str:
    """Metrics as a flat JSON object with stable key order."""
    return json.dumps(m.as_dict(), indent=2)
