"""Frequency- and time-domain analysis of the closed loop.

Builds the feedback-controller transfer function, the loop gain, and the
six closed-loop maps from (reference r, input disturbance d, measurement
noise n) to (output y, control u).  Interconnections are done in state
space; transfer functions are extracted only for display, with pole/zero
pruning at a fixed tolerance.
"""

from dataclasses import dataclass

import numpy as np

from .adrc import AdrcController
from .errors import InterconnectionError
from .lti import MINREAL_TOL, SimTrace, StateSpace, TransferFunction

GANG_MEMBERS = ("g_yr", "g_yd", "g_yn", "g_ur", "g_ud", "g_un")


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Complex gains of one transfer function on a log-spaced grid."""

    omegas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.omegas) <= 0):
            raise ValueError("frequency grid must be strictly increasing")

    @property
    def magnitude(self):
        return np.abs(self.values)

    @property
    def phase_deg(self):
        return np.degrees(np.angle(self.values))


@dataclass(frozen=True, eq=False)
class GangOfSix:
    """The six closed-loop maps (r, d, n) -> (y, u) and their realization."""

    g_yr: TransferFunction
    g_yd: TransferFunction
    g_yn: TransferFunction
    g_ur: TransferFunction
    g_ud: TransferFunction
    g_un: TransferFunction
    ss: StateSpace

    def members(self):
        return {name: getattr(self, name) for name in GANG_MEMBERS}

    def poles(self):
        return self.ss.eigenvalues()

    def is_stable(self) -> bool:
        return bool(np.all(self.poles().real < 0))


def controller_feedback_tf(ctrl: AdrcController) -> TransferFunction:
    """Map from measured output y to control u with r = 0.

    Strictly proper by construction (no y feedthrough) and has a pole at
    s = 0 from the structural disturbance integrator.
    """
    ss = StateSpace(ctrl.a_ctrl, ctrl.b_y, ctrl.c_u, 0.0)
    return ss.transfer_function()


def loop_gain(ctrl: AdrcController, plant: TransferFunction) -> TransferFunction:
    """Open-loop gain around the feedback path.

    Defined as (-C_yu) * P so the loop closes with the standard negative
    feedback convention 1/(1 + G0).
    """
    return (-controller_feedback_tf(ctrl)) * plant


def closed_loop(ctrl: AdrcController, plant: TransferFunction) -> StateSpace:
    """State-space interconnection with inputs (r, d, n) and outputs (y, u).

    The plant is driven by u + d; the controller measures y + n; the
    reported y is the physical plant output without noise.
    """
    if not plant.is_proper():
        raise InterconnectionError("plant transfer function must be proper")
    pss = plant.to_ss()
    if ctrl.d_y != 0.0 and pss.d[0, 0] != 0.0:
        raise InterconnectionError("algebraic loop: both plant and controller "
                                   "have direct feedthrough on the loop path")
    ap, bp, cp, dp = pss.a, pss.b[:, 0], pss.c[0, :], pss.d[0, 0]
    np_, nc = ap.shape[0], ctrl.n_states

    a = np.zeros((np_ + nc, np_ + nc))
    a[:np_, :np_] = ap
    a[:np_, np_:] = np.outer(bp, ctrl.c_u)
    a[np_:, :np_] = np.outer(ctrl.b_y, cp)
    a[np_:, np_:] = ctrl.a_ctrl + dp * np.outer(ctrl.b_y, ctrl.c_u)

    b = np.zeros((np_ + nc, 3))
    b[:np_, 0] = bp * ctrl.d_r
    b[:np_, 1] = bp
    b[np_:, 0] = ctrl.b_r + dp * ctrl.d_r * ctrl.b_y
    b[np_:, 1] = dp * ctrl.b_y
    b[np_:, 2] = ctrl.b_y

    c = np.zeros((2, np_ + nc))
    c[0, :np_] = cp
    c[0, np_:] = dp * ctrl.c_u
    c[1, np_:] = ctrl.c_u

    d = np.array([[dp * ctrl.d_r, dp, 0.0],
                  [ctrl.d_r, 0.0, 0.0]])
    return StateSpace(a, b, c, d, input_names=("r", "d", "n"),
                      output_names=("y", "u"))


def gang_of_six(ctrl: AdrcController, plant: TransferFunction,
                minreal_tol: float = MINREAL_TOL) -> GangOfSix:
    """All six closed-loop transfer functions, pruned of exact cancellations."""
    ss = closed_loop(ctrl, plant)
    tfs = {}
    for j, out in enumerate("yu"):
        for i, inp in enumerate("rdn"):
            tfs[f"g_{out}{inp}"] = ss.transfer_function(input=i, output=j).minreal(minreal_tol)
    return GangOfSix(ss=ss, **tfs)


def freq_response(tf: TransferFunction, omega_min: float, omega_max: float,
                  points: int) -> FrequencyResponse:
    """Evaluate a transfer function on a log-spaced frequency grid."""
    if not (0 < omega_min < omega_max):
        raise ValueError("need 0 < omega_min < omega_max")
    if points < 2:
        raise ValueError("need at least 2 grid points")
    omegas = np.logspace(np.log10(omega_min), np.log10(omega_max), points)
    return FrequencyResponse(omegas=omegas, values=tf(1j * omegas))


def step_response(system, t_final: float, dt: float) -> SimTrace:
    """ZOH-exact unit step response of a transfer function or state space.

    For state-space systems the first input is stepped and every output is
    returned as a trace column under its output name.
    """
    ss = system.to_ss() if isinstance(system, TransferFunction) else system
    t, y = ss.step(t_final, dt)
    columns = {"time": t}
    for i, name in enumerate(ss.output_names):
        key = name if len(ss.output_names) > 1 else "y"
        columns[key] = y[:, i]
    return SimTrace(ts=dt, columns=columns)
