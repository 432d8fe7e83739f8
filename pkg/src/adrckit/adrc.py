"""Assembly of the extended state observer and control law into one LTI
controller with inputs (r, y) and output u, plus its ZOH discretization.

The observer runs on the integrator-chain design model extended by one
state that lumps input disturbance and model mismatch.  Substituting the
control law into the observer is done algebraically, which makes the last
column of the controller dynamics matrix exactly zero: the lumped
disturbance estimate acts as a structural integrator.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .lti import zoh_discretize
from .tuning import GainSet, TuningConfig


@dataclass(frozen=True, eq=False)
class EsoSystem:
    """Extended state observer matrices and gain vector."""

    a_eso: np.ndarray
    b_eso: np.ndarray
    c_eso: np.ndarray
    l: np.ndarray

    @property
    def error_dynamics(self) -> np.ndarray:
        """Estimation error matrix A_eso - l c_eso'."""
        return self.a_eso - np.outer(self.l, self.c_eso)


@dataclass(frozen=True, eq=False)
class AdrcController:
    """Continuous-time controller: dx/dt = a_ctrl x + b_r r + b_y y,
    u = c_u x + d_r r (d_y is identically zero)."""

    a_ctrl: np.ndarray
    b_r: np.ndarray
    b_y: np.ndarray
    c_u: np.ndarray
    d_r: float
    d_y: float
    cfg: TuningConfig

    @property
    def n_states(self) -> int:
        return self.a_ctrl.shape[0]


@dataclass(frozen=True, eq=False)
class DiscreteController:
    """ZOH-discretized controller state update at sample time ts."""

    ad: np.ndarray
    bd_r: np.ndarray
    bd_y: np.ndarray
    c_u: np.ndarray
    d_r: float
    ts: float

    @property
    def n_states(self) -> int:
        return self.ad.shape[0]


def build_eso(cfg: TuningConfig, gains: GainSet) -> EsoSystem:
    """Observer for the b0/s^n model extended by a lumped-disturbance state."""
    n = cfg.n
    if gains.l.size != n + 1:
        raise DimensionError(f"observer gains have length {gains.l.size}, expected {n + 1}")
    a_eso = np.eye(n + 1, k=1)
    b_eso = np.zeros(n + 1)
    b_eso[n - 1] = cfg.b0
    c_eso = np.zeros(n + 1)
    c_eso[0] = 1.0
    return EsoSystem(a_eso=a_eso, b_eso=b_eso, c_eso=c_eso, l=gains.l.copy())


def build_controller(cfg: TuningConfig, gains: GainSet) -> AdrcController:
    """Substitute u = (k1 r - [k' 1] x_hat) / b0 into the observer.

    The feedback row [k' 1] scales the chain estimates by k and cancels the
    disturbance estimate one-to-one; b0 is inverted at the output.
    """
    n = cfg.n
    if gains.k.size != n:
        raise DimensionError(f"controller gains have length {gains.k.size}, expected {n}")
    eso = build_eso(cfg, gains)
    feedback_row = np.concatenate([gains.k, [1.0]])
    a_ctrl = (eso.a_eso
              - np.outer(eso.b_eso / cfg.b0, feedback_row)
              - np.outer(eso.l, eso.c_eso))
    b_r = (gains.k[0] / cfg.b0) * eso.b_eso
    b_y = eso.l.copy()
    c_u = -feedback_row / cfg.b0
    d_r = gains.k[0] / cfg.b0
    return AdrcController(a_ctrl=a_ctrl, b_r=b_r, b_y=b_y, c_u=c_u,
                          d_r=d_r, d_y=0.0, cfg=cfg)


def discretize_zoh(ctrl: AdrcController, ts: float) -> DiscreteController:
    """ZOH discretization of the assembled controller at sample time ts.

    Warns when ts exceeds a tenth of the observer time constant, since the
    fastest controller modes then become badly undersampled.
    """
    if ts <= 0:
        raise ValueError(f"sample time must be positive, got {ts}")
    if ts > 0.1 / ctrl.cfg.omega_obs:
        warnings.warn(
            f"sample time {ts} exceeds 0.1/omega_obs = {0.1 / ctrl.cfg.omega_obs:.4g}; "
            "the discretized controller may distort the observer dynamics",
            stacklevel=2,
        )
    b = np.column_stack([ctrl.b_r, ctrl.b_y])
    ad, bd = zoh_discretize(ctrl.a_ctrl, b, ts)
    return DiscreteController(ad=ad, bd_r=bd[:, 0].copy(), bd_y=bd[:, 1].copy(),
                              c_u=ctrl.c_u.copy(), d_r=ctrl.d_r, ts=ts)


def controller_step(dc: DiscreteController, state, r: float, y: float):
    """One control period: emit u from the current state, then advance it.

    Returns ``(u, next_state)``; callers own the state vector.
    """
    state = np.asarray(state, dtype=float)
    if state.shape != (dc.n_states,):
        raise DimensionError(f"state has shape {state.shape}, expected ({dc.n_states},)")
    u = float(dc.c_u @ state + dc.d_r * r)
    next_state = dc.ad @ state + dc.bd_r * r + dc.bd_y * y
    return u, next_state
