"""adrckit: linear active disturbance rejection control design and analysis.

Gain rules (bandwidth parameterization and exact half-gain tuning), an
independent algebraic-Riccati cross-check of the halving rule, controller
assembly with ZOH discretization, gang-of-six loop analysis, and a
deterministic closed-loop simulator.  A FastAPI service and a CLI expose
the same operations.
"""

from .adrc import (AdrcController, DiscreteController, EsoSystem,
                   build_controller, build_eso, controller_step, discretize_zoh)
from .analysis import (FrequencyResponse, GangOfSix, closed_loop,
                       controller_feedback_tf, freq_response, gang_of_six,
                       loop_gain, step_response)
from .lti import SimTrace, StateSpace, TransferFunction
from .riccati import (RiccatiProblem, RiccatiSolution, alpha_controller_gains,
                      alpha_observer_gains, lyapunov_decay_check, solve_are)
from .sim import (Metrics, SignalSpec, gaussian_noise, metrics,
                  noise_sensitivity_study, simulate, write_trace_csv)
from .tuning import (GainSet, TuningConfig, TuningMode,
                     bandwidth_controller_gains, bandwidth_observer_gains,
                     half_gain_controller, half_gain_observer, tune)

__version__ = "0.1.0"

__all__ = [
    "AdrcController", "DiscreteController", "EsoSystem", "FrequencyResponse",
    "GainSet", "GangOfSix", "Metrics", "RiccatiProblem", "RiccatiSolution",
    "SignalSpec", "SimTrace", "StateSpace", "TransferFunction", "TuningConfig",
    "TuningMode", "alpha_controller_gains", "alpha_observer_gains",
    "bandwidth_controller_gains", "bandwidth_observer_gains", "build_controller",
    "build_eso", "closed_loop", "controller_feedback_tf", "controller_step",
    "discretize_zoh", "freq_response", "gang_of_six", "gaussian_noise",
    "half_gain_controller", "half_gain_observer", "loop_gain",
    "lyapunov_decay_check", "metrics", "noise_sensitivity_study",
    "simulate", "solve_are", "step_response", "tune", "write_trace_csv",
]
