"""Decay-rate state-feedback design via an algebraic Riccati equation.

For the integrator chain dx/dt = A x + b u one asks for a quadratic
Lyapunov function V = x' P x decaying exactly as dV/dt = -alpha V under
the feedback u = -(b' P) x.  Eliminating u gives the equation

    (A + alpha/2 I)' P + P (A + alpha/2 I) - 2 P b b' P = 0

whose stabilizing (positive definite) solution carries the design gains
b' P.  This module solves it numerically with a Kleinman-Newton iteration
and serves as an oracle that is independent of the halving rule in the
``tuning`` module: only *stability* of the initial gain is used, never the
halving relation itself.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConvergenceError, DefinitenessError, DimensionError
from .tuning import bandwidth_controller_gains

MAX_RICCATI_ORDER = 10
RESIDUAL_TOL = 1e-12
MAX_ITERATIONS = 100


@dataclass(frozen=True, eq=False)
class RiccatiProblem:
    """Integrator-chain decay-rate design problem (A, b, alpha)."""

    a: np.ndarray
    b: np.ndarray
    alpha: float

    def __post_init__(self):
        a = linalg.as_matrix(self.a, max_dim=MAX_RICCATI_ORDER)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        n = a.shape[0]
        a_ref, b_ref = linalg.integrator_chain(n)
        if not np.array_equal(a, a_ref):
            raise DimensionError("A must be the exact upper-shift integrator chain")
        if b.shape != (n,) or not np.array_equal(b, b_ref):
            raise DimensionError("b must be the exact last unit vector")
        if self.alpha <= 0:
            raise ValueError(f"decay rate alpha must be > 0, got {self.alpha}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def for_chain(cls, n: int, alpha: float) -> "RiccatiProblem":
        a, b = linalg.integrator_chain(n)
        return cls(a=a, b=b, alpha=alpha)

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True, eq=False)
class RiccatiSolution:
    """Stabilizing solution P, design gains b' P, and the scaled residual.

    ``residual`` is the Frobenius norm of the Riccati equation left side
    divided by max(1, norm of its constituent terms), i.e. an absolute
    residual for O(1)-scale problems and a relative one for large alpha,
    where float64 cannot represent a small absolute residual.
    """

    p: np.ndarray
    gains: np.ndarray
    residual: float
    iterations: int


def _lyapunov_solve(a_cl, q):
    """Solve a_cl' P + P a_cl + q = 0 by Kronecker vectorization (column order)."""
    n = a_cl.shape[0]
    eye = np.eye(n)
    m = np.kron(eye, a_cl.T) + np.kron(a_cl.T, eye)
    p = linalg.solve(m, -q.flatten(order="F"))
    p = p.reshape((n, n), order="F")
    return 0.5 * (p + p.T)


def _residual(abar, b, p):
    lin = abar.T @ p + p @ abar
    pb = p @ b
    quad = 2.0 * np.outer(pb, pb)
    scale = max(1.0, np.linalg.norm(lin, "fro") + np.linalg.norm(quad, "fro"))
    return float(np.linalg.norm(lin - quad, "fro") / scale)


def solve_are(prob: RiccatiProblem, initial_gains=None,
              tol: float = RESIDUAL_TOL, max_iterations: int = MAX_ITERATIONS) -> RiccatiSolution:
    """Stabilizing Riccati solution by Kleinman-Newton iteration.

    Each step solves one Lyapunov equation (Kronecker-vectorized linear
    solve) for the current stabilizing gain and refreshes the gain from the
    resulting P.  The default initializer is the bandwidth-parameterization
    gain at bandwidth alpha, which places all poles of A - b k' at -alpha
    and therefore stabilizes A + alpha/2 I - b k'; any other stabilizing
    ``initial_gains`` may be supplied and must reach the same fixed point.
    """
    n, alpha = prob.n, prob.alpha
    abar = prob.a + 0.5 * alpha * np.eye(n)
    if initial_gains is None:
        gain = bandwidth_controller_gains(n, alpha).astype(float)
    else:
        gain = np.asarray(initial_gains, dtype=float).reshape(-1)
        if gain.shape != (n,):
            raise DimensionError(f"initial gains must have length {n}")
    closed = abar - np.outer(prob.b, gain)
    if np.any(np.linalg.eigvals(closed).real >= 0):
        raise ValueError("initial gains do not stabilize the shifted chain")

    p = np.zeros((n, n))
    residual = np.inf
    for iteration in range(1, max_iterations + 1):
        p = _lyapunov_solve(abar - np.outer(prob.b, gain), 0.5 * np.outer(gain, gain))
        gain = 2.0 * (p @ prob.b)
        residual = _residual(abar, prob.b, p)
        if residual < tol:
            break
    else:
        raise ConvergenceError(
            f"Riccati iteration did not reach residual {tol} in {max_iterations} steps",
            residual=residual,
        )

    asym = np.linalg.norm(p - p.T, "fro")
    if asym > 1e-10 * max(1.0, np.linalg.norm(p, "fro")):
        raise DefinitenessError(f"solution asymmetry {asym:.3e} too large")
    try:
        np.linalg.cholesky(p)
    except np.linalg.LinAlgError as exc:
        raise DefinitenessError("Riccati solution is not positive definite") from exc
    return RiccatiSolution(p=p, gains=p[-1, :].copy(), residual=residual,
                           iterations=iteration)


def alpha_controller_gains(n: int, alpha: float) -> np.ndarray:
    """State-feedback gains b' P for the order-n chain at decay rate alpha."""
    return solve_are(RiccatiProblem.for_chain(n, alpha)).gains


def alpha_observer_gains(n: int, alpha: float) -> np.ndarray:
    """Observer gains for the extended (n+1)-state chain at decay rate alpha.

    The observer design for (A_eso, c = e_1') is the state-feedback design
    for the transposed pair; reversing the state order maps that pair back
    onto the standard chain, so the gains are the reversed chain gains of
    order n+1.
    """
    return alpha_controller_gains(n + 1, alpha)[::-1].copy()


def lyapunov_decay_check(p, a_cl, alpha: float) -> float:
    """Frobenius norm of a_cl' P + P a_cl + alpha P.

    A value at roundoff level certifies dV/dt = -alpha V along closed-loop
    trajectories for V = x' P x.
    """
    p = linalg.as_matrix(p)
    a_cl = linalg.as_matrix(a_cl)
    if p.shape != a_cl.shape:
        raise DimensionError(f"shape mismatch: P {p.shape} vs closed loop {a_cl.shape}")
    return float(np.linalg.norm(a_cl.T @ p + p @ a_cl + alpha * p, "fro"))
