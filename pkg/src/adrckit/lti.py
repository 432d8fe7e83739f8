"""Transfer-function and state-space containers plus exact ZOH stepping.

Transfer functions store numerator/denominator coefficients in descending
powers, normalized so the denominator is monic.  State-space systems are
dense (A, B, C, D) with optional signal names.  Discretization is always
zero-order hold via the augmented matrix exponential, which is exact for
piecewise-constant inputs.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimensionError

MINREAL_TOL = 1e-7


def zoh_discretize(a, b, ts: float):
    """Exact ZOH discretization: ad = e^(a ts), bd = (integral of e^(a t)) b."""
    if ts <= 0:
        raise ValueError(f"sample time must be positive, got {ts}")
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if b.shape[0] != a.shape[0]:
        b = b.T
    n, ni = a.shape[0], b.shape[1]
    aug = np.zeros((n + ni, n + ni))
    aug[:n, :n] = a
    aug[:n, n:] = b
    phi = linalg.expm(aug, ts)
    return phi[:n, :n], phi[:n, n:]


@dataclass(frozen=True, eq=False)
class TransferFunction:
    """Rational function num(s)/den(s), denominator normalized to monic."""

    num: np.ndarray
    den: np.ndarray

    def __init__(self, num, den):
        den = linalg.trim(den)
        if den.size == 1 and den[0] == 0.0:
            raise ValueError("transfer function denominator is zero")
        num = linalg.trim(num)
        scale = den[0]
        object.__setattr__(self, "num", num / scale)
        object.__setattr__(self, "den", den / scale)

    @property
    def order(self) -> int:
        return self.den.size - 1

    def is_proper(self) -> bool:
        return self.num.size <= self.den.size

    def is_strictly_proper(self) -> bool:
        return self.num.size < self.den.size

    def __call__(self, s):
        """Evaluate at (complex) s by Horner's scheme; poles map to inf."""
        s = np.asarray(s, dtype=complex)
        num = np.polyval(self.num, s)
        den = np.polyval(self.den, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(den == 0.0, np.inf + 0j, num / np.where(den == 0.0, 1.0, den))
        return out if out.ndim else complex(out)

    def __mul__(self, other: "TransferFunction") -> "TransferFunction":
        return TransferFunction(np.convolve(self.num, other.num),
                                np.convolve(self.den, other.den))

    def __neg__(self) -> "TransferFunction":
        return TransferFunction(-self.num, self.den)

    def poles(self):
        return linalg.poly_roots(self.den)

    def zeros(self):
        if self.num.size < 2:
            return np.array([], dtype=complex)
        return linalg.poly_roots(self.num)

    def dcgain(self) -> float:
        num0, den0 = self.num[-1], self.den[-1]
        if den0 == 0.0:
            return np.inf if num0 != 0.0 else np.nan
        return float(num0 / den0)

    def minreal(self, tol: float = MINREAL_TOL) -> "TransferFunction":
        """Cancel pole/zero pairs closer than ``tol``."""
        if self.num.size < 2:
            return self
        gain = self.num[0]
        zeros = list(self.zeros())
        poles = list(self.poles())
        kept_poles = []
        for p in poles:
            hit = None
            for i, z in enumerate(zeros):
                if abs(p - z) < tol:
                    hit = i
                    break
            if hit is None:
                kept_poles.append(p)
            else:
                zeros.pop(hit)
        num = np.real(np.poly(zeros)) * gain if zeros else np.array([gain])
        den = np.real(np.poly(kept_poles)) if kept_poles else np.array([1.0])
        return TransferFunction(num, den)

    def to_ss(self) -> "StateSpace":
        """Controllable canonical realization (requires a proper function)."""
        if not self.is_proper():
            raise ValueError("cannot realize an improper transfer function")
        n = self.order
        if n == 0:
            return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)),
                              np.zeros((1, 0)), np.array([[self.num[-1]]]))
        num = np.concatenate([np.zeros(self.den.size - self.num.size), self.num])
        d = num[0]
        rem = num[1:] - d * self.den[1:]
        a = np.eye(n, k=1)
        a[-1, :] = -self.den[:0:-1]
        b = np.zeros((n, 1))
        b[-1, 0] = 1.0
        c = rem[::-1].reshape(1, n)
        return StateSpace(a, b, c, np.array([[d]]))


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Dense LTI system dx/dt = A x + B u, y = C x + D u with named signals."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    input_names: tuple = ()
    output_names: tuple = ()

    def __post_init__(self):
        a = linalg.as_matrix(self.a)
        b = np.atleast_2d(np.asarray(self.b, dtype=float))
        if b.shape[0] != a.shape[0] and b.shape[1] == a.shape[0]:
            b = b.T
        c = np.atleast_2d(np.asarray(self.c, dtype=float))
        d = np.atleast_2d(np.asarray(self.d, dtype=float))
        if a.shape[0] and b.shape[0] != a.shape[0]:
            raise DimensionError(f"B has {b.shape[0]} rows, expected {a.shape[0]}")
        if a.shape[0] and c.shape[1] != a.shape[1]:
            raise DimensionError(f"C has {c.shape[1]} columns, expected {a.shape[1]}")
        if d.shape != (c.shape[0], b.shape[1]):
            raise DimensionError(f"D has shape {d.shape}, expected {(c.shape[0], b.shape[1])}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        if not self.input_names:
            object.__setattr__(self, "input_names",
                               tuple(f"u{i + 1}" for i in range(b.shape[1])))
        if not self.output_names:
            object.__setattr__(self, "output_names",
                               tuple(f"y{i + 1}" for i in range(c.shape[0])))

    @property
    def n_states(self) -> int:
        return self.a.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.b.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.c.shape[0]

    def eigenvalues(self):
        return np.linalg.eigvals(self.a)

    def transfer_function(self, input: int = 0, output: int = 0) -> TransferFunction:
        """Exact polynomial extraction of one SISO path via resolvent expansion."""
        coeffs, mats = linalg.faddeev_leverrier(self.a)
        bcol = self.b[:, input]
        crow = self.c[output, :]
        sp = np.array([crow @ mk @ bcol for mk in mats])
        num = self.d[output, input] * coeffs
        num[1:] += sp
        return TransferFunction(num, coeffs)

    def dcgain(self):
        """Steady-state gain matrix D - C A^-1 B (A must be invertible)."""
        return self.d - self.c @ linalg.solve(self.a, self.b)

    def frequency_response(self, omegas):
        """Complex response C (jwI - A)^-1 B + D, shape (n_w, n_out, n_in)."""
        omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
        eye = np.eye(self.n_states)
        out = np.empty((omegas.size, self.n_outputs, self.n_inputs), dtype=complex)
        for i, w in enumerate(omegas):
            x = linalg.solve(1j * w * eye - self.a, self.b)
            out[i] = self.c @ x + self.d
        return out

    def discretize(self, ts: float):
        return zoh_discretize(self.a, self.b, ts)

    def step(self, t_final: float, dt: float, input: int = 0):
        """ZOH-exact unit-step response; returns (t, y) with y shaped (N, n_out)."""
        if dt <= 0 or t_final <= dt:
            raise ValueError("need dt > 0 and t_final > dt")
        ad, bd = self.discretize(dt)
        n_steps = int(round(t_final / dt))
        t = np.arange(n_steps + 1) * dt
        x = np.zeros(self.n_states)
        bcol = bd[:, input]
        dcol = self.d[:, input]
        y = np.empty((n_steps + 1, self.n_outputs))
        for k in range(n_steps + 1):
            y[k] = self.c @ x + dcol
            x = ad @ x + bcol
        return t, y


@dataclass(frozen=True, eq=False)
class SimTrace:
    """Uniformly sampled signals: a 'time' column plus named data columns."""

    ts: float
    columns: dict = field(default_factory=dict)

    def __post_init__(self):
        if "time" not in self.columns:
            raise ValueError("trace needs a 'time' column")
        t = np.asarray(self.columns["time"])
        lengths = {name: len(col) for name, col in self.columns.items()}
        if len(set(lengths.values())) != 1:
            raise ValueError(f"trace columns have unequal lengths: {lengths}")
        if t.size > 1:
            steps = np.diff(t)
            if not np.all(steps > 0):
                raise ValueError("time must be strictly increasing")
            if not np.allclose(steps, self.ts, rtol=1e-9, atol=1e-12):
                raise ValueError("time increments must equal the sample time")

    @property
    def time(self):
        return self.columns["time"]

    @property
    def names(self):
        return list(self.columns)

    def column(self, name: str):
        return self.columns[name]

    def __len__(self) -> int:
        return len(self.columns["time"])
