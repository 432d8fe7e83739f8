"""Dense linear-algebra and polynomial kernel used by every other module.

Polynomials are 1-D float arrays of coefficients in descending powers with
no stored leading zeros.  Matrices are plain 2-D numpy arrays; all
constructors reject non-finite entries.  Everything here is a pure function
on immutable inputs.
"""

import warnings

import numpy as np
import scipy.linalg

from .errors import DimensionError, RootFindingError, SingularMatrixError, NumericsError

MAX_CHARPOLY_DIM = 32
MAX_EXPM_DIM = 64

ROOT_RESIDUAL_TOL = 1e-8
CONJUGATE_PAIR_TOL = 1e-9


def as_matrix(m, max_dim=None, square=True):
    """Validate and return ``m`` as a finite 2-D array (float or complex)."""
    a = np.asarray(m)
    if not np.iscomplexobj(a):
        a = a.astype(float, copy=False)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if max_dim is not None and max(a.shape) > max_dim:
        raise DimensionError(f"matrix dimension {max(a.shape)} exceeds limit {max_dim}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("matrix entries must be finite")
    return a


def trim(coeffs):
    """Drop leading zero coefficients; the zero polynomial becomes [0.]."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    nonzero = np.nonzero(c)[0]
    if nonzero.size == 0:
        return np.zeros(1)
    return c[nonzero[0]:]


def integrator_chain(n: int):
    """State-space pair (A, b) of the pure integrator chain 1/s^n.

    A is the upper-shift matrix, b the last unit vector, so that state i
    is the (i-1)-th derivative of the output.
    """
    if n < 1:
        raise DimensionError("chain order must be >= 1")
    a = np.eye(n, k=1)
    b = np.zeros(n)
    b[-1] = 1.0
    return a, b


def companion(coeffs):
    """Companion matrix of a polynomial (normalized to monic internally)."""
    c = trim(coeffs)
    if c.size < 2:
        raise DimensionError("companion matrix needs degree >= 1")
    monic = c / c[0]
    m = np.eye(monic.size - 2, monic.size - 1, k=1)
    last = -monic[::-1][:-1]
    return np.vstack([m, last])


def faddeev_leverrier(m):
    """Characteristic polynomial and resolvent numerator matrices of ``m``.

    Returns ``(coeffs, mats)`` with ``coeffs`` the monic characteristic
    polynomial (descending powers, length n+1) and ``mats`` the matrices
    M_1..M_n such that (sI - m)^-1 = sum_k M_k s^(n-k) / charpoly(s).
    """
    a = as_matrix(m, max_dim=MAX_CHARPOLY_DIM)
    n = a.shape[0]
    coeffs = np.empty(n + 1, dtype=a.dtype)
    coeffs[0] = 1.0
    mats = []
    mk = np.eye(n, dtype=a.dtype)
    for k in range(1, n + 1):
        mats.append(mk)
        am = a @ mk
        ck = -np.trace(am) / k
        coeffs[k] = ck
        mk = am + ck * np.eye(n, dtype=a.dtype)
    return coeffs, mats


def charpoly(m):
    """Monic characteristic polynomial det(sI - m), descending powers."""
    coeffs, _ = faddeev_leverrier(m)
    return coeffs


def poly_roots(coeffs):
    """All roots of a real polynomial via companion-matrix eigenvalues.

    Roots are sorted by (real, imag) for deterministic output.  Each root
    satisfies |p(root)| / ||p|| < 1e-8 on the monic-normalized polynomial
    for the O(1)-scale problems this kernel serves; the runtime guard
    additionally discounts the evaluation blow-up max(1, |root|)^degree so
    that backward-stable roots of large magnitude are not rejected.
    """
    c = trim(coeffs)
    if c.size == 1 and c[0] == 0.0:
        raise RootFindingError("the zero polynomial has undefined roots")
    if c.size == 1:
        raise RootFindingError("a nonzero constant has no roots")
    monic = c / c[0]
    degree = monic.size - 1
    if monic.size == 2:
        roots = np.array([-monic[1]], dtype=complex)
    else:
        roots = np.linalg.eigvals(companion(monic))
    amplification = np.maximum(1.0, np.abs(roots)) ** degree
    residual = np.abs(np.polyval(monic, roots)) / (np.linalg.norm(monic) * amplification)
    worst = float(residual.max())
    if worst >= ROOT_RESIDUAL_TOL:
        raise NumericsError(f"root residual {worst:.3e} exceeds {ROOT_RESIDUAL_TOL}")
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def expm(m, t: float = 1.0):
    """Matrix exponential e^(m t) by scaling-and-squaring Pade approximation."""
    a = as_matrix(m, max_dim=MAX_EXPM_DIM)
    return scipy.linalg.expm(a * float(t))


def solve(m, rhs):
    """Solve m @ x = rhs by partial-pivot LU; works for real and complex data.

    Raises SingularMatrixError (carrying the offending pivot magnitude) when
    the matrix is singular to working precision.
    """
    a = as_matrix(m)
    b = np.asarray(rhs)
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"rhs has {b.shape[0]} rows, matrix has {a.shape[0]}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    except (ValueError, scipy.linalg.LinAlgError) as exc:
        raise SingularMatrixError(f"LU factorization failed: {exc}") from exc
    pivots = np.abs(np.diag(lu))
    pmax = pivots.max() if pivots.size else 0.0
    pmin = pivots.min() if pivots.size else 0.0
    if pmax == 0.0 or pmin <= pmax * a.shape[0] * np.finfo(float).eps:
        raise SingularMatrixError(
            f"matrix singular to working precision (pivot {pmin:.3e})", pivot=float(pmin)
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
