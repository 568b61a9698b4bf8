import math

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureFailure


# Relative size below which a guarded sum is treated as a cancelled zero
CANCELLATION_THRESHOLD = 1e-12


def guarded_sum(terms):
    """
    A function to add terms with exact (compensated) summation.

    Parameters
    ----------------------------------------------------------
    terms: iterable of float
        The terms to add.

    Returns
    ----------------------------------------------------------
    total: float
        The correctly rounded sum.
    scale: float
        Magnitude of the largest term, used to judge cancellation.
    """

    terms = [float(x) for x in terms]
    if len(terms) == 0:
        return 0.0, 0.0
    return math.fsum(terms), max(abs(x) for x in terms)


def is_cancelled(value, scale):
    """
    True if value is zero up to the rounding of terms of magnitude scale.
    """

    return abs(value) <= CANCELLATION_THRESHOLD * scale


def time_grid(t_max, size=512):
    """
    A function to generate the default composite time grid on [0, t_max].
    The first eighth of the points is logarithmic to resolve the early window,
    the rest is linear.

    Parameters
    ----------------------------------------------------------
    t_max: float
        The horizon T.
    size: int
        Number of points, including t = 0.
    """

    if size < 2:
        raise ValueError("A time grid needs at least 2 points.")
    if size < 16:
        return np.linspace(0.0, t_max, size)

    n_log = size // 8
    log_part = np.geomspace(t_max * 1e-4, t_max * 0.05, n_log, endpoint=False)
    lin_part = np.linspace(t_max * 0.05, t_max, size - 1 - n_log)
    return np.concatenate(([0.0], log_part, lin_part))


def log_offsets(d_min, d_max, size):
    """
    Offsets from an energy origin, spaced logarithmically from d_min to d_max.
    """

    return np.geomspace(d_min, d_max, size)


def gauss_legendre_rule(breakpoints, npts=12):
    """
    A function to build a composite Gauss-Legendre rule.
    Each interval between consecutive breakpoints gets npts nodes, so the rule
    is exact for piecewise polynomials of degree 2*npts-1 with those breakpoints.

    Parameters
    ----------------------------------------------------------
    breakpoints: numpy array
        Strictly increasing interval ends.
    npts: int
        Number of nodes per interval.

    Returns
    ----------------------------------------------------------
    x: numpy array
        Nodes.
    w: numpy array
        Weights.
    """

    breakpoints = np.asarray(breakpoints, dtype=np.float64)
    u, wu = np.polynomial.legendre.leggauss(npts)
    lo = breakpoints[:-1, None]
    half = 0.5 * np.diff(breakpoints)[:, None]
    x = lo + half * (u[None, :] + 1.0)
    w = half * wu[None, :]
    return x.ravel(), w.ravel()


def integrate(func, a, b, tol=1e-11, rtol=1e-12, limit=500, **kwargs):
    """
    A function to integrate func on [a, b] with QUADPACK (scipy.integrate.quad).
    Infinite limits are handled by quad's own variable transformation.

    Parameters
    ----------------------------------------------------------
    func: callable
        Scalar integrand.
    a, b: float
        Integration limits.
    tol: float
        Absolute tolerance.
    rtol: float
        Relative tolerance.
    kwargs:
        Passed to quad, e.g. weight="cos", wvar=t or points.

    Returns
    ----------------------------------------------------------
    value: float
        The integral.
    """

    if a == b:
        return 0.0

    res = quad(func, a, b, epsabs=tol, epsrel=rtol, limit=limit, full_output=1, **kwargs)
    value, abserr = res[0], res[1]
    if not np.isfinite(value):
        raise QuadratureFailure(np.inf, tol, "non-finite integral")
    # QUADPACK signals roundoff once the target sits at machine precision;
    # such results are accepted when the error estimate is still small
    if len(res) > 3 and abserr > 10.0 * max(tol, rtol * abs(value)):
        raise QuadratureFailure(abserr, tol, str(res[3]).strip())
    return value


def fourier_integral(func, a, b, t, tol=1e-11):
    """
    A function to compute the oscillatory integral of func(E) exp(-i E t)
    on [a, b] using QAWO (finite b) or QAWF (b = inf).

    Returns
    ----------------------------------------------------------
    value: complex
        Cosine part minus i times the sine part.
    """

    if t == 0:
        return complex(integrate(func, a, b, tol=tol))

    if np.isinf(b):
        # QAWF integrates from a finite a to infinity for a positive frequency
        c = integrate(func, a, np.inf, tol=tol, weight="cos", wvar=t)
        s = integrate(func, a, np.inf, tol=tol, weight="sin", wvar=t)
    else:
        c = integrate(func, a, b, tol=tol, weight="cos", wvar=t)
        s = integrate(func, a, b, tol=tol, weight="sin", wvar=t)
    return complex(c, -s)
