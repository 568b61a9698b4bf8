# Author: Hauxu Yu

# A module to compute the exact survival amplitude A(t) = int rho(E) exp(-i E t) dE
# and the autocorrelation W(eps) of the energy distribution

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.special import spherical_jn

from .distributions import BreitWigner, Discrete, GammaHalf, PowerLaw, Square, Tabulated
from .errors import InputError, UnsupportedDistribution
from .utils_functions import fourier_integral, gauss_legendre_rule, integrate

logger = logging.getLogger(__name__)

# Energy, in units of the scale, where the quadrature of slowly decaying densities
# changes from a finite oscillatory rule to the Fourier-integral rule
HEAD_LENGTH = 10.0


@dataclass(frozen=True)
class SurvivalSample:
    """
    The exact survival at one time, with A(t) = re - i im.
    """

    t: float
    re: float
    im: float
    abs: float
    p: float

    @classmethod
    def from_amplitude(cls, t, amplitude):
        amplitude = complex(amplitude)
        magnitude = abs(amplitude)
        return cls(float(t), amplitude.real, -amplitude.imag, magnitude, magnitude * magnitude)


def _closed_form(dist, t):
    """
    A(t) for the kinds with a closed form, vectorized over t.
    """

    if isinstance(dist, GammaHalf):
        return (1.0 + 1j * dist.gamma * t) ** -0.5
    if isinstance(dist, BreitWigner):
        return np.exp(-1j * dist.e0 * t - dist.gamma * t)
    if isinstance(dist, Square):
        x = dist.m * t / 2.0
        return np.exp(-1j * x) * np.sinc(x / np.pi)
    if isinstance(dist, Discrete):
        return np.exp(-1j * np.outer(t, dist.energies)) @ dist.probabilities
    if isinstance(dist, Tabulated):
        return _tabulated_amplitude(dist, t)
    return None


def _tabulated_amplitude(dist, t):
    """
    The Fourier transform of a piecewise-linear density, exact on every sample interval:
    h exp(-i t x_m) [f_m j0(t h / 2) - i (f_b - f_a) / 2 j1(t h / 2)].
    """

    x = dist.energies
    f = dist.densities / dist.weight
    h = np.diff(x)
    xm = 0.5 * (x[1:] + x[:-1])
    fm = 0.5 * (f[1:] + f[:-1])
    df = np.diff(f)

    theta = np.outer(t, h) / 2.0
    phase = np.exp(-1j * np.outer(t, xm))
    terms = h * phase * (fm * spherical_jn(0, theta) - 0.5j * df * spherical_jn(1, theta))
    return terms.sum(axis=1)


def _quadrature_amplitude(dist, t, tol):
    """
    A(t) at one time by oscillatory quadrature: QAWO on finite pieces, QAWF on
    infinite tails.
    """

    if t == 0:
        return 1.0 + 0.0j
    if isinstance(dist, Discrete):
        return complex(_closed_form(dist, np.array([t]))[0])

    lower, upper = dist.support_lower, dist.support_upper
    if np.isinf(lower):
        # fold the negative half-line onto the positive one about the center
        center = getattr(dist, "e0", 0.0)
        right = fourier_integral(lambda e: dist.density(center + e), 0.0, np.inf, t, tol=tol)
        left = fourier_integral(lambda e: dist.density(center - e), 0.0, np.inf, t, tol=tol)
        return np.exp(-1j * center * t) * (right + left.conjugate())

    if np.isfinite(upper):
        if isinstance(dist, Tabulated):
            # one oscillatory rule per sample interval, where the density is smooth
            return sum(fourier_integral(dist.density, a, b, t, tol=tol / len(dist.energies))
                       for a, b in zip(dist.energies[:-1], dist.energies[1:]))
        return fourier_integral(dist.density, lower, upper, t, tol=tol)

    head = lower + HEAD_LENGTH * dist.scale
    if isinstance(dist, GammaHalf):
        # E = u^2 removes the inverse square root at the origin
        def weight(u):
            return 2.0 * u * dist.density(u * u)

        re = integrate(lambda u: weight(u) * np.cos(u * u * t), 0.0, np.sqrt(head), tol=tol)
        im = integrate(lambda u: weight(u) * np.sin(u * u * t), 0.0, np.sqrt(head), tol=tol)
        head_part = complex(re, -im)
    else:
        head_part = fourier_integral(dist.density, lower, head, t, tol=tol)
    return head_part + fourier_integral(dist.density, head, np.inf, t, tol=tol)


def exact_amplitude(dist, t, method="auto", tol=1e-9):
    """
    A function to compute the complex survival amplitude on an array of times.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    t: float or numpy array
        Times, t >= 0.
    method: str
        "auto" uses closed forms where known and quadrature otherwise;
        "quadrature" forces the oscillatory quadrature.
    tol: float
        Absolute tolerance of the quadrature.

    Returns
    ----------------------------------------------------------
    numpy array of complex
    """

    if method not in ("auto", "quadrature"):
        raise InputError("Unknown method '{}'".format(method))
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(t < 0):
        raise InputError("Times must be non-negative.")

    amplitude = None
    if method == "auto":
        amplitude = _closed_form(dist, t)
    if amplitude is None:
        if not isinstance(dist, (PowerLaw, GammaHalf, BreitWigner, Square, Tabulated, Discrete)):
            raise UnsupportedDistribution("No survival oracle for {}".format(dist.kind))
        logger.debug("Survival of the %s distribution by quadrature on %d times.", dist.kind, len(t))
        amplitude = np.array([_quadrature_amplitude(dist, ti, tol) for ti in t])
    amplitude = np.asarray(amplitude, dtype=np.complex128)
    amplitude[t == 0] = 1.0
    return amplitude


def exact_survival(dist, t, method="auto", tol=1e-9):
    """
    A function to compute the exact survival at one time.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    t: float
        Time, t >= 0.

    Returns
    ----------------------------------------------------------
    SurvivalSample
    """

    amplitude = exact_amplitude(dist, t, method=method, tol=tol)[0]
    return SurvivalSample.from_amplitude(t, amplitude)


def survival_frame(dist, t, method="auto", tol=1e-9):
    """
    The exact survival on the times t, with columns t, re, im, abs, p.
    """

    t = np.asarray(t, dtype=np.float64)
    amplitude = exact_amplitude(dist, t, method=method, tol=tol)
    magnitude = np.abs(amplitude)
    return pd.DataFrame({
        "t": t,
        "re": amplitude.real,
        "im": -amplitude.imag,
        "abs": magnitude,
        "p": magnitude ** 2,
    })


def autocorrelation(dist, eps, tol=1e-10):
    """
    A function to compute the autocorrelation W(eps) = 2 int rho(E) rho(E + eps) dE.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        A distribution with a density.
    eps: float
        Energy offset; W is even in eps.

    Returns
    ----------------------------------------------------------
    float
    """

    if isinstance(dist, Discrete):
        raise UnsupportedDistribution("A discrete spectrum has no autocorrelation density.")
    eps = abs(float(eps))
    lower, upper = dist.support_lower, dist.support_upper
    if eps >= upper - lower:
        return 0.0

    if isinstance(dist, Square):
        return 2.0 * (dist.m - eps) / dist.m ** 2
    if isinstance(dist, Tabulated):
        # the product of two piecewise-linear densities is piecewise quadratic
        nodes = np.union1d(dist.energies, dist.energies - eps)
        nodes = nodes[(nodes >= lower) & (nodes <= upper - eps)]
        x, w = gauss_legendre_rule(nodes)
        return float(2.0 * np.sum(w * dist.density(x) * dist.density(x + eps)))

    def integrand(e):
        return dist.density(e) * dist.density(e + eps)

    if np.isinf(lower):
        # split at the peaks of both factors
        center = getattr(dist, "e0", 0.0)
        pieces = [(-np.inf, center - eps), (center - eps, center), (center, np.inf)]
    else:
        pieces = [(lower, upper - eps)]
    return 2.0 * sum(integrate(integrand, a, b, tol=tol) for a, b in pieces)
