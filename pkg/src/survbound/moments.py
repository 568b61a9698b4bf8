# Author: Hauxu Yu

# A module for the moment algebra behind the bounds
# 1. energy moments h_k -> autocorrelation moments e_n
# 2. truncated moments -> edge moments b_n about the cut-off
# 3. edge moments -> truncated autocorrelation moments
# All quantities are stored in factorial-scaled form X_k = x_k / k!

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import (InputError, InsufficientOrder, NonPositiveCorrelationMoment,
                     NonPositiveEdgeMoment, OrderTooLarge, QuadratureFailure)
from .params import MAX_ORDER
from .utils_functions import guarded_sum, is_cancelled, integrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MomentVector:
    """
    Energy moments H_k = h_k / k! for k = 0..order of a unit-weight density,
    possibly truncated to a cut-off window.

    Attributes
    ----------------------------------------------------------
    scaled: numpy array, H_0..H_n
    alpha: float, weight of the window the moments were taken over
    edge: float, upper edge of the truncation window (None without cut-off)
    central: numpy array, the same moments taken about the mean (None if not computed directly)
    """

    scaled: np.ndarray
    alpha: float = 1.0
    edge: float | None = None
    central: np.ndarray | None = None

    @property
    def order(self):
        return len(self.scaled) - 1

    def h(self, k):
        """
        The unscaled moment h_k.
        """
        return self.scaled[k] * factorial(k)

    def variance(self):
        return self.h(2) - self.h(1) ** 2

    def centred(self):
        """
        Moments about the mean, H'_k = sum_j (-h_1)^j / j! H_{k-j}.
        Values computed directly by the distribution (central) take precedence.
        """
        if self.central is not None:
            return self.central
        H = self.scaled
        if len(H) < 2:
            return H
        shift = [(-H[1]) ** j / factorial(j) for j in range(len(H))]
        values = [H[0]]
        for k in range(1, len(H)):
            value, _ = guarded_sum(shift[j] * H[k - j] for j in range(k + 1))
            values.append(value)
        values[1] = 0.0
        return np.array(values)


@dataclass(frozen=True, eq=False)
class CorrelationMoments:
    """
    Autocorrelation moments E_k = e_k / k! for even k = 0..order.

    Attributes
    ----------------------------------------------------------
    scaled: numpy array, E_0, E_2, ..., E_n (even orders only)
    degenerate: bool, True for a zero-width (point mass) distribution
    """

    scaled: np.ndarray
    degenerate: bool = False

    @property
    def order(self):
        return 2 * (len(self.scaled) - 1)

    def E(self, k):
        """
        The scaled moment of even order k.
        """
        if k % 2 != 0:
            raise InputError("Correlation moments exist for even orders only, got {}".format(k))
        if k > self.order:
            raise InsufficientOrder(k, self.order)
        return self.scaled[k // 2]

    def e(self, k):
        return self.E(k) * factorial(k)

    def delta_e(self):
        """
        The energy uncertainty, from e_2 = 2 (Delta E)^2.
        """
        return float(np.sqrt(self.E(2)))


@dataclass(frozen=True, eq=False)
class EdgeMoments:
    """
    Edge moments B_k = b_k / k! of a truncated density about its cut-off c.
    """

    cutoff: float
    scaled: np.ndarray

    @property
    def order(self):
        return len(self.scaled) - 1

    def B(self, k):
        if k > self.order:
            raise InsufficientOrder(k, self.order)
        return self.scaled[k]

    def b(self, k):
        return self.B(k) * factorial(k)


def check_order(n, even=False):
    """
    A function to check a requested moment order.
    """

    if n < 0:
        raise InputError("Order must be non-negative, got {}".format(n))
    if n > MAX_ORDER:
        raise OrderTooLarge(n, MAX_ORDER)
    if even and n % 2 != 0:
        raise InputError("Order must be even, got {}".format(n))


def e_from_h(h, n):
    """
    A function to express the autocorrelation moments through the energy moments:
    E_n = 2 sum_{j<n/2} (-1)^j H_j H_{n-j} + (-1)^{n/2} H_{n/2}^2.
    E_n does not change under a shift of the energies, so the sum runs over
    the moments about the mean.

    Parameters
    ----------------------------------------------------------
    h: MomentVector
        Energy moments through order n (raw or truncated).
    n: int
        Even order.

    Returns
    ----------------------------------------------------------
    CorrelationMoments
        E_0..E_n; flagged degenerate when every E_k (k >= 2) vanishes.
    """

    check_order(n, even=True)
    if h.order < n:
        raise InsufficientOrder(n, h.order)

    H = h.centred()
    values = [1.0]
    zeros = []
    for k in range(2, n + 1, 2):
        terms = [2.0 * (-1) ** j * H[j] * H[k - j] for j in range(k // 2)]
        terms.append((-1) ** (k // 2) * H[k // 2] ** 2)
        value, scale = guarded_sum(terms)
        if is_cancelled(value, scale):
            zeros.append(k)
            value = 0.0
        elif value < 0:
            raise NonPositiveCorrelationMoment(k, value)
        values.append(value)

    degenerate = n >= 2 and len(zeros) == n // 2
    if zeros and not degenerate:
        logger.debug("Correlation moments of orders %s vanish within rounding.", zeros)
    return CorrelationMoments(np.array(values), degenerate=degenerate)


def e_brute_force(dist, n, tol=1e-8):
    """
    A function to compute e_n as the double integral of rho(E) rho(E') (E - E')^n.
    Serves as an independent check of e_from_h.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    n: int
        Even order.
    tol: float
        Absolute tolerance of the double integral.

    Returns
    ----------------------------------------------------------
    CorrelationMoments
        E_0..E_n.
    """

    check_order(n, even=True)
    values = [1.0]

    rule = dist.quadrature_rule()
    if rule is not None:
        # exact product rule: atoms, or Gauss-Legendre nodes of a piecewise polynomial
        x, w = rule
        diff = np.subtract.outer(x, x)
        ww = np.outer(w, w)
        for k in range(2, n + 1, 2):
            values.append(guarded_sum((ww * diff ** k).ravel())[0] / factorial(k))
        return CorrelationMoments(np.array(values))

    lower, upper = dist.support_lower, dist.support_upper
    for k in range(2, n + 1, 2):
        def inner(energy, k=k):
            return dist.density(energy) * integrate(
                lambda e2: dist.density(e2) * (energy - e2) ** k, lower, upper, tol=tol * 1e-2, rtol=1e-10)
        try:
            value = integrate(inner, lower, upper, tol=tol, rtol=1e-9)
        except QuadratureFailure as err:
            raise QuadratureFailure(err.achieved, tol, "double integral of order {}".format(k))
        values.append(value / factorial(k))
    return CorrelationMoments(np.array(values))


def b_from_h(hbar, c=None, n=None):
    """
    A function to compute the edge moments about the cut-off from truncated moments.
    (c - E)^k is expanded binomially, so that
    B_k = sum_j c^j / j! (-1)^(k-j) Hbar_{k-j},
    which is the defining integral b_k = alpha^-1 int rho(E) (c - E)^k dE divided by k!.

    Parameters
    ----------------------------------------------------------
    hbar: MomentVector
        Truncated moments.
    c: float
        The cut-off (upper edge of the window). Defaults to hbar.edge.
    n: int
        Highest order. Defaults to hbar.order.

    Returns
    ----------------------------------------------------------
    EdgeMoments
        B_0..B_n, all positive.
    """

    if c is None:
        c = hbar.edge
    if c is None:
        raise InputError("Edge moments need a cut-off.")
    if n is None:
        n = hbar.order
    check_order(n)
    if hbar.order < n:
        raise InsufficientOrder(n, hbar.order)

    H = hbar.scaled
    powers = [c ** j / factorial(j) for j in range(n + 1)]
    values = []
    for k in range(n + 1):
        value, scale = guarded_sum(powers[j] * (-1) ** (k - j) * H[k - j] for j in range(k + 1))
        if value <= 0 and not (k > 0 and is_cancelled(value, scale)):
            raise NonPositiveEdgeMoment(k, value)
        values.append(max(value, 0.0))
    return EdgeMoments(float(c), np.array(values))


def b_quadrature(view, n, tol=1e-11):
    """
    A function to evaluate the edge moments b_k / k! directly from their defining integral.

    Parameters
    ----------------------------------------------------------
    view: TruncationView
        The truncated distribution.
    n: int
        Highest order.
    """

    check_order(n)
    c = view.upper_edge
    values = []
    for k in range(n + 1):
        integral = view.base.expectation(lambda energy, k=k: (c - energy) ** k,
                                         view.lower_edge, view.upper_edge, tol=tol)
        values.append(integral / view.alpha / factorial(k))
    return EdgeMoments(float(c), np.array(values))


def ebar_from_B(B, n):
    """
    A function to compute the truncated autocorrelation moments from the edge moments:
    Ebar_n = sum_{k=0}^{n} (-1)^k B_k B_{n-k}.
    """

    check_order(n, even=True)
    if B.order < n:
        raise InsufficientOrder(n, B.order)

    S = B.scaled
    values = [1.0]
    for k in range(2, n + 1, 2):
        value, scale = guarded_sum((-1) ** j * S[j] * S[k - j] for j in range(k + 1))
        if is_cancelled(value, scale):
            value = 0.0
        elif value < 0:
            raise NonPositiveCorrelationMoment(k, value)
        values.append(value)
    return CorrelationMoments(np.array(values), degenerate=all(v == 0.0 for v in values[1:]) and n >= 2)


def schwarz_gaps(B):
    """
    b1 b3 - b2^2 and b2 b4 - b3^2, both non-negative by the Schwarz inequality.
    """

    b = [B.b(k) for k in range(5)]
    return b[1] * b[3] - b[2] ** 2, b[2] * b[4] - b[3] ** 2
