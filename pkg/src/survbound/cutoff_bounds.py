# Author: Hauxu Yu

# A module to evaluate the amplitude bounds with a fixed energy cut-off c:
# y(t, c) = alpha sqrt(p_n(t, c)) -/+ (1 - alpha),
# where p_n is the series bound built from the truncated correlation moments.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import TruncationView, truncated_moments
from .errors import InputError
from .moments import CorrelationMoments, MomentVector, b_from_h, e_from_h
from .series_bounds import BoundCurve, bound_direction, p_bound


@dataclass(frozen=True, eq=False)
class CutoffBoundSpec:
    """
    A ready-to-evaluate fixed-cut-off bound.

    Attributes
    ----------------------------------------------------------
    order: int, even order n
    direction: str, "upper" for n = 0 (mod 4), "lower" for n = 2 (mod 4)
    cutoff: float, the cut-off c (the half-width for two-sided windows)
    alpha: float, weight below the cut-off
    ebar: CorrelationMoments, truncated correlation moments
    moments: MomentVector, truncated energy moments
    """

    order: int
    direction: str
    cutoff: float
    alpha: float
    ebar: CorrelationMoments
    moments: MomentVector

    def __post_init__(self):
        if self.direction != bound_direction(self.order):
            raise InputError("Direction {} does not match order {}".format(self.direction, self.order))
        if not 0 < self.alpha <= 1:
            raise InputError("alpha must lie in (0, 1], got {}".format(self.alpha))

    @property
    def degenerate(self):
        return self.ebar.degenerate

    def edge_moments(self):
        """
        The edge moments B_k about the upper edge of the window.
        """
        return b_from_h(self.moments, n=self.order)


def build_cutoff_spec(dist, c, n):
    """
    A function to build the bound of order n with the cut-off c from the
    truncated energy moments, without any autocorrelation quadrature.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    c: float
        The cut-off, L < c <= M.
    n: int
        Even order.
    """

    view = TruncationView(dist, c)
    hbar = truncated_moments(view, n)
    ebar = e_from_h(hbar, n)
    return CutoffBoundSpec(n, bound_direction(n), float(c), view.alpha, ebar, hbar)


def amplitude_bound(spec, t):
    """
    A function to evaluate the bound on |A(t)| with a fixed cut-off.

    Parameters
    ----------------------------------------------------------
    spec: CutoffBoundSpec
        The bound.
    t: float or numpy array
        Times, t >= 0.

    Returns
    ----------------------------------------------------------
    value: float or numpy array
        The unclamped bound; where p_n(t, c) < 0 the trivial value
        -(1 - alpha) (lower) or 1 (upper).
    valid: bool or numpy array
        False where p_n(t, c) < 0.
    """

    alpha = spec.alpha
    p = np.asarray(p_bound(spec.ebar, spec.order, t))
    valid = p >= 0
    root = np.sqrt(np.where(valid, p, 0.0))
    if spec.direction == "lower":
        value = np.where(valid, alpha * root - (1.0 - alpha), -(1.0 - alpha))
    else:
        value = np.where(valid, alpha * root + (1.0 - alpha), 1.0)
    if value.ndim == 0:
        return float(value), bool(valid)
    return value, valid


def cutoff_curve(spec, t):
    """
    The fixed-cut-off bound sampled on the times t.
    """

    value, valid = amplitude_bound(spec, np.asarray(t, dtype=np.float64))
    return BoundCurve(spec.order, spec.direction, "absA", t, value, valid, cutoff_mode="fixed",
                      cutoff=spec.cutoff, source="cutoff_n{}_c{:.6g}".format(spec.order, spec.cutoff))
