# Author: Hauxu Yu

# A module to evaluate the bounds that need no energy cut-off
# 1. alternating-series bounds on P(t) from the correlation moments
# 2. the cos^2 lower bound from the energy uncertainty
# 3. bounds on the real and imaginary parts of A(t) from the energy moments

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from math import factorial

import numpy as np
import pandas as pd

from .errors import InputError, InsufficientOrder

# Physical range of each bound target
TARGET_RANGE = {"P": (0.0, 1.0), "absA": (0.0, 1.0), "Re": (-1.0, 1.0), "Im": (-1.0, 1.0)}

RIBound = namedtuple("RIBound", ["target", "direction", "value", "valid"])


@dataclass(eq=False)
class BoundCurve:
    """
    A bound sampled on a time grid.

    Attributes
    ----------------------------------------------------------
    order: int, the order n of the bound (0 for the cos^2 bound)
    direction: str, "upper" or "lower"
    target: str, "P", "absA", "Re" or "Im"
    t: numpy array, strictly increasing times
    raw_value: numpy array, the unclamped bound
    valid: numpy array of bool, False where the bound is uninformative
    cutoff_mode: str, "none", "fixed" or "envelope"
    cutoff: float, the cut-off of a fixed-cut-off bound
    source: str, a short label naming the bound
    sources: numpy array, per-sample labels of a composite bound
    """

    order: int
    direction: str
    target: str
    t: np.ndarray
    raw_value: np.ndarray
    valid: np.ndarray
    cutoff_mode: str = "none"
    cutoff: float | None = None
    source: str = ""
    sources: np.ndarray | None = None

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=np.float64)
        self.raw_value = np.broadcast_to(np.asarray(self.raw_value, dtype=np.float64), self.t.shape).copy()
        self.valid = np.broadcast_to(np.asarray(self.valid, dtype=bool), self.t.shape).copy()
        if len(self.t) > 1 and np.any(np.diff(self.t) <= 0):
            raise InputError("Time samples must be strictly increasing.")
        if not self.source:
            self.source = "{}_n{}".format(self.cutoff_mode, self.order)

    @property
    def value(self):
        """
        The bound clamped to the physical range of its target.
        """
        lo, hi = TARGET_RANGE[self.target]
        return np.clip(self.raw_value, lo, hi)

    def to_frame(self):
        df = pd.DataFrame({
            "t": self.t,
            "value": self.value,
            "raw_value": self.raw_value,
            "valid": self.valid,
            "order": self.order,
            "direction": self.direction,
            "target": self.target,
        })
        if self.cutoff_mode == "fixed":
            df["cutoff"] = self.cutoff
        if self.sources is not None:
            df["source"] = self.sources
        return df


def bound_direction(n):
    """
    Direction of the even-order bounds: lower for n = 2 (mod 4), upper for n = 0 (mod 4).
    """

    if n % 2 != 0:
        raise InputError("Order must be even, got {}".format(n))
    return "lower" if n % 4 == 2 else "upper"


def cos_partial_sum(x, n):
    """
    A function to compute the Taylor partial sum of cos(x) through order n.
    It bounds cos(x) from above for n = 0 (mod 4) and from below for n = 2 (mod 4).

    Parameters
    ----------------------------------------------------------
    x: float or numpy array
        The argument.
    n: int
        Even order.
    """

    if n % 2 != 0 or n < 0:
        raise InputError("Order must be even and non-negative, got {}".format(n))
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    for k in range(n, -1, -2):
        total = total + (-1) ** (k // 2) * x ** k / factorial(k)
    return total if total.ndim else float(total)


def p_bound(e, n, t):
    """
    A function to evaluate p_n(t) = sum_{even k <= n} (-1)^(k/2) E_k t^k.
    This is a lower bound to P(t) for n = 2 (mod 4) and an upper bound for n = 0 (mod 4).

    Parameters
    ----------------------------------------------------------
    e: CorrelationMoments
        Correlation moments through order n.
    n: int
        Even order.
    t: float or numpy array
        Times.

    Returns
    ----------------------------------------------------------
    float or numpy array
        The unclamped bound.
    """

    if n % 2 != 0:
        raise InputError("Order must be even, got {}".format(n))
    if n > e.order:
        raise InsufficientOrder(n, e.order)
    t = np.asarray(t, dtype=np.float64)
    tt = t * t
    # Horner in t^2
    total = np.zeros_like(t)
    for k in range(n, -1, -2):
        total = total * tt + (-1) ** (k // 2) * e.E(k)
    return total if total.ndim else float(total)


def cos2_bound(delta_e, t):
    """
    A function to evaluate the lower bound P(t) >= cos^2(Delta E t), valid for
    Delta E t <= pi/2; zero beyond.
    """

    x = delta_e * np.asarray(t, dtype=np.float64)
    value = np.where(x <= np.pi / 2, np.cos(x) ** 2, 0.0)
    return value if value.ndim else float(value)


def ri_bounds(h, n, t, nonnegative=True):
    """
    A function to bound the real part R(t) (even n) or the imaginary part I(t)
    (odd n) of A(t) = R(t) - i I(t) by the Taylor partial sums of cos and sin.

    Parameters
    ----------------------------------------------------------
    h: MomentVector
        Energy moments through order n.
    n: int
        Order, 0 <= n <= h.order.
    t: float or numpy array
        Times, t >= 0.
    nonnegative: bool
        Whether the support lies in E >= 0; the I(t) chain needs it.

    Returns
    ----------------------------------------------------------
    RIBound
        (target, direction, value, valid).
    """

    if n < 0:
        raise InputError("Order must be non-negative, got {}".format(n))
    if n > h.order:
        raise InsufficientOrder(n, h.order)

    t = np.asarray(t, dtype=np.float64)
    total = np.zeros_like(t)
    if n % 2 == 0:
        for k in range(0, n + 1, 2):
            total = total + (-1) ** (k // 2) * h.scaled[k] * t ** k
        target = "Re"
        direction = "lower" if n % 4 == 2 else "upper"
        valid = True
    else:
        for k in range(1, n + 1, 2):
            total = total + (-1) ** ((k - 1) // 2) * h.scaled[k] * t ** k
        target = "Im"
        direction = "upper" if n % 4 == 1 else "lower"
        valid = nonnegative
    value = total if total.ndim else float(total)
    return RIBound(target, direction, value, valid)


def series_curve(e, n, t):
    """
    The no-cut-off bound of order n on P(t).
    """

    raw = p_bound(e, n, t)
    direction = bound_direction(n)
    valid = raw >= 0 if direction == "lower" else raw <= 1
    return BoundCurve(n, direction, "P", t, raw, valid, source="series_n{}".format(n))


def series_amplitude_curve(e, n, t):
    """
    The no-cut-off bound of order n on |A(t)| = sqrt(P(t)).
    """

    raw = np.asarray(p_bound(e, n, t))
    direction = bound_direction(n)
    valid = raw >= 0
    value = np.sqrt(np.maximum(raw, 0.0))
    if direction == "upper":
        value = np.where(valid, value, 1.0)
    return BoundCurve(n, direction, "absA", t, value, valid, source="series_n{}".format(n))


def cos2_curve(delta_e, t, target="P"):
    """
    The cos^2 lower bound on P(t), or its square root |cos(Delta E t)| on |A(t)|.
    """

    value = np.asarray(cos2_bound(delta_e, t))
    if target == "absA":
        value = np.sqrt(value)
    valid = delta_e * np.asarray(t) <= np.pi / 2
    return BoundCurve(0, "lower", target, t, value, valid, source="cos2")


def ri_curves(h, n, t, nonnegative=True):
    """
    The bound curves of orders 1..n on R(t) and I(t).
    """

    curves = []
    for k in range(1, n + 1):
        target, direction, value, valid = ri_bounds(h, k, t, nonnegative)
        curves.append(BoundCurve(k, direction, target, t, value, valid, source="{}_n{}".format(target, k)))
    return curves
