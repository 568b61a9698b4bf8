# Author: Hauxu Yu

# A module to optimize the fixed-cut-off bounds over the cut-off c
# 1. the envelope condition and its roots t(c): closed forms for n = 2, 4, numeric otherwise
# 2. envelope sweeps over a grid of cut-offs, with the no-cut-off tail for finite spectra
# 3. the self-similar envelopes of the square distribution
# 4. piecewise bounds of discrete spectra
# 5. composite bounds: the best of all available bounds at each time

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import factorial

import numpy as np
import pandas as pd
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq
from tqdm import tqdm

from .cutoff_bounds import amplitude_bound, build_cutoff_spec
from .distributions import Discrete, alpha_at, raw_moments
from .errors import (ComputationError, DegenerateEdge, EmptyEnvelope, InvalidDistribution,
                     MomentDivergent, NoPositiveRoot, RootMismatch, UnsupportedDistribution)
from .moments import EdgeMoments, b_from_h, check_order, e_from_h
from .series_bounds import BoundCurve, bound_direction, cos2_curve, p_bound, series_amplitude_curve
from .utils_functions import guarded_sum, log_offsets, time_grid

logger = logging.getLogger(__name__)

# A sweep stops at the cut-off where 1 - alpha falls below this weight
ALPHA_TAIL = 1e-6

# Smallest cut-off offset of a sweep, relative to the distribution scale
C_MIN_RELATIVE = 1e-3

# Relative agreement required between the closed-form and numeric quartic roots
QUARTIC_RTOL = 1e-8


def edge_q(B, n, t):
    """
    q_n(t) = sum_{even k <= n} (-1)^(k/2) B_k t^k, the square root side of the envelope equation.
    """

    t = np.asarray(t, dtype=np.float64)
    total = np.zeros_like(t)
    for k in range(n, -1, -2):
        total = total * t * t + (-1) ** (k // 2) * B.B(k)
    return total if total.ndim else float(total)


def envelope_equation_residual(B, ebar, n, t):
    """
    A function to evaluate the envelope equation
    sum (-1)^(k/2) Ebar_k t^k - (sum (-1)^(k/2) B_k t^k)^2, both sums over even k <= n.
    Its positive roots in t are the envelope times t(c).

    Parameters
    ----------------------------------------------------------
    B: EdgeMoments
        Edge moments through order n.
    ebar: CorrelationMoments
        Truncated correlation moments through order n.
    n: int
        Even order.
    t: float or numpy array
        Times.
    """

    q = edge_q(B, n, t)
    return p_bound(ebar, n, t) - q * q


def edge_polynomial(B, n):
    """
    A function to write the envelope equation as a polynomial in eta = t^2,
    using the edge moments only, so that no cancellation between the two sides
    is left. The trivial root eta = 0 is divided out.

    Parameters
    ----------------------------------------------------------
    B: EdgeMoments
        Edge moments through order n.
    n: int
        Even order.

    Returns
    ----------------------------------------------------------
    numpy array
        Coefficients of eta^0..eta^(n-1), lowest first.
    """

    check_order(n, even=True)
    S = [B.B(k) for k in range(n + 1)]
    half = n // 2
    coef = []
    for m in range(1, n + 1):
        if m <= half:
            total, _ = guarded_sum(S[k] * S[2 * m - k] for k in range(1, 2 * m, 2))
            coef.append((-1) ** (m + 1) * total)
        else:
            total, _ = guarded_sum(S[2 * i] * S[2 * (m - i)] for i in range(m - half, half + 1))
            coef.append(-(-1) ** m * total)
    return np.array(coef)


def _dimensionless(B):
    """
    Edge moments in units where B_1 = 1, and that unit.
    """

    s = B.B(1)
    if not s > 0:
        raise DegenerateEdge("The first edge moment vanishes; the window holds a single energy at the cut-off.")
    scaled = np.array([B.B(k) / s ** k for k in range(B.order + 1)])
    return EdgeMoments(B.cutoff, scaled), s


def t_of_c_quadratic(B):
    """
    A function to compute the envelope time of the quadratic bound, t = 2 b_1 / b_2.
    """

    b1, b2 = B.b(1), B.b(2)
    if b2 == 0:
        raise DegenerateEdge("b_2 vanishes at c = {}".format(B.cutoff))
    return 2.0 * b1 / b2


def t_of_c_quartic(B, check=True):
    """
    A function to compute the envelope time of the quartic bound from the closed
    solution of the cubic equation in t^2.

    Parameters
    ----------------------------------------------------------
    B: EdgeMoments
        Edge moments through order 4.
    check: bool
        Whether to compare with the numeric root of the same cubic.

    Returns
    ----------------------------------------------------------
    float
        t(c) > 0.
    """

    Bs, s = _dimensionless(B)
    b1, b2, b3, b4 = (Bs.b(k) for k in range(1, 5))

    d1 = b1 * b3 - b2 * b2
    if d1 <= 1e-12 * b1 * b3:
        raise DegenerateEdge("b_1 b_3 - b_2^2 vanishes at c = {}; the window is a point mass".format(B.cutoff))
    d3 = (16.0 * b2 ** 3 - 24.0 * b1 * b2 * b3 + 9.0 * b1 * b1 * b4) / 16.0
    disc = np.sqrt(d1 ** 3 + d3 * d3)
    # same value as disc - d3, without the cancellation for d3 > 0
    inner = disc - d3 if d3 <= 0 else d1 ** 3 / (disc + d3)
    d2 = np.cbrt(inner)
    t2 = 8.0 * (b2 - d2 + d1 / d2) / b4
    if not t2 > 0:
        raise NoPositiveRoot("The quartic envelope time is not real at c = {}".format(B.cutoff))
    t = float(np.sqrt(t2) / s)

    if check:
        roots = t_of_c_numeric(B, None, 4)
        nearest = roots[np.argmin(np.abs(roots - t))]
        if abs(nearest - t) > QUARTIC_RTOL * t:
            raise RootMismatch(t, nearest)
    return t


def t_of_c_numeric(B, ebar, n):
    """
    A function to find all positive roots t of the envelope equation of order n
    from the eigenvalues of the companion matrix of its polynomial in t^2,
    each polished by Newton steps.

    Parameters
    ----------------------------------------------------------
    B: EdgeMoments
        Edge moments through order n.
    ebar: CorrelationMoments
        Truncated correlation moments; if given, the residual at each root is logged.
    n: int
        Even order.

    Returns
    ----------------------------------------------------------
    numpy array
        Sorted positive roots.
    """

    Bs, s = _dimensionless(B)
    coef = P.polytrim(edge_polynomial(Bs, n))
    coef = coef / np.max(np.abs(coef))
    dcoef = P.polyder(coef)

    roots = P.polyroots(coef) if len(coef) > 1 else np.array([])
    zeta = []
    for r in roots:
        if abs(r.imag) > 1e-7 * max(1.0, abs(r)) or r.real <= 0:
            continue
        z = r.real
        for _ in range(4):
            d = P.polyval(z, dcoef)
            if d == 0:
                break
            z = z - P.polyval(z, coef) / d
        if z > 0:
            zeta.append(z)
    if len(zeta) == 0:
        raise NoPositiveRoot("No positive envelope time at c = {} for order {}".format(B.cutoff, n))

    t = np.sort(np.sqrt(np.array(zeta)) / s)
    # a double root can come back twice from the eigenvalues
    keep = np.concatenate(([True], np.diff(t) > 1e-10 * t[1:]))
    t = t[keep]
    if ebar is not None and logger.isEnabledFor(logging.DEBUG):
        logger.debug("Order %d, c = %.6g: roots %s, residuals %s", n, B.cutoff, t,
                     envelope_equation_residual(B, ebar, n, t))
    return t


def select_root(B, n, roots):
    """
    A function to choose the envelope time among the roots. A root is a stationary
    point of the upper family where q_n(t) > 0 and of the lower family where
    q_n(t) < 0; the smallest root on the branch of the order's direction is kept.

    Returns
    ----------------------------------------------------------
    t: float
        The primary envelope time.
    n_branch: int
        Number of roots on the branch.
    """

    q = np.asarray(edge_q(B, n, roots))
    on_branch = roots[q > 0] if bound_direction(n) == "upper" else roots[q < 0]
    if len(on_branch) == 0:
        raise NoPositiveRoot("No envelope time on the {} branch at c = {}".format(bound_direction(n), B.cutoff))
    return float(on_branch[0]), len(on_branch)


def envelope_time(B, n, ebar=None):
    """
    A function to compute the envelope time t(c) of order n: the closed forms for
    n = 2 and n = 4, the numeric roots otherwise.

    Returns
    ----------------------------------------------------------
    t: float
        The primary envelope time.
    n_roots: int
        Number of positive roots of the envelope equation.
    multi: bool
        Whether several roots lie on the branch of the order's direction.
    """

    if n == 2:
        return t_of_c_quadratic(B), 1, False

    roots = t_of_c_numeric(B, ebar, n)
    t, n_branch = select_root(B, n, roots)
    if n == 4:
        try:
            t = t_of_c_quartic(B, check=False)
        except (DegenerateEdge, NoPositiveRoot):
            pass
        else:
            nearest = roots[np.argmin(np.abs(roots - t))]
            if abs(nearest - t) > QUARTIC_RTOL * t:
                logger.debug("Quartic closed form %.12g differs from the numeric root %.12g at c = %.6g",
                             t, nearest, B.cutoff)
                t = float(nearest)
    return t, len(roots), n_branch > 1


def default_cutoff_grid(dist, size=256):
    """
    A function to generate cut-offs spaced logarithmically in c - L, from
    1e-3 of the distribution scale up to M, or, for unbounded spectra, up to
    the cut-off where alpha reaches 1 - 1e-6. Two-sided windows are indexed by
    their half-width.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    size: int
        Number of cut-offs.
    """

    lower = 0.0 if dist.two_sided else dist.support_lower
    d_min = C_MIN_RELATIVE * dist.scale
    finite = not dist.two_sided and np.isfinite(dist.support_upper)

    if finite:
        d_max = dist.support_upper - lower
    else:
        def gap(d):
            return alpha_at(dist, lower + d) - (1.0 - ALPHA_TAIL)

        hi = dist.scale
        while gap(hi) < 0:
            hi *= 2.0
        d_max = brentq(gap, d_min, hi, xtol=1e-12 * hi)

    grid = lower + log_offsets(d_min, d_max, size)
    if finite:
        grid[-1] = dist.support_upper
    return grid


@dataclass(eq=False)
class EnvelopeResult:
    """
    The envelope of the fixed-cut-off bounds of one order.

    Attributes
    ----------------------------------------------------------
    order: int, even order n
    direction: str, "upper" or "lower"
    c: numpy array, cut-offs of the envelope points
    t: numpy array, envelope times t(c), increasing
    raw_value: numpy array, y(t(c), c)
    n_roots: numpy array, number of positive roots at each cut-off
    tail: BoundCurve, the no-cut-off bound for t < t(M) when M is finite
    t_junction: float, t(M) when M is finite
    multi_root_flags: list, cut-offs with several roots on the branch
    """

    order: int
    direction: str
    c: np.ndarray
    t: np.ndarray
    raw_value: np.ndarray
    n_roots: np.ndarray
    tail: BoundCurve | None = None
    t_junction: float | None = None
    multi_root_flags: list = field(default_factory=list)

    @property
    def value(self):
        return np.clip(self.raw_value, 0.0, 1.0)

    def __len__(self):
        return len(self.t)

    def to_frame(self):
        return pd.DataFrame({
            "c": self.c,
            "t": self.t,
            "value": self.value,
            "order": self.order,
            "direction": self.direction,
            "n_roots": self.n_roots,
        })


def sweep_envelope(dist, n, c_grid=None, tail_size=64, c_grid_size=256, show_progress=False):
    """
    A function to trace the envelope of the fixed-cut-off bounds of order n.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        A continuous distribution.
    n: int
        Even order.
    c_grid: numpy array
        Cut-offs, L < c <= M. Defaults to default_cutoff_grid(dist).
    tail_size: int
        Number of samples of the no-cut-off tail on [0, t(M)].
    c_grid_size: int
        Size of the default cut-off grid.
    show_progress: bool
        Whether to show a progress bar.

    Returns
    ----------------------------------------------------------
    EnvelopeResult
        Points sorted by t(c).
    """

    if isinstance(dist, Discrete):
        raise UnsupportedDistribution("Discrete spectra have no envelope; use discrete_schedule.")
    check_order(n, even=True)
    if c_grid is None:
        c_grid = default_cutoff_grid(dist, c_grid_size)
    c_grid = np.asarray(c_grid, dtype=np.float64)

    rows = []
    flags = []
    skipped = 0
    for c in tqdm(c_grid, desc="Envelope n={}".format(n), disable=not show_progress):
        try:
            spec = build_cutoff_spec(dist, c, n)
            if spec.degenerate:
                skipped += 1
                continue
            t, n_roots, multi = envelope_time(spec.edge_moments(), n, spec.ebar)
        except (ComputationError, InvalidDistribution) as err:
            logger.debug("No envelope point at c = %.6g: %s", c, err)
            skipped += 1
            continue
        value, _ = amplitude_bound(spec, t)
        rows.append((c, t, value, n_roots))
        if multi:
            flags.append(float(c))

    if len(rows) == 0:
        raise EmptyEnvelope("No cut-off yields an envelope time for order {}".format(n))
    if skipped:
        logger.info("Envelope of order %d: %d of %d cut-offs contribute no point.", n, skipped, len(c_grid))
    if flags:
        logger.warning("Envelope of order %d: %d cut-offs have several roots on the %s branch.",
                       n, len(flags), bound_direction(n))

    rows.sort(key=lambda r: r[1])
    c, t, value, n_roots = (np.array(col) for col in zip(*rows))
    result = EnvelopeResult(n, bound_direction(n), c, t, value, n_roots.astype(int), multi_root_flags=flags)

    if not dist.two_sided and np.isfinite(dist.support_upper):
        spec = build_cutoff_spec(dist, dist.support_upper, n)
        if not spec.degenerate:
            t_m, _, _ = envelope_time(spec.edge_moments(), n, spec.ebar)
            times = np.linspace(0.0, t_m, tail_size)
            value, valid = amplitude_bound(spec, times)
            result.tail = BoundCurve(n, spec.direction, "absA", times, value, valid,
                                     cutoff_mode="fixed", cutoff=spec.cutoff, source="tail_n{}".format(n))
            result.t_junction = t_m
    return result


def square_envelope_constants(n):
    """
    A function to compute the constants of the square-distribution envelope:
    tau_n is the positive root of
    sum (-1)^(k/2) 2 tau^k / (k+2)! = (sum (-1)^(k/2) tau^k / (k+1)!)^2,
    and sigma_n^2 is either side at tau_n.

    Parameters
    ----------------------------------------------------------
    n: int or numpy.inf
        Even order; numpy.inf gives the limit (2 pi, 0).

    Returns
    ----------------------------------------------------------
    tau, sigma: float
    """

    if np.isinf(n):
        # both sums close in sin and cos; sigma vanishes at tau = 2 pi
        return 2.0 * np.pi, 0.0
    n = int(n)
    check_order(n, even=True)
    if n < 2:
        raise NoPositiveRoot("The square envelope needs n >= 2.")

    B = EdgeMoments(1.0, np.array([1.0 / factorial(k + 1) for k in range(n + 1)]))
    tau, _ = select_root(B, n, t_of_c_numeric(B, None, n))
    sigma = abs(edge_q(B, n, tau))
    return tau, sigma


def square_envelope(n, t, m=1.0):
    """
    A function to evaluate the envelope of the square distribution on [0, M]:
    1 - (1 - sigma) t_n / t (upper) or (1 + sigma) t_n / t - 1 (lower),
    valid for t >= t_n = tau_n / M.

    Returns
    ----------------------------------------------------------
    value: numpy array
        The bound; 1 (upper) or 0 (lower) before t_n.
    valid: numpy array of bool
    """

    tau, sigma = square_envelope_constants(n)
    direction = "upper" if np.isinf(n) else bound_direction(int(n))
    t = np.asarray(t, dtype=np.float64)
    t_n = tau / m
    valid = t >= t_n
    safe = np.where(valid, t, t_n)
    if direction == "upper":
        value = np.where(valid, 1.0 - (1.0 - sigma) * t_n / safe, 1.0)
    else:
        value = np.where(valid, (1.0 + sigma) * t_n / safe - 1.0, 0.0)
    return value, valid


@dataclass(frozen=True, eq=False)
class ScheduleSegment:
    """
    One piece of a discrete-spectrum schedule: the bound with the cut-off anywhere
    in [c_lower, c_upper), used on the time window [t_start, t_end).
    """

    c_lower: float
    c_upper: float
    spec: object
    t_start: float
    t_end: float
    label: str


class DiscreteSchedule:
    """
    A piecewise bound for a discrete spectrum, one segment per gap between atoms
    plus the no-cut-off bound at the shortest times.
    """

    def __init__(self, order, direction, segments):
        self.order = order
        self.direction = direction
        self.segments = segments

    def evaluate(self, t):
        """
        The scheduled bound on |A(t)|.

        Returns
        ----------------------------------------------------------
        value: numpy array
            Bound of the segment whose window holds t; where no window or
            several windows hold t, the best segment bound.
        index: numpy array
            Index of the segment used.
        """

        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        values = np.array([amplitude_bound(seg.spec, t)[0] for seg in self.segments])
        values = np.clip(values, 0.0, 1.0)
        inside = np.array([(t >= seg.t_start) & (t < seg.t_end) for seg in self.segments])

        if self.direction == "lower":
            best_all = np.argmax(values, axis=0)
            best_in = np.argmax(np.where(inside, values, -np.inf), axis=0)
        else:
            best_all = np.argmin(values, axis=0)
            best_in = np.argmin(np.where(inside, values, np.inf), axis=0)
        index = np.where(inside.any(axis=0), best_in, best_all)
        return values[index, np.arange(len(t))], index

    def curve(self, t):
        value, index = self.evaluate(t)
        valid = np.ones(len(value), dtype=bool)
        curve = BoundCurve(self.order, self.direction, "absA", t, value, valid, cutoff_mode="envelope",
                           source="schedule_n{}".format(self.order))
        curve.sources = np.array([self.segments[i].label for i in index], dtype=object)
        return curve

    def to_frame(self):
        return pd.DataFrame({
            "c_lower": [s.c_lower for s in self.segments],
            "c_upper": [s.c_upper for s in self.segments],
            "alpha": [s.spec.alpha for s in self.segments],
            "t_start": [s.t_start for s in self.segments],
            "t_end": [s.t_end for s in self.segments],
            "order": self.order,
            "direction": self.direction,
            "label": [s.label for s in self.segments],
        })


def _window_time(spec, c, n):
    """
    t(c) of a segment's atoms with the edge placed at c; infinite when c sits on
    the only atom of the window.
    """

    try:
        B = b_from_h(spec.moments, c=c, n=n)
        t, _, _ = envelope_time(B, n)
    except (DegenerateEdge, NoPositiveRoot):
        return np.inf
    return t


def discrete_schedule(dist, n):
    """
    A function to assemble the piecewise bound of a discrete spectrum. For c between
    atoms E_i and E_{i+1} the bound does not depend on c; it is used on
    [t(E_{i+1}), t(E_i)), with t(c) from the envelope equation for the atoms
    below c. Below t(M) the bound without cut-off is used.

    Parameters
    ----------------------------------------------------------
    dist: Discrete
        At least two atoms.
    n: int
        Even order.

    Returns
    ----------------------------------------------------------
    DiscreteSchedule
    """

    if not isinstance(dist, Discrete):
        raise UnsupportedDistribution("A schedule needs a discrete spectrum, got {}".format(dist.kind))
    if len(dist.energies) < 2:
        raise InvalidDistribution("A schedule needs at least two atoms.")
    check_order(n, even=True)

    E = dist.energies
    segments = []
    for i in range(len(E) - 1):
        spec = build_cutoff_spec(dist, 0.5 * (E[i] + E[i + 1]), n)
        t_start = _window_time(spec, E[i + 1], n)
        t_end = _window_time(spec, E[i], n)
        segments.append(ScheduleSegment(float(E[i]), float(E[i + 1]), spec, t_start, t_end,
                                        "gap{}_n{}".format(i, n)))

    full = build_cutoff_spec(dist, E[-1], n)
    segments.append(ScheduleSegment(float(E[-1]), float(E[-1]), full, 0.0, segments[-1].t_start,
                                    "nocut_n{}".format(n)))
    return DiscreteSchedule(n, bound_direction(n), segments)


def _merge(best, source, value, label, direction):
    value = np.clip(value, 0.0, 1.0)
    better = value > best if direction == "lower" else value < best
    best[better] = value[better]
    source[better] = label


def composite_bound(dist, orders, horizon, grid_size=512, c_grid_size=256, t=None, show_progress=False):
    """
    A function to combine every available bound on |A(t)| into the best lower and
    upper bound at each time: the series bounds without cut-off (through sqrt P),
    the cos^2 bound, the fixed-cut-off bounds of the whole cut-off grid (or the
    schedule of a discrete spectrum) and the trivial bounds 0 and 1.

    Parameters
    ----------------------------------------------------------
    dist: EnergyDistribution
        The distribution.
    orders: list of int
        Even orders.
    horizon: float
        The time horizon T.
    grid_size: int
        Number of time samples.
    c_grid_size: int
        Number of cut-offs.
    t: numpy array
        Times; overrides horizon and grid_size.

    Returns
    ----------------------------------------------------------
    lower, upper: BoundCurve
        With the label of the winning bound of each sample in `sources`.
    """

    for n in orders:
        check_order(n, even=True)
    t = time_grid(horizon, grid_size) if t is None else np.asarray(t, dtype=np.float64)

    lower = np.zeros_like(t)
    upper = np.ones_like(t)
    lower_src = np.full(len(t), "trivial", dtype=object)
    upper_src = np.full(len(t), "trivial", dtype=object)
    n_bounds = 0

    # bounds without cut-off
    try:
        h = raw_moments(dist, max(orders))
    except MomentDivergent as err:
        h = err.partial
    e = None
    if h is not None and h.order >= 2:
        try:
            e = e_from_h(h, h.order - h.order % 2)
        except ComputationError as err:
            logger.warning("Bounds without cut-off skipped: %s", err)
    if e is not None:
        for n in orders:
            if n > e.order:
                continue
            curve = series_amplitude_curve(e, n, t)
            if curve.direction == "lower":
                _merge(lower, lower_src, curve.value, curve.source, "lower")
            else:
                _merge(upper, upper_src, curve.value, curve.source, "upper")
            n_bounds += 1
        _merge(lower, lower_src, cos2_curve(e.delta_e(), t, target="absA").value, "cos2", "lower")
        n_bounds += 1

    # bounds with a cut-off
    if isinstance(dist, Discrete):
        if len(dist.energies) >= 2:
            for n in orders:
                value, _ = discrete_schedule(dist, n).evaluate(t)
                if bound_direction(n) == "lower":
                    _merge(lower, lower_src, value, "schedule_n{}".format(n), "lower")
                else:
                    _merge(upper, upper_src, value, "schedule_n{}".format(n), "upper")
                n_bounds += 1
    else:
        c_grid = default_cutoff_grid(dist, c_grid_size)
        for n in orders:
            direction = bound_direction(n)
            found = 0
            for c in tqdm(c_grid, desc="Cut-off bounds n={}".format(n), disable=not show_progress):
                try:
                    spec = build_cutoff_spec(dist, c, n)
                except (ComputationError, InvalidDistribution) as err:
                    logger.debug("No bound of order %d at c = %.6g: %s", n, c, err)
                    continue
                value, _ = amplitude_bound(spec, t)
                label = "cutoff_n{}_c{:.6g}".format(n, c)
                if direction == "lower":
                    _merge(lower, lower_src, value, label, "lower")
                else:
                    _merge(upper, upper_src, value, label, "upper")
                found += 1
            if found == 0:
                logger.warning("No cut-off bound of order %d is available.", n)
            n_bounds += found

    if n_bounds == 0:
        raise EmptyEnvelope("No bound is available for the {} distribution".format(dist.kind))
    crossing = np.sum(lower > upper + 1e-9)
    if crossing:
        logger.warning("Composite lower bound exceeds the upper bound at %d times.", crossing)
    logger.info("Composite bound assembled from %d bounds on %d times.", n_bounds, len(t))

    valid = np.ones(len(t), dtype=bool)
    lo = BoundCurve(0, "lower", "absA", t, lower, valid, cutoff_mode="envelope", source="composite")
    up = BoundCurve(0, "upper", "absA", t, upper, valid, cutoff_mode="envelope", source="composite")
    lo.sources = lower_src
    up.sources = upper_src
    return lo, up


def composite_frame(lower, upper):
    """
    The composite bound as a table with columns t, lower, upper, lower_source, upper_source.
    """

    return pd.DataFrame({
        "t": lower.t,
        "lower": lower.value,
        "upper": upper.value,
        "lower_source": lower.sources,
        "upper_source": upper.sources,
    })
