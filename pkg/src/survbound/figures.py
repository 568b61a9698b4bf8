# Author: Hauxu Yu

# A module to build the datasets of the reference figures
# Every figure is a list of series (one table each) plus a description for the manifest.

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .cutoff_bounds import build_cutoff_spec, cutoff_curve
from .distributions import BreitWigner, Discrete, GammaHalf, PowerLaw, Square, raw_moments
from .envelope import discrete_schedule, square_envelope, sweep_envelope
from .errors import ComputationError, UnknownFigure
from .moments import e_from_h
from .oracle import survival_frame
from .series_bounds import BoundCurve, cos2_curve, ri_curves, series_amplitude_curve, series_curve
from .utils_functions import time_grid

logger = logging.getLogger(__name__)

# Cut-offs of the fixed-cut-off family, in units of gamma
FAMILY_CUTOFFS = (0.5, 1.0, 2.0, 5.0, np.inf)


@dataclass
class Series:
    """
    One table of a figure dataset and its manifest entry.
    """

    name: str
    frame: pd.DataFrame
    meta: dict = field(default_factory=dict)


def _curve_series(curve, name=None):
    meta = {
        "order": curve.order,
        "direction": curve.direction,
        "target": curve.target,
        "cutoff_mode": curve.cutoff_mode,
    }
    if curve.cutoff is not None:
        meta["cutoff"] = "inf" if np.isinf(curve.cutoff) else curve.cutoff
    return Series(name or curve.source, curve.to_frame(), meta)


def _exact_series(dist, t, tol):
    return Series("exact", survival_frame(dist, t, tol=tol), {"target": "exact"})


def _envelope_series(dist, orders, c_grid_size, show_progress):
    series = []
    for n in orders:
        try:
            env = sweep_envelope(dist, n, c_grid_size=c_grid_size, show_progress=show_progress)
        except ComputationError as err:
            logger.warning("Envelope of order %d skipped: %s", n, err)
            continue
        meta = {"order": n, "direction": env.direction, "target": "absA", "cutoff_mode": "envelope",
                "multi_root_cutoffs": len(env.multi_root_flags)}
        series.append(Series("envelope_n{}".format(n), env.to_frame(), meta))
        if env.tail is not None:
            tail = _curve_series(env.tail, "envelope_tail_n{}".format(n))
            tail.meta["t_junction"] = env.t_junction
            series.append(tail)
    return series


def figure_gamma_half_series(params):
    """
    Series bounds of orders 2..8 on P(t) for rho ~ E^(-1/2) exp(-E/gamma).
    """

    dist = GammaHalf(1.0)
    t = time_grid(4.0, params.grid_size)
    e = e_from_h(raw_moments(dist, 8), 8)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    series.extend(_curve_series(series_curve(e, n, t)) for n in (2, 4, 6, 8))
    return dist, series


def figure_power_law_series(params):
    """
    The quadratic bound and the cos^2 bound on P(t) for rho ~ (1 + E/gamma)^(-7/2).
    """

    dist = PowerLaw(1.0, 3.5)
    t = time_grid(3.0, params.grid_size)
    e = e_from_h(raw_moments(dist, 2), 2)
    series = [_exact_series(dist, t, params.oracle_tolerance),
              _curve_series(series_curve(e, 2, t)),
              _curve_series(cos2_curve(e.delta_e(), t))]
    return dist, series


def figure_power_law_family(params):
    """
    Fixed-cut-off bounds on |A(t)|: quadratic lower and quartic upper, for several cut-offs.
    """

    dist = PowerLaw(1.0, 3.5)
    t = time_grid(3.0, params.grid_size)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    for c in FAMILY_CUTOFFS:
        for n in (2, 4):
            try:
                spec = build_cutoff_spec(dist, c, n)
            except ComputationError as err:
                # no quartic bound without a cut-off
                logger.info("Bound of order %d at c = %s skipped: %s", n, c, err)
                continue
            series.append(_curve_series(cutoff_curve(spec, t)))
    return dist, series


def figure_power_law_envelopes(params):
    """
    Envelopes of orders 2..8 for rho ~ (1 + E/gamma)^(-7/2).
    """

    dist = PowerLaw(1.0, 3.5)
    t = time_grid(4.0, params.grid_size)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    series.extend(_envelope_series(dist, (2, 4, 6, 8), params.c_grid_size, params.show_progress))
    return dist, series


def figure_breit_wigner_envelopes(params):
    """
    Envelopes of orders 2..8 for the Breit-Wigner distribution, |A(t)| = exp(-gamma t).
    """

    dist = BreitWigner(1.0, 0.0)
    t = time_grid(4.0, params.grid_size)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    series.extend(_envelope_series(dist, (2, 4, 6, 8), params.c_grid_size, params.show_progress))
    return dist, series


def figure_gamma_half_parts(params):
    """
    Bounds of orders 1..4 on R(t) and I(t) for rho ~ E^(-1/2) exp(-E/gamma).
    """

    dist = GammaHalf(1.0)
    t = time_grid(4.0, params.grid_size)
    h = raw_moments(dist, 4)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    series.extend(_curve_series(curve) for curve in ri_curves(h, 4, t))
    return dist, series


def figure_square(params):
    """
    Series bounds, envelopes and the limiting upper envelope 1 - 2 pi / t for the
    square distribution on [0, M].
    """

    dist = Square(1.0)
    t = time_grid(12.0, params.grid_size)
    e = e_from_h(raw_moments(dist, 8), 8)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    series.extend(_curve_series(series_amplitude_curve(e, n, t)) for n in (2, 4, 6, 8))
    series.extend(_envelope_series(dist, (2, 4, 6, 8), params.c_grid_size, params.show_progress))

    value, valid = square_envelope(np.inf, t, dist.m)
    limit = BoundCurve(0, "upper", "absA", t, value, valid, cutoff_mode="envelope", source="envelope_limit")
    entry = _curve_series(limit)
    entry.meta["order"] = "inf"
    series.append(entry)
    return dist, series


def figure_three_level(params):
    """
    Bounds for rho = 0.7 delta(E) + 0.2 delta(E - M/2) + 0.1 delta(E - M): the bounds
    without cut-off, the bounds for M/2 < c < M, the constant bound for c < M/2
    and the assembled schedules.
    """

    dist = Discrete(np.array([0.0, 0.5, 1.0]), np.array([0.7, 0.2, 0.1]))
    t = time_grid(8.0, params.grid_size)
    e = e_from_h(raw_moments(dist, 4), 4)
    series = [_exact_series(dist, t, params.oracle_tolerance)]
    for n in (2, 4):
        series.append(_curve_series(series_amplitude_curve(e, n, t)))
        series.append(_curve_series(cutoff_curve(build_cutoff_spec(dist, 0.75, n), t), "cutoff_n{}_upper_gap".format(n)))
        schedule = discrete_schedule(dist, n)
        entry = _curve_series(schedule.curve(t))
        entry.meta["windows"] = [[s.t_start, s.t_end] for s in schedule.segments]
        series.append(entry)
    series.append(_curve_series(cutoff_curve(build_cutoff_spec(dist, 0.25, 2), t), "cutoff_lower_gap"))
    return dist, series


FIGURES = {
    "fig1": figure_gamma_half_series,
    "fig2": figure_power_law_series,
    "fig3": figure_power_law_family,
    "fig4": figure_power_law_envelopes,
    "fig5": figure_breit_wigner_envelopes,
    "fig6": figure_gamma_half_parts,
    "fig7": figure_square,
    "fig8": figure_three_level,
}


def build_figure(name, params):
    """
    A function to build the dataset of a figure.

    Parameters
    ----------------------------------------------------------
    name: str
        One of fig1..fig8.
    params: Params object
        Grid sizes, tolerances and progress display.

    Returns
    ----------------------------------------------------------
    description: dict
        Manifest of the figure.
    series: list of Series
    """

    if name not in FIGURES:
        raise UnknownFigure(name, sorted(FIGURES))
    builder = FIGURES[name]
    dist, series = builder(params)
    description = {
        "figure": name,
        "title": builder.__doc__.strip().splitlines()[0],
        "distribution": dist.describe(),
        "time_unit": "hbar / {}".format("M" if dist.kind in ("square", "discrete") else "gamma"),
        "series": [],
    }
    logger.info("Built %s with %d series.", name, len(series))
    return description, series
