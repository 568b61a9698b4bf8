# Author: Hauxu Yu

# A module to summarize the main workflows

# Import modules
import logging
import os

import numpy as np
import pandas as pd

from .params import Params
from .errors import ComputationError, EmptyEnvelope, MomentDivergent, SurvBoundError
from .distributions import (load_distribution, raw_moments, truncated_moments, TruncationView,
                            Discrete, GammaHalf, PowerLaw, BreitWigner, Square, Tabulated)
from .moments import e_from_h, b_from_h, b_quadrature
from .series_bounds import series_curve, cos2_curve, ri_curves
from .cutoff_bounds import build_cutoff_spec, cutoff_curve
from .envelope import sweep_envelope, discrete_schedule, composite_bound, composite_frame, default_cutoff_grid
from .oracle import survival_frame
from .figures import build_figure
from .output import write_frame, write_manifest
from .utils_functions import time_grid

logger = logging.getLogger(__name__)


def _times(params, dist):
    """
    Time grid in units of hbar over the distribution scale, converted to internal units.
    """
    return time_grid(params.t_max, params.grid_size) / dist.scale


def _display_times(df, dist):
    df["t"] = df["t"] * dist.scale
    return df


def run_moments(params):
    """
    Energy moments h_k, correlation moments e_k and, with a cut-off, the truncated
    moments and edge moments b_k.

    Parameters
    ----------------------------------------------------------
    params : Params object
        The parameters for the workflow.
    """

    dist = load_distribution(params.spec_path, params.renormalize)
    n = max(params.orders)
    table = pd.DataFrame({"k": np.arange(n + 1)})

    try:
        h = raw_moments(dist, n)
    except MomentDivergent as err:
        logger.warning("%s; higher moments are left empty.", err)
        h = err.partial
    table["h"] = [h.h(k) if h is not None and k <= h.order else np.nan for k in range(n + 1)]

    e = None
    if h is not None and h.order >= 2:
        e = e_from_h(h, h.order - h.order % 2)
    table["e"] = [e.e(k) if e is not None and k % 2 == 0 and k <= e.order else np.nan for k in range(n + 1)]

    if params.cutoff is not None:
        view = TruncationView(dist, params.cutoff)
        hbar = truncated_moments(view, n)
        ebar = e_from_h(hbar, n - n % 2)
        B = b_from_h(hbar)
        table["hbar"] = [hbar.h(k) for k in range(n + 1)]
        table["ebar"] = [ebar.e(k) if k % 2 == 0 else np.nan for k in range(n + 1)]
        table["b"] = [B.b(k) for k in range(n + 1)]
        # the same edge moments from their defining integral
        check = b_quadrature(view, n, tol=params.tolerance)
        table["b_quadrature"] = [check.b(k) for k in range(n + 1)]
        table["alpha"] = view.alpha

    return table


def run_bounds(params):
    """
    Bounds without cut-off (series bounds and cos^2 on P, bounds on R and I) or,
    with a cut-off, the fixed-cut-off bounds on |A|.

    Parameters
    ----------------------------------------------------------
    params : Params object
        The parameters for the workflow.
    """

    dist = load_distribution(params.spec_path, params.renormalize)
    t = _times(params, dist)
    frames = []

    if params.cutoff is not None:
        for n in params.orders:
            spec = build_cutoff_spec(dist, params.cutoff, n)
            frames.append(cutoff_curve(spec, t).to_frame())
        return _display_times(pd.concat(frames, ignore_index=True), dist)

    n = max(params.orders)
    try:
        h = raw_moments(dist, n)
    except MomentDivergent as err:
        logger.warning("%s; only lower orders are used.", err)
        h = err.partial
    if h is None or h.order < 1:
        raise ComputationError("No energy moment exists; use --cutoff for the {} distribution".format(dist.kind))

    if h.order >= 2:
        e = e_from_h(h, h.order - h.order % 2)
        for k in params.orders:
            if k <= e.order:
                frames.append(series_curve(e, k, t).to_frame())
        frames.append(cos2_curve(e.delta_e(), t).to_frame())
    for curve in ri_curves(h, h.order, t, nonnegative=dist.support_lower >= 0):
        frames.append(curve.to_frame())
    return _display_times(pd.concat(frames, ignore_index=True), dist)


def run_exact(params):
    """
    The exact survival t, re, im, abs, p on the time grid.
    """

    dist = load_distribution(params.spec_path, params.renormalize)
    t = _times(params, dist)
    return _display_times(survival_frame(dist, t, tol=params.oracle_tolerance), dist)


def run_envelope(params):
    """
    Envelopes over the cut-off for every order, or the schedules of a discrete spectrum.

    Parameters
    ----------------------------------------------------------
    params : Params object
        The parameters for the workflow.
    """

    dist = load_distribution(params.spec_path, params.renormalize)
    frames = []
    error = None

    if isinstance(dist, Discrete):
        for n in params.orders:
            frames.append(discrete_schedule(dist, n).to_frame())
        df = pd.concat(frames, ignore_index=True)
        for col in ("t_start", "t_end"):
            df[col] = df[col] * dist.scale
        return df

    c_grid = default_cutoff_grid(dist, params.c_grid_size)
    for n in params.orders:
        try:
            env = sweep_envelope(dist, n, c_grid=c_grid, show_progress=params.show_progress)
        except EmptyEnvelope as err:
            logger.warning("%s", err)
            error = err
            continue
        frames.append(env.to_frame())
    if len(frames) == 0:
        raise error
    return _display_times(pd.concat(frames, ignore_index=True), dist)


def run_composite(params):
    """
    The best lower and upper bound on |A(t)| at each time.
    """

    dist = load_distribution(params.spec_path, params.renormalize)
    t = _times(params, dist)
    lower, upper = composite_bound(dist, params.orders, t[-1], c_grid_size=params.c_grid_size, t=t,
                                   show_progress=params.show_progress)
    return _display_times(composite_frame(lower, upper), dist)


def run_figure(name, params):
    """
    A function to write the dataset of a figure: one table per series and manifest.json.

    Parameters
    ----------------------------------------------------------
    name : str
        One of fig1..fig8.
    params : Params object
        params.output is the parent directory of the figure directory.

    Returns
    ----------------------------------------------------------
    list of str
        Paths written.
    """

    description, series = build_figure(name, params)
    directory = os.path.join(params.output or "figures", name)
    paths = []
    for s in series:
        file_name = "{}.{}".format(s.name, params.output_format)
        paths.append(write_frame(s.frame, os.path.join(directory, file_name), params.output_format))
        entry = {"name": s.name, "file": file_name, "columns": [str(c) for c in s.frame.columns]}
        entry.update(s.meta)
        description["series"].append(entry)
    paths.append(write_manifest(directory, description))
    logger.info("Wrote %d files to %s", len(paths), directory)
    return paths
