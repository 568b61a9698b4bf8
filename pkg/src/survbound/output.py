# Author: Hauxu Yu

# A module to write result tables (CSV or JSON) and figure manifests.
# Numbers are written with 15 significant digits and no timestamps, so that
# identical inputs give byte-identical files.

import json
import logging
import os
import sys

import numpy as np
import pandas as pd

from .errors import InvalidConfig

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.15g"
FORMATS = ("csv", "json")


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(FLOAT_FORMAT % value)
    if value is None:
        return None
    return str(value)


def frame_to_json(df):
    """
    A function to encode a table as {"columns": [...], "data": [[...], ...]}.
    """

    payload = {
        "columns": [str(c) for c in df.columns],
        "data": [[_cell(v) for v in row] for row in df.itertuples(index=False, name=None)],
    }
    return json.dumps(payload, sort_keys=True) + "\n"


def frame_from_json(text):
    """
    A function to decode a table written by frame_to_json.
    """

    payload = json.loads(text)
    return pd.DataFrame(payload["data"], columns=payload["columns"])


def format_frame(df, fmt="csv"):
    """
    A function to render a table as text.

    Parameters
    ----------------------------------------------------------
    df: pandas DataFrame
        The table.
    fmt: str
        "csv" or "json".
    """

    if fmt == "csv":
        return df.to_csv(index=False, float_format=FLOAT_FORMAT)
    if fmt == "json":
        return frame_to_json(df)
    raise InvalidConfig("Unknown output format '{}'".format(fmt))


def write_frame(df, path=None, fmt="csv"):
    """
    A function to write a table to a file, or to stdout when path is None.
    """

    text = format_frame(df, fmt)
    if path is None:
        sys.stdout.write(text)
        return None

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)
    logger.info("Wrote %d rows to %s", len(df), path)
    return path


def write_manifest(directory, entries):
    """
    A function to write manifest.json describing the series of a figure dataset.

    Parameters
    ----------------------------------------------------------
    directory: str
        The figure directory.
    entries: dict
        Figure-level description, including the list of series.
    """

    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, "manifest.json")
    with open(path, "w", newline="") as f:
        json.dump(entries, f, sort_keys=True, indent=2, default=_cell)
        f.write("\n")
    return path
