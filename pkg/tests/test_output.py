import io
import json

import numpy as np
import pandas as pd
import pytest

from survbound.errors import InvalidConfig
from survbound.output import format_frame, frame_from_json, frame_to_json, write_frame, write_manifest
from survbound.params import Params


@pytest.fixture
def table():
    return pd.DataFrame({
        "t": [0.0, 0.1, 1.0 / 3.0],
        "value": [1.0, 0.987654321012345678, 2.0 / 3.0],
        "valid": [True, True, False],
        "order": [2, 2, 2],
        "direction": ["lower", "lower", "lower"],
    })


def test_csv_and_json_hold_the_same_numbers(table):
    from_csv = pd.read_csv(io.StringIO(format_frame(table, "csv")), float_precision="round_trip")
    from_json = frame_from_json(format_frame(table, "json"))
    assert list(from_csv.columns) == list(table.columns)
    assert list(from_json.columns) == list(table.columns)
    for col in ("t", "value"):
        np.testing.assert_array_equal(from_csv[col].to_numpy(), from_json[col].to_numpy())
        np.testing.assert_allclose(from_csv[col].to_numpy(), table[col].to_numpy(), rtol=1e-14)
    assert from_json["valid"].tolist() == [True, True, False]
    assert from_json["direction"].tolist() == ["lower"] * 3


def test_json_layout(table):
    payload = json.loads(frame_to_json(table))
    assert sorted(payload) == ["columns", "data"]
    assert payload["data"][0] == [0.0, 1.0, True, 2, "lower"]
    assert frame_to_json(table).endswith("\n")


def test_output_is_deterministic(table):
    assert format_frame(table, "csv") == format_frame(table.copy(), "csv")
    assert frame_to_json(table) == frame_to_json(table.copy())


def test_unknown_format(table):
    with pytest.raises(InvalidConfig):
        format_frame(table, "xlsx")


def test_write_frame(tmp_path, table, capsys):
    path = write_frame(table, str(tmp_path / "sub" / "bounds.csv"))
    assert pd.read_csv(path).shape == (3, 5)
    assert write_frame(table) is None
    assert capsys.readouterr().out.startswith("t,value,valid,order,direction")


def test_write_manifest(tmp_path):
    path = write_manifest(str(tmp_path), {"figure": "fig1", "series": [{"name": "exact", "order": np.int64(2)}]})
    with open(path) as f:
        manifest = json.load(f)
    assert manifest["series"][0]["order"] == 2
    assert open(path).read().endswith("\n")


def test_params_defaults():
    params = Params()
    assert params.orders == [2, 4, 6, 8]
    assert params.grid_size == 512
    assert params.c_grid_size == 256
    assert params.oracle_tolerance == 1e-9
    params.check()
    assert "Orders: [2, 4, 6, 8]" in str(params)


@pytest.mark.parametrize("field,value", [("orders", [3]), ("orders", [18]), ("orders", []), ("t_max", 0.0),
                                         ("grid_size", 1), ("output_format", "xml"), ("tolerance", -1.0)])
def test_params_check(field, value):
    params = Params()
    setattr(params, field, value)
    with pytest.raises(InvalidConfig):
        params.check()


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("SURVBOUND_TOL", "1e-7")
    params = Params()
    assert params.tolerance == 1e-7
    assert params.oracle_tolerance == 1e-7
    monkeypatch.setenv("SURVBOUND_TOL", "tight")
    with pytest.raises(InvalidConfig):
        Params()
