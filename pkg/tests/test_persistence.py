import math

import pytest

from grauert.persistence import (
    csv_columns,
    load_records,
    load_summary,
    records_to_dataframe,
    write_records,
    write_summary,
)
from grauert.schemas import Candidate, EngineMinimum, ScanRecord, ScanSummary


def sample_records():
    return [
        ScanRecord(
            model="hyperbolic",
            chart="v-graph",
            engine="graph",
            coords={"x": 1.0, "y": 0.0, "u": 0.0},
            inv_re=-8.4375,
            inv_im=0.0,
            inv_abs=8.4375,
            normalized_abs=0.1,
            levi_or_fw_abs=0.75,
            status="ok",
        ),
        ScanRecord(
            model="hyperbolic",
            chart="v-graph",
            engine="graph",
            coords={"x": 1.0, "y": 0.9, "u": 0.0},
            status="domain-skipped",
            message="outside the cone",
        ),
    ]


def test_column_order():
    assert csv_columns(("x", "y", "u")) == [
        "model", "chart", "engine", "x", "y", "u",
        "inv_re", "inv_im", "inv_abs", "levi_or_fw_abs", "status",
    ]


def test_csv_header_and_rows(tmp_path):
    path = write_records(sample_records(), tmp_path / "out" / "scan.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "model,chart,engine,x,y,u,inv_re,inv_im,inv_abs,levi_or_fw_abs,status"
    assert lines[1].startswith("hyperbolic,v-graph,graph,1,0,0,-8.4375,0,8.4375,0.75,ok")
    # skipped rows leave the numeric fields empty
    assert lines[2] == "hyperbolic,v-graph,graph,1,0.90000000000000002,0,,,,,domain-skipped"


def test_csv_reload(tmp_path):
    path = write_records(sample_records(), tmp_path / "scan.csv")
    df = load_records(path)
    assert list(df.columns) == csv_columns(("x", "y", "u"))
    assert df.loc[0, "inv_re"] == -8.4375
    assert math.isnan(df.loc[1, "inv_abs"])
    assert list(df["status"]) == ["ok", "domain-skipped"]


def test_parquet_by_suffix(tmp_path):
    pytest.importorskip("pyarrow")
    path = write_records(sample_records(), tmp_path / "scan.parquet")
    assert path.read_bytes()[:4] == b"PAR1"
    df = load_records(path)
    assert list(df.columns) == csv_columns(("x", "y", "u"))
    assert df.loc[0, "levi_or_fw_abs"] == 0.75


def test_missing_file_loads_empty(tmp_path):
    assert load_records(tmp_path / "missing.csv").empty


def test_empty_records_frame():
    df = records_to_dataframe([])
    assert df.empty
    assert list(df.columns) == csv_columns(())


def test_summary_round_trip(tmp_path):
    summary = ScanSummary(
        model="heisenberg",
        engine="graph",
        n_ok=2,
        n_skipped=1,
        min_abs=0.0,
        argmin={"x": 0.0, "y": 0.0, "u": 0.0},
        engines={"graph": EngineMinimum(n_ok=2, min_abs=0.0, argmin={"x": 0.0, "y": 0.0, "u": 0.0}, min_normalized_abs=0.0)},
        candidates=[Candidate(engine="graph", coords={"x": 0.0, "y": 0.0, "u": 0.0}, grid_abs=0.0, normalized_abs=0.0)],
    )
    path = write_summary(summary, tmp_path / "summary.json")
    payload = load_summary(path)
    assert set(payload) == {"model", "engine", "n_ok", "n_skipped", "min_abs", "argmin", "engines", "candidates"}
    assert payload["engines"]["graph"]["n_ok"] == 2
    assert payload["candidates"][0]["coords"] == {"x": 0.0, "y": 0.0, "u": 0.0}
    assert ScanSummary.model_validate(payload) == summary
    assert path.read_text(encoding="utf-8").startswith("{\n  ")
