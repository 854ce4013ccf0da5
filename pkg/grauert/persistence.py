"""
Persistence utilities for scan records and summaries.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import pandas as pd
from pydantic import BaseModel

from .schemas import CSV_TAIL_COLUMNS, ScanRecord

PathLike = Union[str, Path]

PARQUET_SUFFIXES = {".parquet", ".pq"}


def csv_columns(coords: Sequence[str]) -> List[str]:
    """``model,chart,engine,<coords>,inv_re,inv_im,inv_abs,levi_or_fw_abs,status``."""
    return ["model", "chart", "engine", *coords, *CSV_TAIL_COLUMNS]


def records_to_dataframe(records: Iterable[ScanRecord]) -> pd.DataFrame:
    """
    Flatten records into a DataFrame with the fixed column order.

    Coordinate columns follow the first record; records must share coordinates.
    """
    rows = [record.row() for record in records]
    if not rows:
        return pd.DataFrame(columns=csv_columns(()))
    coords = list(rows[0].keys())[3 : -len(CSV_TAIL_COLUMNS)]
    return pd.DataFrame(rows, columns=csv_columns(coords))


def write_records(records: Union[pd.DataFrame, Iterable[ScanRecord]], path: PathLike) -> Path:
    df = records if isinstance(records, pd.DataFrame) else records_to_dataframe(records)
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    if output_path.suffix.lower() in PARQUET_SUFFIXES:
        df.to_parquet(output_path, index=False)
    else:
        # repr-exact floats keep reruns byte-identical
        df.to_csv(output_path, index=False, float_format="%.17g")
    return output_path


def load_records(path: PathLike) -> pd.DataFrame:
    input_path = Path(path)
    if not input_path.exists():
        return pd.DataFrame()
    if input_path.suffix.lower() in PARQUET_SUFFIXES:
        return pd.read_parquet(input_path)
    return pd.read_csv(input_path)


def write_summary(summary: Union[BaseModel, Dict[str, Any]], path: PathLike) -> Path:
    payload = summary.model_dump(mode="json") if isinstance(summary, BaseModel) else summary
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2)
    return output_path


def load_summary(path: PathLike) -> Dict[str, Any]:
    with Path(path).open("r", encoding="utf-8") as handle:
        return json.load(handle)


__all__ = [
    "csv_columns",
    "records_to_dataframe",
    "write_records",
    "load_records",
    "write_summary",
    "load_summary",
]
