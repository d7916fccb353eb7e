"""
CSV emission and parsing for sweep and trial records.
Column order follows the record model's field order.
"""

import logging
from collections.abc import Iterable
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel

from ..configs import CSV_FLOAT_FORMAT
from ..exceptions import InvalidArgumentError, ResultWriteError
from ..schemas.experiments import TrialRecord

logger = logging.getLogger(__name__)


def emit_csv(records: Iterable[BaseModel], path, row_type: type[BaseModel] | None = None) -> Path:
    """Write one header row plus one row per record, floats to 12 significant digits.

    ``row_type`` fixes the columns for an empty stream; it defaults to the
    first record's type, or TrialRecord.
    """
    rows = list(records)
    row_type = row_type or (type(rows[0]) if rows else TrialRecord)
    columns = list(row_type.model_fields)
    for row in rows:
        if not isinstance(row, row_type):
            raise InvalidArgumentError(f"cannot mix {type(row).__name__} into a {row_type.__name__} table")
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=columns)
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')
    except OSError as exc:
        raise ResultWriteError(target, exc.strerror or str(exc)) from exc
    logger.info(f"Wrote {len(rows)} {row_type.__name__} rows to {target}")
    return target


def _plain(value):
    return value.item() if isinstance(value, np.generic) else value


def parse_csv(path, row_type: type[BaseModel] = TrialRecord) -> list[BaseModel]:
    target = Path(path)
    try:
        frame = pd.read_csv(target)
    except OSError as exc:
        raise ResultWriteError(target, exc.strerror or str(exc)) from exc
    expected = list(row_type.model_fields)
    if list(frame.columns) != expected:
        raise InvalidArgumentError(f"{target} columns {list(frame.columns)} do not match {row_type.__name__}")
    return [
        row_type.model_validate({column: _plain(value) for column, value in record.items()})
        for record in frame.to_dict(orient='records')
    ]
