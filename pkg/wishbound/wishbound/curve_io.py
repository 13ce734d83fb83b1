"""
CSV input and output for PEP curves and suite results.

Files are written to a temporary file next to the target and renamed into
place, so an interrupted run never leaves a partial file behind.
"""

import io
import os
import logging
import tempfile
from pathlib import Path
from typing import Iterable, List, Optional, TextIO

import pandas as pd

from .exceptions import ConfigError
from .pep import CSV_COLUMNS, PepCurve

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path through a temporary file and os.replace."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=str(directory))
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, target)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.debug(f"Wrote {len(text)} bytes to {target}")


def curves_to_dataframe(curves: Iterable[PepCurve], exact_column: bool = False) -> pd.DataFrame:
    frames = [curve.to_dataframe(exact_column) for curve in curves]
    if not frames:
        columns = CSV_COLUMNS + (['exact'] if exact_column else [])
        return pd.DataFrame(columns=columns)
    return pd.concat(frames, ignore_index=True)


def dataframe_to_csv_text(df: pd.DataFrame) -> str:
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def curves_to_csv_text(curves: Iterable[PepCurve], exact_column: bool = False) -> str:
    return dataframe_to_csv_text(curves_to_dataframe(curves, exact_column))


def write_curves(curves: List[PepCurve], path: Optional[str], exact_column: bool = False,
                 stream: Optional[TextIO] = None) -> None:
    """Write curves as CSV to path (atomically) or, without a path, to stream."""
    text = curves_to_csv_text(curves, exact_column)
    if path and path != "-":
        atomic_write_text(path, text)
    elif stream is not None:
        stream.write(text)


def write_dataframe(df: pd.DataFrame, path: str) -> None:
    atomic_write_text(path, dataframe_to_csv_text(df))


def read_curves(paths: Iterable[str]) -> pd.DataFrame:
    """
    Read and validate one or more curve CSV files.

    Lines starting with '#' are skipped. Raises ConfigError when a file is
    missing, empty, lacks schema columns or holds non-numeric values.
    """
    frames = []
    for path in paths:
        if not Path(path).exists():
            raise ConfigError(f"CSV file not found - {path}")
        try:
            df = pd.read_csv(path, comment="#", dtype={'alpha': str, 'source': str})
        except pd.errors.EmptyDataError:
            raise ConfigError(f"CSV file {path} is empty") from None
        except (pd.errors.ParserError, UnicodeDecodeError) as e:
            raise ConfigError(f"Malformed CSV {path}: {e}") from None
        missing = [c for c in CSV_COLUMNS if c not in df.columns]
        if missing:
            raise ConfigError(f"CSV {path} is missing columns: {', '.join(missing)}")
        if df.empty:
            raise ConfigError(f"CSV file {path} has no data rows")
        for column in ('gamma_db', 'value', 'n', 'm', 'predicted_exponent'):
            converted = pd.to_numeric(df[column], errors='coerce')
            if converted.isna().any():
                raise ConfigError(f"CSV {path} has non-numeric values in column {column}")
            df[column] = converted
        df['stderr'] = pd.to_numeric(df['stderr'], errors='coerce')
        df['source_file'] = str(path)
        frames.append(df)
    if not frames:
        raise ConfigError("At least one CSV input is required")
    return pd.concat(frames, ignore_index=True)
