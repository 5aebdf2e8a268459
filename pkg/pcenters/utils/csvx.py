# pcenters/utils/csvx.py

import csv
from pathlib import Path
from typing import Iterable, Sequence

from pcenters.config import settings


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    try:
        return format(float(value), f".{settings.CSV_DIGITS}g")
    except (TypeError, ValueError):
        return str(value)


def write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """CSV with '.' decimals, LF line endings and 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path
