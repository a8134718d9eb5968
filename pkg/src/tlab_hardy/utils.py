import csv
import io
import json
import math
import typing as t
from collections import abc


def finite_or_none(value: float) -> float | None:
    """
    Maps NaN and infinities to None so that reports stay valid JSON.
    """
    value = float(value)
    return value if math.isfinite(value) else None


def dump_json(payload: t.Any) -> str:
    """
    Serializes a report payload.

    Parameters
    ----------
    payload : Any
        JSON-compatible data. Dict insertion order is kept, so callers fix
        the field order.

    Returns
    -------
    str
        Indented JSON with a trailing newline. Floats use Python's shortest
        round-trip representation, so loading and dumping again reproduces
        the text byte for byte.
    """
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def dump_csv(
    header: abc.Sequence[str], rows: abc.Iterable[abc.Mapping[str, t.Any]]
) -> str:
    """
    Serializes rows as CSV with a fixed header and ``\\n`` line endings.
    """
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(header), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(row[key]) for key in header})
    return buffer.getvalue()


def _csv_cell(value: t.Any) -> t.Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value
