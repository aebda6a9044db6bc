"""CSV curve files and flat key-value manifests."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .errors import DomainError
from .outage import CurveTable, XAxis


def format_number(x: float) -> str:
    """Shortest round-trip decimal; integral abscissae print without a fraction."""
    x = float(x)
    if math.isfinite(x) and x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_value(y: float) -> str:
    return repr(float(y))


def write_rows(path: Path, header: tuple[str, str], rows: Iterable[tuple[float, float]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines += [f"{format_number(x)},{format_value(y)}" for x, y in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_curve_csv(path: Path, curve: CurveTable) -> None:
    write_rows(path, ("x", "p_out"), curve.points)


def manifest_path(path: Path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".manifest.txt")


def read_curve_csv(path: Path, x_axis: Optional[str] = None) -> CurveTable:
    """Load a two-column curve file.

    The abscissa convention comes from ``x_axis`` if given, else from a
    header named ``gamma`` or ``depolarizing_p``, else from the ``x_axis``
    key of the sidecar manifest, else defaults to ``gamma``.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DomainError(f"{path}: empty curve file")
    header, body = rows[0], [r for r in rows[1:] if r]
    if len(header) != 2:
        raise DomainError(f"{path}: expected two columns, got header {header!r}")
    try:
        points = tuple((float(a), float(b)) for a, b in body)
    except ValueError as exc:
        raise DomainError(f"{path}: malformed row ({exc})") from None
    if x_axis is None:
        first = header[0].strip()
        if first in (XAxis.GAMMA.value, XAxis.DEPOLARIZING_P.value):
            x_axis = first
        elif manifest_path(path).exists():
            x_axis = read_key_values(manifest_path(path)).get("x_axis")
    return CurveTable(points, XAxis(x_axis or XAxis.GAMMA.value))


def read_key_values(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{n}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def write_key_values(path: Path, items: Mapping[str, object]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{k} = {v}" for k, v in items.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
