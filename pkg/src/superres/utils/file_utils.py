"""Writers for curves, images, tables and JSON reports.

Numbers are written with ``repr``, which round-trips doubles exactly, so
identical values always produce byte-identical files.
"""
import json
import os

from pathlib import Path
from typing import Any, Iterable, Sequence, Union

import numpy as np

from superres.core.errors import OutputError


PathLike = Union[str, Path]

CURVE_HEADER = ("scan_x_lambda", "value")
IMAGE_HEADER = ("x_lambda", "y_lambda", "value")
PGM_MAXVAL = 65535


def mkdir(*dirs: PathLike):
    """Create one or more directories, including parents.

    Raises:
        OutputError: If a directory cannot be created.
    """
    for d in dirs:
        try:
            Path(d).mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputError(f"cannot create directory {d}: {e.strerror or e}") from e


def write_file(file_path: PathLike, content: Union[str, bytes], encoding: str = "utf-8") -> Path:
    path = Path(file_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, str):
            with open(path, "w", encoding=encoding, newline="\n") as f:
                f.write(content)
        else:
            with open(path, "wb") as f:
                f.write(content)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror or e}") from e
    return path


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def write_table_csv(file_path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return write_file(file_path, "\n".join(lines) + "\n")


def write_curve_csv(file_path: PathLike, scan_x: Sequence[float], values: Sequence[float]) -> Path:
    """Two-column curve file with header ``scan_x_lambda,value``."""
    return write_table_csv(file_path, CURVE_HEADER, zip(np.asarray(scan_x, float), np.asarray(values, float)))


def write_image_csv(file_path: PathLike, scan_x: Sequence[float], scan_y: Sequence[float], values: np.ndarray) -> Path:
    """Flattened image, one ``x_lambda,y_lambda,value`` row per pixel, row by row in ``scan_y``."""
    values = np.asarray(values, dtype=float)
    rows = (
        (float(x), float(y), values[j, i])
        for j, y in enumerate(scan_y)
        for i, x in enumerate(scan_x)
    )
    return write_table_csv(file_path, IMAGE_HEADER, rows)


def quantize_image(values: np.ndarray) -> np.ndarray:
    """Max-normalized 16-bit grey levels, top row = largest ``scan_y``.

    ``values`` is indexed ``[y, x]`` with ``y`` increasing, so rows are
    flipped to put the largest ``y`` first.
    """
    values = np.asarray(values, dtype=float)
    peak = float(values.max()) if values.size else 0.0
    scaled = values / peak if peak > 0 else np.zeros_like(values)
    levels = np.rint(np.clip(scaled, 0.0, 1.0) * PGM_MAXVAL).astype(np.uint16)
    return levels[::-1]


def write_pgm(file_path: PathLike, values: np.ndarray) -> Path:
    """Binary 16-bit PGM (P5, big-endian samples, row-major)."""
    levels = quantize_image(values)
    height, width = levels.shape
    header = f"P5\n{width} {height}\n{PGM_MAXVAL}\n".encode("ascii")
    return write_file(file_path, header + levels.astype(">u2").tobytes())


def read_pgm(file_path: PathLike) -> np.ndarray:
    """Inverse of ``write_pgm`` for files it produced."""
    data = Path(file_path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError(f"{file_path} is not a binary PGM")
    width, height = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=">u2").reshape(height, width).astype(np.uint16)


def write_png(file_path: PathLike, values: np.ndarray) -> Path:
    """16-bit greyscale PNG with the same pixels as ``write_pgm``."""
    from PIL import Image

    levels = np.ascontiguousarray(quantize_image(values))
    path = Path(file_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(levels).save(path, format="PNG")
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    return path


def write_image(file_path: PathLike, values: np.ndarray, image_format: str = "pgm") -> Path:
    if image_format == "png":
        return write_png(file_path, values)
    return write_pgm(file_path, values)


def write_json(file_path: PathLike, data: Any) -> Path:
    return write_file(file_path, json.dumps(data, indent=2, ensure_ascii=False, default=_json_default) + "\n")


def _json_default(obj: Any):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, os.PathLike):
        return os.fspath(obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")
