"""Deterministic report writers: JSON, 16-bit PGM heatmaps and CSV tables.

JSON floats are printed with 17 significant digits and keys are sorted, so
identical inputs give byte-identical output.
"""

import csv
import io
import json
import math
from enum import Enum

import numpy as np


def _plain(obj):
    """Recursively convert numpy scalars/arrays, enums and report objects to JSON types."""
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def _emit(obj, indent):
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _emit(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, float):
        if math.isfinite(obj):
            return format(obj, ".17g")
        return json.dumps(obj)
    return json.dumps(obj)


def dumps(obj):
    """Canonical JSON text with sorted keys and 17-digit floats."""
    return _emit(_plain(obj), 0) + "\n"


def write_pgm(path, magnitude):
    """Write a max-normalized 16-bit binary PGM; returns the normalization constant.

    Row r of the image is row r of ``magnitude``. The maximum is recorded in
    a header comment so pixel values can be mapped back.
    """
    mag = np.asarray(magnitude, dtype=float)
    if mag.ndim != 2:
        raise ValueError("heatmap needs a 2-D array")
    peak = float(mag.max()) if mag.size else 0.0
    scaled = mag / peak if peak > 0 else np.zeros_like(mag)
    pixels = np.round(np.clip(scaled, 0.0, 1.0) * 65535).astype(">u2")
    header = f"P5\n# max_magnitude {peak!r}\n{mag.shape[1]} {mag.shape[0]}\n65535\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pixels.tobytes())
    return peak


def read_pgm(path):
    """Inverse of :func:`write_pgm`: returns (pixels as uint16 array, max_magnitude)."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens, pos, peak = [], 0, None
    while len(tokens) < 4:
        end = data.index(b"\n", pos)
        line = data[pos:end].decode("ascii")
        pos = end + 1
        if line.startswith("# max_magnitude"):
            peak = float(line.split()[-1])
        elif not line.startswith("#"):
            tokens.extend(line.split())
    width, height = int(tokens[1]), int(tokens[2])
    pixels = np.frombuffer(data[pos:], dtype=">u2", count=width * height).reshape(height, width)
    return pixels.astype(np.uint16), peak


def grid_csv(x_nodes, xi_nodes, values):
    """CSV text with one row per (x, xi) pair: x columns, xi columns, re, im.

    ``x_nodes`` and ``xi_nodes`` have shape (N, d) and (K, d); ``values`` is (N, K).
    """
    x_nodes = np.asarray(x_nodes, dtype=float).reshape(len(values), -1)
    xi_nodes = np.asarray(xi_nodes, dtype=float).reshape(values.shape[1], -1)
    d = x_nodes.shape[1]
    names = ["x"] if d == 1 else [f"x{i + 1}" for i in range(d)]
    names += ["xi"] if d == 1 else [f"xi{i + 1}" for i in range(d)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names + ["re", "im"])
    for i, x in enumerate(x_nodes):
        for j, xi in enumerate(xi_nodes):
            z = values[i, j]
            writer.writerow([format(v, ".17g") for v in (*x, *xi, z.real, z.imag)])
    return buf.getvalue()
