"""File formats shared by the CLI.

Matrices are JSON objects ``{"d": n, "entries": [[[re, im], ...], ...]}``,
row-major, where row i / column k (counting from 1) is ``<a_i|F|a_k>``.
KD tables are CSV with header ``j,k,re,im`` and 1-based labels.
"""

from __future__ import annotations

import csv
import io
import json
from numbers import Real
from pathlib import Path

import numpy as np

SIG_DIGITS = 12
NOISE_FLOOR = 1e-15  # printed as 0 so golden outputs do not depend on rounding noise


class MatrixFormatError(ValueError):
    pass


def fmt(x: float) -> str:
    x = float(x)
    if abs(x) < NOISE_FLOOR:
        x = 0.0
    return f"{x:.{SIG_DIGITS}g}"


def rounded(x: float) -> float:
    return float(fmt(x))


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "d": int(M.shape[0]),
        "entries": [[[rounded(z.real), rounded(z.imag)] for z in row] for row in M],
    }


def matrix_from_json(obj, d: int | None = None) -> np.ndarray:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFormatError('expected an object with an "entries" field')
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows:
        raise MatrixFormatError('"entries" must be a non-empty list of rows')
    n = len(rows)
    declared = obj.get("d", n)
    if isinstance(declared, bool) or not isinstance(declared, int) or declared != n:
        raise MatrixFormatError(f'"d" ({declared!r}) does not match the number of rows ({n})')
    if d is not None and n != d:
        raise MatrixFormatError(f"matrix has dimension {n}, expected {d}")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i + 1} must have {n} entries")
        for k, z in enumerate(row):
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(x, Real) and not isinstance(x, bool) for x in z)
            ):
                raise MatrixFormatError(f"entry ({i + 1},{k + 1}) must be a [re, im] pair of numbers")
            M[i, k] = complex(z[0], z[1])
    if not np.all(np.isfinite(M)):
        raise MatrixFormatError("entries must be finite")
    return M


def load_matrix(path: str | Path, d: int | None = None) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc.msg})") from exc
    return matrix_from_json(obj, d)


def save_matrix(path: str | Path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")


def kd_table_csv(Q) -> str:
    Q = np.asarray(Q, dtype=complex)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "k", "re", "im"])
    for j, row in enumerate(Q, start=1):
        for k, z in enumerate(row, start=1):
            w.writerow([j, k, fmt(z.real), fmt(z.imag)])
    return buf.getvalue()


def parse_kd_table_csv(text: str) -> np.ndarray:
    rows = list(csv.DictReader(io.StringIO(text)))
    d = int(round(len(rows) ** 0.5))
    if d * d != len(rows):
        raise MatrixFormatError(f"KD table has {len(rows)} rows, not a square count")
    Q = np.zeros((d, d), dtype=complex)
    for r in rows:
        Q[int(r["j"]) - 1, int(r["k"]) - 1] = complex(float(r["re"]), float(r["im"]))
    return Q
