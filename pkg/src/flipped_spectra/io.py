"""CSV import/export for matrices, pairing reports, homotopy traces and models.

Floats are written with 17 significant digits so that reading a file back
reproduces every value bit for bit. Files are written atomically.
"""

from __future__ import annotations

import csv
import io as _io
import os
import sys
import tempfile

import numpy as np

from .matrixless import ExpansionModel
from .ordering import HomotopyTrace
from .spectral import PairingReport


def fmt(x) -> str:
    x = float(x)
    if np.isnan(x):
        return ""
    return f"{x:.16e}"


def _num(s: str) -> float:
    return float("nan") if s.strip() == "" else float(s)


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename; ``-`` is stdout."""
    if str(path) == "-":
        sys.stdout.write(text)
        return
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def rows_to_text(header, rows, comments=()) -> str:
    buf = _io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _read_rows(path):
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    comments = [ln[1:].strip() for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    return comments, list(csv.reader(body))


# -- matrices ---------------------------------------------------------------------


def matrix_to_csv(A) -> str:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    return rows_to_text(None, [[fmt(x) for x in row] for row in A])


def write_matrix(path, A):
    atomic_write(path, matrix_to_csv(A))


def read_matrix(path) -> np.ndarray:
    _, rows = _read_rows(path)
    A = np.array([[float(x) for x in row] for row in rows])
    A.setflags(write=False)
    return A


# -- pairing reports ---------------------------------------------------------------

REPORT_HEADER = ["j", "lambda_T", "lambda_H", "sign", "xi", "mismatch"]


def report_to_csv(report: PairingReport) -> str:
    rows = [
        [int(j), fmt(a), fmt(b), int(s), fmt(x), int(bool(m))]
        for j, a, b, s, x, m in zip(
            report.j, report.lambda_T, report.lambda_H, report.sign, report.xi, report.mismatch
        )
    ]
    return rows_to_text(REPORT_HEADER, rows, [f"tolerance={report.tolerance!r}"])


def write_report(path, report: PairingReport):
    atomic_write(path, report_to_csv(report))


def read_report(path) -> PairingReport:
    comments, rows = _read_rows(path)
    if rows[0] != REPORT_HEADER:
        raise ValueError(f"unexpected header {rows[0]!r}")
    meta = dict(c.split("=", 1) for c in comments if "=" in c)
    data = rows[1:]
    col = lambda i, conv: np.array([conv(r[i]) for r in data])
    return PairingReport(
        j=col(0, int),
        lambda_T=col(1, _num),
        lambda_H=col(2, _num),
        sign=col(3, int),
        xi=col(4, _num),
        mismatch=col(5, lambda s: bool(int(s))),
        tolerance=float(meta.get("tolerance", "1e-6")),
    )


# -- homotopy traces -------------------------------------------------------------------


def trace_to_csv(trace: HomotopyTrace) -> str:
    n, N = trace.values.shape
    rows = [
        [fmt(trace.gammas[k]), j + 1, fmt(trace.values[j, k])]
        for k in range(N)
        for j in range(n)
    ]
    return rows_to_text(["gamma", "index", "tracked_lambda"], rows)


def write_trace(path, trace: HomotopyTrace):
    atomic_write(path, trace_to_csv(trace))


def read_trace_values(path):
    """``(gammas, values)`` with ``values[j, k]`` as in :class:`HomotopyTrace`."""
    _, rows = _read_rows(path)
    data = rows[1:]
    gammas = sorted({float(r[0]) for r in data})
    n = max(int(r[1]) for r in data)
    values = np.empty((n, len(gammas)))
    gi = {g: k for k, g in enumerate(gammas)}
    for g, j, v in data:
        values[int(j) - 1, gi[float(g)]] = float(v)
    return np.array(gammas), values


# -- expansion models ------------------------------------------------------------------


def model_to_csv(model: ExpansionModel) -> str:
    comments = [
        f"k={model.k}",
        f"n0={model.n0}",
        "sizes=" + " ".join(str(n) for n in model.sizes),
        f"strategy={model.strategy}",
        f"boundary={model.boundary}",
        f"rearrangement_samples={model.rearrangement_samples}",
    ]
    rows = [
        [m, fmt(t), fmt(model.samples[m - 1, j])]
        for m in range(1, model.k + 1)
        for j, t in enumerate(model.theta)
    ]
    return rows_to_text(["m", "theta", "c_m"], rows, comments)


def write_model(path, model: ExpansionModel):
    atomic_write(path, model_to_csv(model))


def read_model(path) -> ExpansionModel:
    comments, rows = _read_rows(path)
    meta = dict(c.split("=", 1) for c in comments if "=" in c)
    k, n0 = int(meta["k"]), int(meta["n0"])
    samples = np.zeros((k, n0))
    for m, _theta, c in rows[1:]:
        m = int(m)
        j = int(round(float(_theta) * (n0 + 1) / np.pi)) - 1
        samples[m - 1, j] = float(c)
    return ExpansionModel(
        k=k,
        n0=n0,
        sizes=tuple(int(s) for s in meta["sizes"].split()),
        samples=samples,
        strategy=meta.get("strategy", "monotone"),
        boundary=meta.get("boundary", "zero"),
        rearrangement_samples=int(meta.get("rearrangement_samples", 8192)),
    )
