"""Field serialisation.

Binary layout (all little-endian)::

    int64  n        dimension
    int64  N        points per dimension
    float64 L       half width of [-L, L)^n
    float64 * N^n   samples, row-major (last axis fastest)

CSV layout: header ``x1,...,xn,value`` then one row per grid point in the
same row-major order; only for grids of at most ``CSV_MAX_POINTS`` points.
"""
import csv
import struct

import numpy as np

from .grid import GridSpec, RealField

_HEADER = struct.Struct("<qqd")
CSV_MAX_POINTS = 1 << 20


def save_binary(field: RealField, path) -> None:
    g = field.grid
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(g.n, g.N, g.L))
        fh.write(np.ascontiguousarray(field.samples, dtype="<f8").tobytes())


def load_binary(path) -> RealField:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    n, N, L = _HEADER.unpack_from(raw)
    grid = GridSpec(int(n), int(N), float(L))
    payload = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if payload.size != N**n:
        raise ValueError(f"{path}: expected {N ** n} samples, found {payload.size}")
    return RealField(grid, payload.astype(float).reshape(grid.shape))


def save_csv(field: RealField, path) -> None:
    g = field.grid
    if g.N**g.n > CSV_MAX_POINTS:
        raise ValueError(f"grid has {g.N ** g.n} points; CSV export is limited to {CSV_MAX_POINTS}")
    axes = np.meshgrid(*([g.axis()] * g.n), indexing="ij")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{k + 1}" for k in range(g.n)] + ["value"])
        cols = [a.ravel() for a in axes] + [field.samples.ravel()]
        for row in zip(*cols):
            w.writerow([repr(float(v)) for v in row])


def load_csv(path) -> RealField:
    """Inverse of :func:`save_csv`; the grid is recovered from the first axis."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    n = data.shape[1] - 1
    N = round(data.shape[0] ** (1.0 / n))
    if N**n != data.shape[0]:
        raise ValueError(f"{path}: {data.shape[0]} rows is not a full {n}-d grid")
    x = data[:, n - 1][:N]
    L = -float(x[0])
    grid = GridSpec(n, N, L)
    if not np.allclose(x, grid.axis(), rtol=0, atol=1e-9 * L):
        raise ValueError(f"{path}: coordinates do not form the grid [-L, L)")
    return RealField(grid, data[:, n].reshape(grid.shape))
