"""Log-log least squares for decay exponents."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import stats

MIN_SAMPLES = 8


@dataclass(frozen=True)
class DecayFit:
    slope: float
    stderr: float
    intercept: float
    samples: int
    window: Tuple[float, float]


def fit_decay_exponent(samples, window=(0.0, np.inf)) -> DecayFit:
    """Slope of ``log(value)`` against ``log(1 + t)`` over ``t`` in ``window``."""
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("samples must be a sequence of (t, value) pairs")
    lo, hi = window
    sel = data[(data[:, 0] >= lo) & (data[:, 0] <= hi)]
    if len(sel) < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples in window {window}, got {len(sel)}")
    if np.any(sel[:, 1] <= 0):
        raise ValueError("values must be positive for a log-log fit")
    res = stats.linregress(np.log1p(sel[:, 0]), np.log(sel[:, 1]))
    return DecayFit(float(res.slope), float(res.stderr), float(res.intercept), len(sel),
                    (float(sel[0, 0]), float(sel[-1, 0])))
