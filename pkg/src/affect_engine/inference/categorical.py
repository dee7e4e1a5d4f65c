"""Categorical distributions as plain 1-D numpy arrays.

Every belief, likelihood column and predictive distribution in the package
is a float64 vector that is non-negative and sums to one. The helpers here
validate, build and compare such vectors.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from affect_engine.errors import DegenerateDistributionError, InvalidInputError

LOG_FLOOR = 1e-16
SUM_TOL = 1e-9


def safe_log(x) -> np.ndarray:
    """Natural log with probabilities floored at ``LOG_FLOOR``."""
    return np.log(np.maximum(np.asarray(x, dtype=float), LOG_FLOOR))


def as_categorical(probs: Sequence[float] | np.ndarray, name: str = "distribution") -> np.ndarray:
    """Return ``probs`` as a float array after checking the simplex invariants."""
    arr = np.array(probs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"{name} must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise InvalidInputError(f"{name} has negative entries")
    total = arr.sum()
    if abs(total - 1.0) > SUM_TOL:
        raise InvalidInputError(f"{name} sums to {total!r}, not 1")
    return arr


def is_categorical(probs, tol: float = SUM_TOL) -> bool:
    arr = np.asarray(probs, dtype=float)
    return (
        arr.ndim == 1
        and arr.size > 0
        and bool(np.all(np.isfinite(arr)))
        and bool(np.all(arr >= 0))
        and abs(arr.sum() - 1.0) <= tol
    )


def normalize(weights: Sequence[float] | np.ndarray) -> np.ndarray:
    """Scale non-negative weights so they sum to one.

    Raises DegenerateDistributionError for negative or all-zero input.
    """
    w = np.array(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DegenerateDistributionError(f"expected a non-empty 1-D vector, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise DegenerateDistributionError("weights must be finite and non-negative")
    total = w.sum()
    if total <= 0:
        raise DegenerateDistributionError("weights sum to zero")
    return w / total


def softmax(values: Sequence[float] | np.ndarray, precision: float = 1.0) -> np.ndarray:
    """``exp(precision * v) / sum(exp(precision * v))`` with max-subtraction."""
    v = np.array(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InvalidInputError("softmax needs a non-empty 1-D vector")
    if np.any(np.isnan(v)) or not np.isfinite(precision):
        raise InvalidInputError("softmax input contains NaN")
    if precision <= 0:
        raise InvalidInputError(f"precision must be positive, got {precision}")
    z = precision * v
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def onehot(index: int, size: int) -> np.ndarray:
    if not 0 <= index < size:
        raise InvalidInputError(f"index {index} out of range for size {size}")
    out = np.zeros(size)
    out[index] = 1.0
    return out


def uniform(size: int) -> np.ndarray:
    return np.full(size, 1.0 / size)


def entropy(probs) -> float:
    """Shannon entropy in nats; zero-probability entries contribute nothing."""
    p = np.asarray(probs, dtype=float)
    nz = p > 0
    return float(-np.sum(p[nz] * np.log(p[nz])))


def kl_divergence(q, p) -> float:
    """KL[q || p] in nats, summed over the support of ``q``."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if q.shape != p.shape:
        raise InvalidInputError(f"shape mismatch {q.shape} vs {p.shape}")
    nz = q > 0
    return float(np.sum(q[nz] * (np.log(q[nz]) - safe_log(p[nz]))))
