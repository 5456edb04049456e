"""Deterministic numeric substrate: Gaussian sampling, distances, PSNR.

Arrays are row-major float32 numpy tensors; reductions accumulate in
float64 so that long sums (norms over thousands of entries) do not drift.
All functions are pure given their inputs plus explicit RNG state.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .rng import RngStream


def sample_standard_normal(rng: RngStream, shape: Sequence[int]) -> np.ndarray:
    """Sample i.i.d. standard-normal entries into a float32 tensor.

    Deterministic for a fixed stream state; a fresh stream with the same
    (seed, stream) pair reproduces the tensor bitwise.
    """
    dims = tuple(int(d) for d in shape)
    if len(dims) == 0 or any(d <= 0 for d in dims):
        raise ValueError(f"shape must be non-empty with positive dims, got {dims}")
    return rng.standard_normal(dims, dtype=np.float32)


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 minus cosine similarity, in [0, 2]. Zero-norm inputs are a domain error."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_same_shape(a, b)
    av = a.ravel().astype(np.float64)
    bv = b.ravel().astype(np.float64)
    na = float(np.linalg.norm(av))
    nb = float(np.linalg.norm(bv))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine distance is undefined for zero-norm input")
    return float(1.0 - np.dot(av, bv) / (na * nb))


def euclidean_distance(a: np.ndarray, b: np.ndarray) -> float:
    """L2 distance between same-shape tensors."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_same_shape(a, b)
    diff = a.ravel().astype(np.float64) - b.ravel().astype(np.float64)
    return float(np.linalg.norm(diff))


def psnr(reference: np.ndarray, candidate: np.ndarray, peak: float = 1.0) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` when the images match.

    ``peak`` is 1.0 for all images in this package, which live in [0, 1].
    """
    reference = np.asarray(reference)
    candidate = np.asarray(candidate)
    _check_same_shape(reference, candidate)
    if not peak > 0:
        raise ValueError(f"peak must be positive, got {peak}")
    diff = reference.astype(np.float64) - candidate.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return float(10.0 * math.log10(peak * peak / mse))
