"""Noise schedule and forward diffusion.

``alpha_bar[t]`` is the cumulative signal fraction at timestep t, with
``alpha_bar[0] == 1`` (no noise) falling strictly below 0.01 by t == T.
The forward marginal is

    z_t = sqrt(alpha_bar[t]) * z_0 + sqrt(1 - alpha_bar[t]) * eps,

and the deterministic generation step from t to t-1 is

    z_{t-1} = sqrt(alpha_bar[t-1] / alpha_bar[t]) * z_t - gamma_t * eps_hat,

where gamma_t makes the step exact when eps_hat equals the true noise:
gamma_t = sqrt(alpha_bar[t-1] * (1 - alpha_bar[t]) / alpha_bar[t])
        - sqrt(1 - alpha_bar[t-1]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_ALPHA_FLOOR = 1e-4


def gamma_coeff(alpha_prev: float, alpha_cur: float) -> float:
    """Deterministic-sampler noise coefficient for a step alpha_cur -> alpha_prev."""
    return math.sqrt(alpha_prev * (1.0 - alpha_cur) / alpha_cur) - math.sqrt(
        1.0 - alpha_prev
    )


@dataclass(frozen=True)
class NoiseSchedule:
    """Cumulative schedule: T, alpha_bar[0..T], and per-step gamma[1..T]."""

    T: int
    alpha_bar: np.ndarray  # (T+1,) float64
    gamma: np.ndarray  # (T+1,) float64; gamma[0] unused

    def __post_init__(self):
        ab = np.asarray(self.alpha_bar, dtype=np.float64)
        if ab.shape != (self.T + 1,):
            raise ValueError(f"alpha_bar must have T+1 entries, got {ab.shape}")
        if ab[0] != 1.0:
            raise ValueError("alpha_bar[0] must be exactly 1")
        if not np.all(np.diff(ab) < 0):
            raise ValueError("alpha_bar must be strictly decreasing")
        if not ab[-1] < 0.01:
            raise ValueError(f"alpha_bar[T] must be below 0.01, got {ab[-1]}")
        if not np.all(np.isfinite(self.gamma[1:])):
            raise ValueError("gamma must be finite for 1 <= t <= T")
        object.__setattr__(self, "alpha_bar", ab)


def build_schedule(T: int, kind: str = "cosine") -> NoiseSchedule:
    """Build a schedule of ``T`` steps.

    ``cosine`` follows the squared-cosine profile clipped to [1e-4, 1];
    ``linear`` uses linearly increasing per-step betas scaled to T.
    """
    if T < 10:
        raise ValueError(f"T must be at least 10, got {T}")
    if kind == "cosine":
        s = 0.008
        u = np.arange(T + 1, dtype=np.float64) / T
        f = np.cos((u + s) / (1.0 + s) * math.pi / 2.0) ** 2
        alpha_bar = np.clip(f / f[0], _ALPHA_FLOOR, 1.0)
    elif kind == "linear":
        betas = np.linspace(1e-4, 0.02, T) * (1000.0 / T)
        betas = np.minimum(betas, 0.999)
        alpha_bar = np.concatenate([[1.0], np.cumprod(1.0 - betas)])
        alpha_bar = np.clip(alpha_bar, _ALPHA_FLOOR, 1.0)
    else:
        raise ValueError(f"unknown schedule kind {kind!r}")
    # The clip floor can flatten the tail; restore strict decrease there.
    for t in range(T - 1, 0, -1):
        if alpha_bar[t] <= alpha_bar[t + 1]:
            alpha_bar[t] = alpha_bar[t + 1] * (1.0 + 1e-9)
    alpha_bar[0] = 1.0
    gamma = np.zeros(T + 1, dtype=np.float64)
    for t in range(1, T + 1):
        gamma[t] = gamma_coeff(alpha_bar[t - 1], alpha_bar[t])
    return NoiseSchedule(T=T, alpha_bar=alpha_bar, gamma=gamma)


def forward_diffuse(
    z0: np.ndarray, t: int, eps: np.ndarray, schedule: NoiseSchedule
) -> np.ndarray:
    """Closed-form forward marginal at timestep ``t``; t == 0 is the identity."""
    if not 0 <= t <= schedule.T:
        raise ValueError(f"t must be in [0, {schedule.T}], got {t}")
    z0 = np.asarray(z0, dtype=np.float32)
    eps = np.asarray(eps, dtype=np.float32)
    if z0.shape != eps.shape:
        raise ValueError(f"shape mismatch: z0 {z0.shape} vs eps {eps.shape}")
    a = schedule.alpha_bar[t]
    return np.float32(math.sqrt(a)) * z0 + np.float32(math.sqrt(1.0 - a)) * eps


def forward_diffuse_batch(
    z0: np.ndarray, t: np.ndarray, eps: np.ndarray, schedule: NoiseSchedule
) -> np.ndarray:
    """Vectorized forward marginal with a per-sample timestep vector."""
    a = schedule.alpha_bar[np.asarray(t, dtype=np.int64)]
    extra = (1,) * (z0.ndim - 1)
    sa = np.sqrt(a).astype(np.float32).reshape(-1, *extra)
    sn = np.sqrt(1.0 - a).astype(np.float32).reshape(-1, *extra)
    return sa * z0 + sn * eps
