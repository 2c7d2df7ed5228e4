"""Gaussian-process regression over fingerprint Jaccard distance.

Matern nu=5/2 kernel with fixed hyperparameters: length scale 0.5, signal
variance = the sample variance of the observed objectives (floored), noise
variance 1e-6. No hyperparameter fitting; determinism over marginal
likelihood at this scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from drugdesk.molgraph import Fingerprint, tanimoto

LENGTH_SCALE = 0.5
NOISE_VAR = 1e-6
MAX_JITTER = 1e-4
SIGNAL_VAR_FLOOR = 1e-3


class DuplicateInput(ValueError):
    pass


class SingularKernel(RuntimeError):
    pass


@dataclass(frozen=True)
class Observation:
    canonical: str
    fingerprint: Fingerprint
    objective: float

    def __post_init__(self):
        if not math.isfinite(self.objective):
            raise ValueError(f"objective must be finite, got {self.objective}")


def matern52(dist: np.ndarray, signal_var: float, length_scale: float = LENGTH_SCALE) -> np.ndarray:
    s = math.sqrt(5.0) * dist / length_scale
    return signal_var * (1.0 + s + s * s / 3.0) * np.exp(-s)


def _distance_matrix(a: Sequence[Fingerprint], b: Sequence[Fingerprint]) -> np.ndarray:
    out = np.empty((len(a), len(b)))
    for i, fa in enumerate(a):
        for j, fb in enumerate(b):
            out[i, j] = 1.0 - tanimoto(fa, fb)
    return out


@dataclass(frozen=True)
class GpModel:
    observations: tuple[Observation, ...]
    prior_mean: float
    signal_var: float
    chol: np.ndarray
    alpha: np.ndarray

    def predict(self, fingerprints: Sequence[Fingerprint]) -> tuple[np.ndarray, np.ndarray]:
        """Posterior mean and variance of the latent objective."""
        train = [o.fingerprint for o in self.observations]
        k_star = matern52(_distance_matrix(train, fingerprints), self.signal_var)
        mean = self.prior_mean + k_star.T @ self.alpha
        v = np.linalg.solve(self.chol, k_star)
        var = np.maximum(self.signal_var - np.sum(v * v, axis=0), 0.0)
        return mean, var


def gp_fit(observations: Sequence[Observation]) -> GpModel:
    obs = tuple(observations)
    if not obs:
        raise ValueError("at least one observation is required")
    seen = set()
    for o in obs:
        if o.canonical in seen:
            raise DuplicateInput(f"duplicate observation for {o.canonical!r}")
        seen.add(o.canonical)

    y = np.array([o.objective for o in obs])
    prior_mean = float(y.mean())
    signal_var = max(float(y.var()), SIGNAL_VAR_FLOOR)
    fps = [o.fingerprint for o in obs]
    k = matern52(_distance_matrix(fps, fps), signal_var)

    jitter = NOISE_VAR
    while True:
        try:
            chol = np.linalg.cholesky(k + jitter * np.eye(len(obs)))
            break
        except np.linalg.LinAlgError:
            jitter *= 10.0
            if jitter > MAX_JITTER:
                raise SingularKernel(
                    f"kernel matrix stayed non-positive-definite up to jitter {MAX_JITTER}"
                ) from None
    alpha = np.linalg.solve(chol.T, np.linalg.solve(chol, y - prior_mean))
    return GpModel(obs, prior_mean, signal_var, chol, alpha)
