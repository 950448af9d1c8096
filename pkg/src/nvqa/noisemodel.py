"""Stochastic model of noise-induced infidelity.

For weak product noise acting d times in a circuit, the relative infidelity
of a non-reoptimized optimum grows linearly: its ensemble mean is
alpha * gamma * d and its spread is sqrt(beta) * gamma * d, where alpha and
beta are the mean and variance over targets rho_T of

    -d/dgamma Tr[rho_T Lambda_gamma(rho_T)]   at gamma = 0.

The derivative is taken by central differences, which needs the channel
superoperator slightly below gamma = 0; channel_superop provides that
analytic extension. Global depolarising noise admits the exact closed form
(1 - (1-gamma)^d) (1 - 2^-N) regardless of the circuit.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channels import CHANNEL_KINDS, channel_superop, _apply_superop_raw
from .qstate import DensityMatrix
from .randstates import RngStream, _as_generator, sample_product_state, sample_real_haar_state


@dataclass(frozen=True)
class ModelParams:
    """Monte Carlo estimate of the linear-response coefficients."""

    kind: str
    n_qubits: int
    alpha: float
    beta: float
    stderr_alpha: float
    stderr_beta: float
    n_samples: int


def global_depol_infidelity(gamma: float, d: int, n_qubits: int,
                            first_order: bool = False) -> float:
    """Infidelity after d rounds of global depolarising noise.

    Exact: (1 - (1-gamma)^d) (1 - 2^-n). With first_order=True the
    linearization (1 - 2^-n) d gamma is returned instead.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    if d < 0:
        raise ValueError("d must be >= 0")
    scale = 1.0 - 2.0 ** (-n_qubits)
    if first_order:
        return scale * d * gamma
    return (1.0 - (1.0 - gamma) ** d) * scale


def apply_global_depol(rho: DensityMatrix, gamma: float) -> DensityMatrix:
    """(1-gamma) rho + gamma I / 2^n."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    dim = rho.dim
    data = (1.0 - gamma) * rho.data + gamma / dim * np.eye(dim)
    return DensityMatrix(rho.n_qubits, data)


def _product_overlap(rho: DensityMatrix, kind: str, gamma: float) -> float:
    """Tr[rho Lambda_gamma(rho)] with the single-qubit channel on every qubit."""
    sup = channel_superop(kind, gamma)
    data = rho.data
    for q in range(rho.n_qubits):
        data = _apply_superop_raw(data, sup, q, rho.n_qubits)
    return float(np.einsum("ij,ji->", rho.data, data).real)


def linear_action_overlap_derivative(kind: str, rho_t: DensityMatrix,
                                     eps: float = 1e-5) -> float:
    """Central-difference d/dgamma Tr[rho_T Lambda_gamma(rho_T)] at gamma = 0."""
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}")
    hi = _product_overlap(rho_t, kind, eps)
    lo = _product_overlap(rho_t, kind, -eps)
    return (hi - lo) / (2.0 * eps)


def estimate_alpha_beta(kind: str, n_qubits: int, n_samples: int, rng,
                        sampler=None) -> ModelParams:
    """Monte Carlo alpha and beta over an ensemble of target states.

    Parameters
    ----------
    kind : channel kind
    n_qubits : int
    n_samples : int
    rng : RngStream or numpy Generator
    sampler : callable (n_qubits, generator) -> DensityMatrix, optional
        Defaults to real-amplitude Haar states.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    gen = _as_generator(rng)
    draw = sampler or sample_real_haar_state
    derivs = np.empty(n_samples)
    for i in range(n_samples):
        rho = draw(n_qubits, gen)
        derivs[i] = -linear_action_overlap_derivative(kind, rho)
    alpha = float(derivs.mean())
    beta = float(derivs.var(ddof=1))
    centered = derivs - alpha
    m4 = float((centered ** 4).mean())
    stderr_alpha = float(np.sqrt(beta / n_samples))
    stderr_beta = float(np.sqrt(max(m4 - beta ** 2, 0.0) / n_samples))
    return ModelParams(kind, n_qubits, alpha, beta, stderr_alpha, stderr_beta, n_samples)


def predict(params: ModelParams, gamma: float, d: int) -> tuple[float, float]:
    """(mean, spread) of the predicted relative infidelity alpha*gamma*d.

    Valid in the weak-noise regime; a warning is raised when the predicted
    mean leaves it.
    """
    mean = params.alpha * gamma * d
    spread = float(np.sqrt(max(params.beta, 0.0)) * gamma * d)
    if mean > 0.5:
        warnings.warn(
            f"predicted mean infidelity {mean:.3g} is outside the linear regime",
            RuntimeWarning,
        )
    return mean, spread


def slope_through_origin(x, y) -> float:
    """Least-squares slope of y = s*x (no intercept)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    denom = float(x @ x)
    if denom == 0.0:
        raise ValueError("need a nonzero abscissa")
    return float(x @ y / denom)


def alpha_scaling_check(kind: str, qubit_counts, n_samples: int, seed: int = 0):
    """alpha estimated on product-state ensembles for several qubit counts.

    On product states alpha grows linearly with the qubit count, which makes
    the model's prediction cheap to extrapolate.
    """
    out = []
    for i, n in enumerate(qubit_counts):
        rng = RngStream(seed, stream_id=i)
        params = estimate_alpha_beta(kind, n, n_samples, rng, sampler=sample_product_state)
        out.append((int(n), params.alpha))
    return out
