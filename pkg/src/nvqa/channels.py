"""Single-qubit Kraus noise channels and their product application.

Three channel kinds are supported, each parameterized by a strength
gamma in [0, 1]:

- ``phase``:        diag(1, sqrt(1-gamma)) and diag(0, sqrt(gamma))
- ``amplitude``:    diag(1, sqrt(1-gamma)) and sqrt(gamma) |0><1|
- ``depolarising``: sqrt(1-3g/4) I and sqrt(g/4) {X, Y, Z}

A product channel applies the same single-qubit channel to every qubit in
sequence, optionally rescaling gamma per qubit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .pauli import I2, SX, SY, SZ
from .qstate import DensityMatrix, _contract

CHANNEL_KINDS = ("phase", "amplitude", "depolarising")

_P1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class KrausChannel:
    """A single-qubit channel as an explicit list of 2x2 Kraus operators."""

    kind: str
    gamma: float
    kraus: tuple[np.ndarray, ...]

    def completeness_defect(self) -> float:
        """Max-abs deviation of sum_k E_k^dagger E_k from the identity."""
        acc = sum(e.conj().T @ e for e in self.kraus)
        return float(np.abs(acc - I2).max())


def make_channel(kind: str, gamma: float) -> KrausChannel:
    """Build a channel of the given kind and strength.

    Parameters
    ----------
    kind : {"phase", "amplitude", "depolarising"}
    gamma : float
        Strength in [0, 1]. gamma = 0 is the identity channel.
    """
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}, expected one of {CHANNEL_KINDS}")
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    s = np.sqrt(1.0 - gamma)
    if kind == "phase":
        kraus = (np.diag([1.0, s]).astype(complex), np.sqrt(gamma) * _P1)
    elif kind == "amplitude":
        kraus = (np.diag([1.0, s]).astype(complex), np.sqrt(gamma) * _LOWER)
    else:
        kraus = (
            np.sqrt(1.0 - 0.75 * gamma) * I2,
            np.sqrt(0.25 * gamma) * SX,
            np.sqrt(0.25 * gamma) * SY,
            np.sqrt(0.25 * gamma) * SZ,
        )
    return KrausChannel(kind, gamma, kraus)


def channel_superop(kind: str, gamma: float) -> np.ndarray:
    """4x4 superoperator of a single-qubit channel on vectorized 2x2 states.

    The matrix acts on row-major vec(rho) and equals sum_k E_k (x) conj(E_k)
    for gamma in [0, 1]. Unlike the Kraus form it is analytic in gamma and is
    accepted for gamma in (-1, 1], which central finite differences around
    gamma = 0 rely on.
    """
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}, expected one of {CHANNEL_KINDS}")
    gamma = float(gamma)
    if not -1.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (-1, 1], got {gamma}")
    if kind == "depolarising":
        s = np.kron(SX, SX.conj()) + np.kron(SY, SY.conj()) + np.kron(SZ, SZ.conj())
        return (1.0 - 0.75 * gamma) * np.eye(4, dtype=complex) + 0.25 * gamma * s
    d = np.diag([1.0, np.sqrt(1.0 - gamma)]).astype(complex)
    base = np.kron(d, d.conj())
    jump = _P1 if kind == "phase" else _LOWER
    return base + gamma * np.kron(jump, jump.conj())


def _superop_from_kraus(kraus) -> np.ndarray:
    return sum(np.kron(e, e.conj()) for e in kraus)


def _apply_superop_raw(data: np.ndarray, sup: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Apply a 4x4 single-qubit superoperator to raw (dim, dim) data."""
    t = data.reshape((2,) * (2 * n))
    t = _contract(t, sup, (qubit, n + qubit))
    return t.reshape(data.shape)


def apply_channel_one_qubit(rho: DensityMatrix, ch: KrausChannel, qubit: int) -> DensityMatrix:
    """sum_k E_k rho E_k^dagger with the channel acting on one qubit."""
    if not 0 <= qubit < rho.n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {rho.n_qubits} qubits")
    sup = _superop_from_kraus(ch.kraus)
    return DensityMatrix(rho.n_qubits, _apply_superop_raw(rho.data, sup, qubit, rho.n_qubits))


@dataclass(frozen=True)
class NoiseSpec:
    """A product channel: one channel kind applied to every qubit.

    per_qubit_scale rescales gamma qubit by qubit (entries in [0, 1]), so a
    scale of 0 switches noise off on that qubit.
    """

    channel: KrausChannel
    per_qubit_scale: tuple[float, ...]

    def __post_init__(self):
        scales = tuple(float(s) for s in self.per_qubit_scale)
        if any(not 0.0 <= s <= 1.0 for s in scales):
            raise ValueError(f"per-qubit scales must lie in [0, 1], got {scales}")
        object.__setattr__(self, "per_qubit_scale", scales)

    @classmethod
    def uniform(cls, kind: str, gamma: float, n_qubits: int) -> "NoiseSpec":
        return cls(make_channel(kind, gamma), (1.0,) * n_qubits)

    @property
    def n_qubits(self) -> int:
        return len(self.per_qubit_scale)

    @property
    def is_trivial(self) -> bool:
        return self.channel.gamma == 0.0 or all(s == 0.0 for s in self.per_qubit_scale)

    @cached_property
    def _superops(self) -> tuple[tuple[int, np.ndarray], ...]:
        out = []
        for q, scale in enumerate(self.per_qubit_scale):
            g = self.channel.gamma * scale
            if g != 0.0:
                out.append((q, channel_superop(self.channel.kind, g)))
        return tuple(out)


def apply_product_channel(rho: DensityMatrix, spec: NoiseSpec) -> DensityMatrix:
    """Apply the product channel qubit by qubit with per-qubit scaled gamma."""
    if spec.n_qubits != rho.n_qubits:
        raise ValueError(
            f"noise spec covers {spec.n_qubits} qubits, state has {rho.n_qubits}"
        )
    data = rho.data
    for q, sup in spec._superops:
        data = _apply_superop_raw(data, sup, q, rho.n_qubits)
    return DensityMatrix(rho.n_qubits, data)


def ptm_from_channel(ch: KrausChannel) -> np.ndarray:
    """Pauli transfer matrix R_ij = Tr[sigma_i Lambda(sigma_j)] / 2 (4x4 real)."""
    paulis = (I2, SX, SY, SZ)
    r = np.empty((4, 4), dtype=float)
    for j, pj in enumerate(paulis):
        image = sum(e @ pj @ e.conj().T for e in ch.kraus)
        for i, pi in enumerate(paulis):
            val = 0.5 * np.trace(pi @ image)
            if abs(val.imag) > 1e-12:
                raise ValueError("PTM entry has imaginary residue")
            r[i, j] = val.real
    return r
