"""Parameterized Ry/CX circuits with explicit noise insertion points.

A circuit is a flat list of operations: Ry rotations referencing a parameter
slot, CX gates, and NOISE markers. Evaluating a circuit applies the product
noise channel at every marker; with no noise the evaluation runs on a
statevector and only forms the density matrix at the end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from .channels import NoiseSpec, _apply_superop_raw
from .qstate import DensityMatrix, MAX_QUBITS, _apply_vec, _conjugate_raw


@dataclass(frozen=True)
class Ry:
    param_index: int
    qubit: int


@dataclass(frozen=True)
class Cx:
    control: int
    target: int


@dataclass(frozen=True)
class NoiseMark:
    pass


NOISE = NoiseMark()

CircuitOp = Union[Ry, Cx, NoiseMark]

CX_MATRIX = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)


def ry_matrix(theta: float) -> np.ndarray:
    """Rotation about Y: [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]."""
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class Circuit:
    """An n-qubit op list over n_params parameter slots.

    Every parameter slot must be used by exactly one Ry gate, so circuits and
    parameter vectors stay in one-to-one correspondence.
    """

    n_qubits: int
    ops: tuple[CircuitOp, ...]
    n_params: int

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        object.__setattr__(self, "ops", tuple(self.ops))
        seen = []
        for op in self.ops:
            if isinstance(op, Ry):
                if not 0 <= op.qubit < self.n_qubits:
                    raise ValueError(f"Ry qubit {op.qubit} out of range")
                if not 0 <= op.param_index < self.n_params:
                    raise ValueError(f"parameter index {op.param_index} out of range")
                seen.append(op.param_index)
            elif isinstance(op, Cx):
                if op.control == op.target:
                    raise ValueError("CX control and target must differ")
                if not (0 <= op.control < self.n_qubits and 0 <= op.target < self.n_qubits):
                    raise ValueError(f"CX qubits ({op.control}, {op.target}) out of range")
            elif not isinstance(op, NoiseMark):
                raise TypeError(f"unsupported op {op!r}")
        if sorted(seen) != list(range(self.n_params)):
            raise ValueError("each parameter slot must be used by exactly one Ry gate")

    @property
    def noise_mark_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, NoiseMark))


def build_2q_circuit(variant: str) -> Circuit:
    """Two-qubit ansatz: Ry pair, CX(0->1), noise point, final Ry layer.

    Variant "a" rotates qubit 1 after the CX, "b" rotates qubit 0, and "c"
    rotates both (four parameters in total).
    """
    head = (Ry(0, 0), Ry(1, 1), Cx(0, 1), NOISE)
    if variant == "a":
        return Circuit(2, head + (Ry(2, 1),), 3)
    if variant == "b":
        return Circuit(2, head + (Ry(2, 0),), 3)
    if variant == "c":
        return Circuit(2, head + (Ry(2, 0), Ry(3, 1)), 4)
    raise ValueError(f"unknown variant {variant!r}, expected 'a', 'b' or 'c'")


def build_hea(layers: int, n_qubits: int = 4) -> Circuit:
    """Hardware-efficient ansatz on four qubits.

    Each layer is an Ry on every qubit, the parallel pair CX(0->1), CX(2->3)
    followed by a noise point, then CX(1->2) followed by a second noise
    point. L layers use 4L parameters and 2L noise points.
    """
    if n_qubits != 4:
        raise ValueError("the hardware-efficient ansatz is defined on 4 qubits")
    if layers < 1:
        raise ValueError("layers must be >= 1")
    ops: list[CircuitOp] = []
    for l in range(layers):
        ops += [Ry(4 * l + q, q) for q in range(4)]
        ops += [Cx(0, 1), Cx(2, 3), NOISE, Cx(1, 2), NOISE]
    return Circuit(4, tuple(ops), 4 * layers)


def build_4q_vqe() -> Circuit:
    """Four-qubit ansatz used for the 4-qubit Hamiltonian: three entangling
    layers with a noise point after every CX (12 parameters, 9 noise points).

    Two such layers cannot represent the ground state of the benchmark
    Hamiltonian; three reach the exact -sqrt(5) ground energy at zero noise,
    which the acceptance suite checks.
    """
    ops: list[CircuitOp] = []
    for l in range(3):
        ops += [Ry(4 * l + q, q) for q in range(4)]
        ops += [Cx(0, 1), NOISE, Cx(2, 3), NOISE, Cx(1, 2), NOISE]
    return Circuit(4, tuple(ops), 12)


def build_valley_demo() -> Circuit:
    """Single qubit, Ry(theta0), noise point, Ry(theta1).

    At zero noise the cost Tr[rho |0><0|] has a flat valley along
    theta0 + theta1 = pi; noise in the middle breaks the valley into
    isolated minima.
    """
    return Circuit(1, (Ry(0, 0), NOISE, Ry(1, 0)), 2)


def evaluate_pure(circuit: Circuit, params: np.ndarray) -> np.ndarray:
    """Statevector after the circuit (noise marks ignored), length 2^n."""
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValueError(f"expected {circuit.n_params} parameters, got shape {params.shape}")
    psi = np.zeros(2 ** circuit.n_qubits, dtype=complex)
    psi[0] = 1.0
    n = circuit.n_qubits
    for op in circuit.ops:
        if isinstance(op, Ry):
            psi = _apply_vec(psi, ry_matrix(params[op.param_index]), (op.qubit,), n)
        elif isinstance(op, Cx):
            psi = _apply_vec(psi, CX_MATRIX, (op.control, op.target), n)
    return psi


def _evaluate_raw(circuit: Circuit, params: np.ndarray, noise: NoiseSpec) -> np.ndarray:
    n = circuit.n_qubits
    dim = 2 ** n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    sups = noise._superops
    for op in circuit.ops:
        if isinstance(op, Ry):
            rho = _conjugate_raw(rho, ry_matrix(params[op.param_index]), (op.qubit,), n)
        elif isinstance(op, Cx):
            rho = _conjugate_raw(rho, CX_MATRIX, (op.control, op.target), n)
        else:
            for q, sup in sups:
                rho = _apply_superop_raw(rho, sup, q, n)
    return 0.5 * (rho + rho.conj().T)


def evaluate(circuit: Circuit, params: np.ndarray, noise: NoiseSpec | None = None) -> DensityMatrix:
    """Run the circuit on |0...0> and return the output state.

    Parameters
    ----------
    circuit : Circuit
    params : array of shape (n_params,)
    noise : NoiseSpec or None
        Product channel applied at every NOISE mark. None, or a spec of
        strength zero, evaluates the circuit noiselessly.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (circuit.n_params,):
        raise ValueError(f"expected {circuit.n_params} parameters, got shape {params.shape}")
    if noise is not None and noise.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"noise spec covers {noise.n_qubits} qubits, circuit has {circuit.n_qubits}"
        )
    if noise is None or noise.is_trivial:
        psi = evaluate_pure(circuit, params)
        return DensityMatrix(circuit.n_qubits, np.outer(psi, psi.conj()))
    return DensityMatrix(circuit.n_qubits, _evaluate_raw(circuit, params, noise))


def _cx_permutation(circuit: Circuit, op: Cx) -> np.ndarray:
    """Basis permutation of a CX: flips the target bit where control is 1."""
    n = circuit.n_qubits
    idx = np.arange(2 ** n)
    cbit = (idx >> (n - 1 - op.control)) & 1
    perm = np.where(cbit == 1, idx ^ (1 << (n - 1 - op.target)), idx)
    return perm


def _ry_batch(thetas: np.ndarray) -> np.ndarray:
    """Stack of Ry matrices, shape (m, 2, 2), for a vector of angles."""
    c, s = np.cos(0.5 * thetas), np.sin(0.5 * thetas)
    out = np.empty((thetas.size, 2, 2), dtype=complex)
    out[:, 0, 0] = c
    out[:, 0, 1] = -s
    out[:, 1, 0] = s
    out[:, 1, 1] = c
    return out


def evaluate_pure_batch(circuit: Circuit, params: np.ndarray) -> np.ndarray:
    """Statevectors for a batch of parameter vectors, shape (m, 2^n)."""
    params = np.asarray(params, dtype=float)
    if params.ndim != 2 or params.shape[1] != circuit.n_params:
        raise ValueError(f"expected shape (m, {circuit.n_params}), got {params.shape}")
    m = params.shape[0]
    n = circuit.n_qubits
    dim = 2 ** n
    psi = np.zeros((m, dim), dtype=complex)
    psi[:, 0] = 1.0
    for op in circuit.ops:
        if isinstance(op, Ry):
            mats = _ry_batch(params[:, op.param_index])
            a = 2 ** op.qubit
            b = dim // (2 * a)
            t = psi.reshape(m, a, 2, b)
            psi = np.einsum("mij,majb->maib", mats, t).reshape(m, dim)
        elif isinstance(op, Cx):
            psi = psi[:, _cx_permutation(circuit, op)]
    return psi


def _evaluate_raw_batch(circuit: Circuit, params: np.ndarray, noise: NoiseSpec) -> np.ndarray:
    """Density matrices for a batch of parameter vectors, shape (m, 2^n, 2^n)."""
    params = np.asarray(params, dtype=float)
    m = params.shape[0]
    n = circuit.n_qubits
    dim = 2 ** n
    rho = np.zeros((m, dim, dim), dtype=complex)
    rho[:, 0, 0] = 1.0
    sups = noise._superops
    for op in circuit.ops:
        if isinstance(op, Ry):
            mats = _ry_batch(params[:, op.param_index])
            a = 2 ** op.qubit
            b = dim // (2 * a)
            t = rho.reshape(m, a, 2, b * dim)
            t = np.einsum("mij,majb->maib", mats, t)
            t = t.reshape(m, dim, a, 2, b)
            rho = np.einsum("mij,mcajb->mcaib", mats.conj(), t).reshape(m, dim, dim)
        elif isinstance(op, Cx):
            perm = _cx_permutation(circuit, op)
            rho = rho[:, perm[:, None], perm[None, :]]
        else:
            for q, sup in sups:
                a = 2 ** q
                b = dim // (2 * a)
                s4 = sup.reshape(2, 2, 2, 2)
                t = rho.reshape(m, a, 2, b, a, 2, b)
                t = np.einsum("ijkl,makbcld->maibcjd", s4, t)
                rho = t.reshape(m, dim, dim)
    return rho


def circuit_to_dict(circuit: Circuit) -> dict:
    ops = []
    for op in circuit.ops:
        if isinstance(op, Ry):
            ops.append({"ry": {"p": op.param_index, "q": op.qubit}})
        elif isinstance(op, Cx):
            ops.append({"cx": {"c": op.control, "t": op.target}})
        else:
            ops.append("noise")
    return {"n_qubits": circuit.n_qubits, "ops": ops, "n_params": circuit.n_params}


def circuit_from_dict(d: dict) -> Circuit:
    ops: list[CircuitOp] = []
    for entry in d["ops"]:
        if entry == "noise":
            ops.append(NOISE)
        elif "ry" in entry:
            ops.append(Ry(entry["ry"]["p"], entry["ry"]["q"]))
        elif "cx" in entry:
            ops.append(Cx(entry["cx"]["c"], entry["cx"]["t"]))
        else:
            raise ValueError(f"unknown op entry {entry!r}")
    return Circuit(d["n_qubits"], tuple(ops), d["n_params"])


def circuit_to_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), separators=(",", ":"))


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))
