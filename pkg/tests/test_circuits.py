"""Circuit construction, evaluation paths and serialization."""

import numpy as np
import pytest

from nvqa.channels import NoiseSpec
from nvqa.circuits import (
    CX_MATRIX,
    Circuit,
    Cx,
    NOISE,
    NoiseMark,
    Ry,
    build_2q_circuit,
    build_4q_vqe,
    build_hea,
    build_valley_demo,
    circuit_from_dict,
    circuit_from_json,
    circuit_to_dict,
    circuit_to_json,
    evaluate,
    evaluate_pure,
    evaluate_pure_batch,
    ry_matrix,
    _evaluate_raw,
    _evaluate_raw_batch,
)
from nvqa.qstate import DensityMatrix


def dense_unitary(circuit: Circuit, params: np.ndarray) -> np.ndarray:
    """Multiply out the full matrix, ignoring noise markers."""
    dim = 2 ** circuit.n_qubits
    u = np.eye(dim, dtype=complex)
    for op in circuit.ops:
        if isinstance(op, Ry):
            mats = [np.eye(2, dtype=complex)] * circuit.n_qubits
            mats[op.qubit] = ry_matrix(params[op.param_index])
            full = mats[0]
            for m in mats[1:]:
                full = np.kron(full, m)
        elif isinstance(op, Cx):
            full = np.eye(dim, dtype=complex)
            for basis in range(dim):
                shift_c = circuit.n_qubits - 1 - op.control
                shift_t = circuit.n_qubits - 1 - op.target
                if (basis >> shift_c) & 1:
                    src = basis ^ (1 << shift_t)
                    full[basis, basis] = 0.0
                    full[basis, src] = 1.0
        else:
            continue
        u = full @ u
    return u


def test_ry_matrix_basics():
    assert np.allclose(ry_matrix(0.0), np.eye(2))
    assert np.allclose(ry_matrix(np.pi), np.array([[0.0, -1.0], [1.0, 0.0]]))
    a, b = 0.9, -2.3
    assert np.allclose(ry_matrix(a) @ ry_matrix(b), ry_matrix(a + b), atol=1e-14)
    assert np.allclose(ry_matrix(1.1).imag, 0.0)


def test_cx_matrix_is_the_standard_permutation():
    assert np.allclose(CX_MATRIX, np.eye(4)[[0, 1, 3, 2]])


def test_circuit_validates_parameter_usage():
    with pytest.raises(ValueError):
        Circuit(1, (Ry(0, 0), Ry(0, 0)), 1)
    with pytest.raises(ValueError):
        Circuit(1, (Ry(0, 0),), 2)
    with pytest.raises(ValueError):
        Circuit(2, (Ry(0, 0), Cx(0, 2)), 1)
    with pytest.raises(ValueError):
        Circuit(2, (Ry(0, 0), Cx(1, 1)), 1)


@pytest.mark.parametrize("variant, n_params", [("a", 3), ("b", 3), ("c", 4)])
def test_2q_builder_shapes(variant, n_params):
    c = build_2q_circuit(variant)
    assert c.n_qubits == 2
    assert c.n_params == n_params
    assert sum(isinstance(op, NoiseMark) for op in c.ops) == 1


def test_2q_builder_rejects_unknown_variant():
    with pytest.raises(ValueError):
        build_2q_circuit("d")


@pytest.mark.parametrize("layers", [1, 2, 4])
def test_hea_builder_shapes(layers):
    c = build_hea(layers)
    assert c.n_qubits == 4
    assert c.n_params == 4 * layers
    assert sum(isinstance(op, NoiseMark) for op in c.ops) == 2 * layers
    assert sum(isinstance(op, Cx) for op in c.ops) == 3 * layers


def test_hea_layer_structure():
    ops = build_hea(1).ops
    kinds = [type(op).__name__ for op in ops]
    assert kinds == ["Ry", "Ry", "Ry", "Ry", "Cx", "Cx", "NoiseMark", "Cx", "NoiseMark"]
    assert (ops[4].control, ops[4].target) == (0, 1)
    assert (ops[5].control, ops[5].target) == (2, 3)
    assert (ops[7].control, ops[7].target) == (1, 2)


def test_hea_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_hea(0)
    with pytest.raises(ValueError):
        build_hea(2, n_qubits=3)


def test_4q_vqe_builder_shape():
    c = build_4q_vqe()
    assert c.n_qubits == 4
    assert c.n_params == 12
    assert sum(isinstance(op, NoiseMark) for op in c.ops) == 9


def test_valley_demo_shape():
    c = build_valley_demo()
    assert (c.n_qubits, c.n_params) == (1, 2)
    kinds = [type(op).__name__ for op in c.ops]
    assert kinds == ["Ry", "NoiseMark", "Ry"]


@pytest.mark.parametrize(
    "circuit",
    [build_2q_circuit("a"), build_2q_circuit("c"), build_hea(1), build_valley_demo()],
    ids=["2q-a", "2q-c", "hea-1", "valley"],
)
def test_evaluate_pure_matches_dense_oracle(circuit, rng):
    params = rng.uniform(0.0, 2.0 * np.pi, circuit.n_params)
    psi = evaluate_pure(circuit, params)
    dim = 2 ** circuit.n_qubits
    want = dense_unitary(circuit, params) @ np.eye(dim, dtype=complex)[:, 0]
    assert np.allclose(psi, want, atol=1e-13)


def test_evaluate_noiseless_equals_density_path(rng):
    c = build_hea(2)
    params = rng.uniform(0.0, 2.0 * np.pi, c.n_params)
    rho_fast = evaluate(c, params, None)
    spec = NoiseSpec.uniform("phase", 0.0, 4)
    rho_triv = evaluate(c, params, spec)
    raw = _evaluate_raw(c, params, NoiseSpec.uniform("phase", 1e-30, 4))
    assert np.allclose(rho_fast.data, rho_triv.data, atol=1e-14)
    assert np.allclose(rho_fast.data, raw, atol=1e-12)


def test_evaluate_noisy_matches_manual_channel_insertion(rng):
    from nvqa.channels import apply_product_channel

    c = build_2q_circuit("c")
    params = rng.uniform(0.0, 2.0 * np.pi, 4)
    spec = NoiseSpec.uniform("amplitude", 0.2, 2)
    got = evaluate(c, params, spec)

    from nvqa.qstate import apply_unitary, zero_state

    rho = zero_state(2)
    rho = apply_unitary(rho, ry_matrix(params[0]), (0,))
    rho = apply_unitary(rho, ry_matrix(params[1]), (1,))
    rho = apply_unitary(rho, CX_MATRIX, (0, 1))
    rho = apply_product_channel(rho, spec)
    rho = apply_unitary(rho, ry_matrix(params[2]), (0,))
    rho = apply_unitary(rho, ry_matrix(params[3]), (1,))
    assert np.allclose(got.data, rho.data, atol=1e-13)


def test_evaluate_returns_valid_state(rng):
    c = build_hea(2)
    params = rng.uniform(0.0, 2.0 * np.pi, c.n_params)
    spec = NoiseSpec.uniform("depolarising", 0.15, 4)
    evaluate(c, params, spec).validate()


def test_batch_paths_match_loops(rng):
    c = build_hea(2)
    thetas = rng.uniform(0.0, 2.0 * np.pi, size=(5, c.n_params))
    batch = evaluate_pure_batch(c, thetas)
    for i in range(5):
        assert np.allclose(batch[i], evaluate_pure(c, thetas[i]), atol=1e-13)
    spec = NoiseSpec.uniform("phase", 0.03, 4)
    raw = _evaluate_raw_batch(c, thetas, spec)
    for i in range(5):
        assert np.allclose(raw[i], _evaluate_raw(c, thetas[i], spec), atol=1e-13)


def test_batch_rejects_bad_shape(rng):
    c = build_hea(1)
    with pytest.raises(ValueError):
        evaluate_pure_batch(c, np.zeros((3, c.n_params + 1)))


@pytest.mark.parametrize(
    "circuit",
    [build_2q_circuit("b"), build_hea(3), build_4q_vqe(), build_valley_demo()],
    ids=["2q-b", "hea-3", "4q-vqe", "valley"],
)
def test_serialization_round_trip(circuit):
    again = circuit_from_dict(circuit_to_dict(circuit))
    assert again == circuit
    assert circuit_from_json(circuit_to_json(circuit)) == circuit


def test_from_dict_rejects_malformed():
    with pytest.raises(ValueError):
        circuit_from_dict({"n_qubits": 1, "ops": [{"rz": {"p": 0, "q": 0}}], "n_params": 1})
