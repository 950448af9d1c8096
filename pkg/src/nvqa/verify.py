"""Self-contained invariant checks, runnable in seconds via `nvqa verify`."""

from __future__ import annotations

import numpy as np

from .channels import (
    CHANNEL_KINDS,
    NoiseSpec,
    apply_channel_one_qubit,
    apply_product_channel,
    make_channel,
    ptm_from_channel,
)
from .circuits import build_2q_circuit, build_hea, evaluate
from .noisemodel import apply_global_depol, global_depol_infidelity
from .optimize import energy_cost, gradient, infidelity_cost
from .pauli import vqe_hamiltonian_2q
from .qstate import DensityMatrix, pure_state
from .randstates import sample_real_haar_state


def _random_mixed(n_qubits: int, gen) -> DensityMatrix:
    dim = 2 ** n_qubits
    a = gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return DensityMatrix(n_qubits, rho / np.trace(rho))


def _haar_unitary(dim: int, gen) -> np.ndarray:
    g = gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def check_kraus_completeness() -> float:
    worst = 0.0
    for kind in CHANNEL_KINDS:
        for g in np.linspace(0.0, 1.0, 101):
            worst = max(worst, make_channel(kind, g).completeness_defect())
    return worst


def check_fixed_points() -> float:
    gen = np.random.default_rng(11)
    worst = 0.0
    for kind in CHANNEL_KINDS:
        ch = make_channel(kind, 1.0)
        for _ in range(5):
            rho = _random_mixed(1, gen)
            out = apply_channel_one_qubit(rho, ch, 0)
            if kind == "amplitude":
                want = np.array([[1.0, 0.0], [0.0, 0.0]])
            elif kind == "phase":
                want = np.diag(np.diag(rho.data))
            else:
                want = 0.5 * np.eye(2)
            worst = max(worst, float(np.abs(out.data - want).max()))
            again = apply_channel_one_qubit(out, ch, 0)
            worst = max(worst, float(np.abs(again.data - out.data).max()))
    return worst


def check_product_vs_tensor_kraus(n_states: int = 50) -> float:
    gen = np.random.default_rng(12)
    worst = 0.0
    for _ in range(n_states):
        rho = _random_mixed(2, gen)
        kind = CHANNEL_KINDS[int(gen.integers(3))]
        gamma = float(gen.uniform(0.0, 1.0))
        spec = NoiseSpec.uniform(kind, gamma, 2)
        got = apply_product_channel(rho, spec).data
        kraus = make_channel(kind, gamma).kraus
        want = np.zeros_like(got)
        for e1 in kraus:
            for e2 in kraus:
                k = np.kron(e1, e2)
                want += k @ rho.data @ k.conj().T
        worst = max(worst, float(np.abs(got - want).max()))
    return worst


def check_ptm_closed_forms() -> float:
    worst = 0.0
    for g in np.linspace(0.0, 1.0, 21):
        s = np.sqrt(1.0 - g)
        forms = {
            "phase": np.diag([1.0, s, s, 1.0]),
            "depolarising": np.diag([1.0, 1.0 - g, 1.0 - g, 1.0 - g]),
            "amplitude": np.array(
                [[1, 0, 0, 0], [0, s, 0, 0], [0, 0, s, 0], [g, 0, 0, 1.0 - g]]
            ),
        }
        for kind, want in forms.items():
            got = ptm_from_channel(make_channel(kind, g))
            worst = max(worst, float(np.abs(got - want).max()))
    return worst


def check_gradient(n_cases: int = 6) -> float:
    gen = np.random.default_rng(13)
    h = vqe_hamiltonian_2q()
    worst = 0.0
    for _ in range(n_cases):
        circuit = build_2q_circuit("c")
        kind = CHANNEL_KINDS[int(gen.integers(3))]
        gamma = float(gen.choice([0.0, 0.1, 0.5]))
        noise = NoiseSpec.uniform(kind, gamma, 2) if gamma > 0 else None
        cf = energy_cost(circuit, h, noise)
        theta = gen.uniform(0.0, 2.0 * np.pi, circuit.n_params)
        g_ps = gradient(cf, theta)
        eps = 1e-6
        for i in range(theta.size):
            tp = theta.copy()
            tp[i] += eps
            tm = theta.copy()
            tm[i] -= eps
            fd = (cf.value(tp) - cf.value(tm)) / (2.0 * eps)
            worst = max(worst, abs(fd - g_ps[i]))
    return worst


def check_global_depol(n_cases: int = 20) -> float:
    gen = np.random.default_rng(14)
    worst = 0.0
    for _ in range(n_cases):
        n = int(gen.integers(1, 5))
        d = int(gen.integers(1, 7))
        gamma = float(gen.uniform(0.0, 0.5))
        dim = 2 ** n
        psi = np.zeros(dim, dtype=complex)
        psi[0] = 1.0
        rho = pure_state(psi)
        ideal = psi
        for _ in range(d):
            u = _haar_unitary(dim, gen)
            rho = DensityMatrix(n, u @ rho.data @ u.conj().T)
            rho = apply_global_depol(rho, gamma)
            ideal = u @ ideal
        fid = float(np.vdot(ideal, rho.data @ ideal).real)
        want = global_depol_infidelity(gamma, d, n)
        worst = max(worst, abs((1.0 - fid) - want))
    return worst


def check_state_invariants() -> float:
    gen = np.random.default_rng(15)
    circuit = build_hea(2)
    worst = 0.0
    for kind in CHANNEL_KINDS:
        for gamma in (0.0, 0.3, 1.0):
            noise = NoiseSpec.uniform(kind, gamma, 4)
            theta = gen.uniform(0.0, 2.0 * np.pi, circuit.n_params)
            rho = evaluate(circuit, theta, noise)
            rho.validate()
            worst = max(worst, abs(np.trace(rho.data).real - 1.0))
    return worst


CHECKS = (
    ("kraus completeness on a 101-point gamma grid", check_kraus_completeness, 1e-12),
    ("gamma=1 fixed points and idempotence", check_fixed_points, 1e-12),
    ("product channel vs tensor-product Kraus", check_product_vs_tensor_kraus, 1e-12),
    ("PTM closed forms", check_ptm_closed_forms, 1e-12),
    ("parameter-shift gradient vs finite differences", check_gradient, 1e-6),
    ("global depolarising closed form vs simulation", check_global_depol, 1e-12),
    ("state invariants after noisy circuits", check_state_invariants, 1e-10),
)


def run_verification(out=print) -> bool:
    """Run every invariant check; prints one line each, True when all pass."""
    ok = True
    for name, fn, tol in CHECKS:
        try:
            defect = fn()
            passed = defect <= tol
        except Exception as exc:  # a failing check must not stop the rest
            out(f"FAIL {name}: raised {exc!r}")
            ok = False
            continue
        status = "ok  " if passed else "FAIL"
        out(f"{status} {name}: defect {defect:.3g} (tol {tol:g})")
        ok = ok and passed
    return ok
