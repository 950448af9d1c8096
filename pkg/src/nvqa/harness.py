"""Experiment harness: canned studies, deterministic CSV output, resume.

Every experiment takes one ExperimentConfig, runs deterministically from its
seed, and produces a CSV of plain rows plus a JSON sidecar holding the full
config, its hash, the package version, and wall-clock timings. Reruns with
an unchanged config are skipped unless forced; the CSV bytes for a given
config are reproducible.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .channels import CHANNEL_KINDS, NoiseSpec, make_channel
from .circuits import (
    Circuit,
    build_2q_circuit,
    build_4q_vqe,
    build_hea,
    build_valley_demo,
    evaluate,
)
from .degen import generate_degeneracy_maps, degeneracy_split
from .measures import ground_truth
from .noisemodel import estimate_alpha_beta
from .optimize import (
    CostFn,
    MinimizeOptions,
    OptResult,
    energy_cost,
    infidelity_cost,
    minimize,
    multistart,
    reoptimize_from,
    sweep_gamma,
)
from .pauli import vqe_hamiltonian_2q, vqe_hamiltonian_4q
from .randstates import RngStream, sample_real_haar_state


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    kinds: tuple[str, ...] = CHANNEL_KINDS
    gamma_grid: tuple[float, ...] = ()
    layers: tuple[int, ...] = (4,)
    variants: tuple[str, ...] = ("a", "b", "c")
    n_targets: int = 100
    n_samples: int = 10000
    seed: int = 7
    n_starts_2q: int = 100
    n_starts_4q: int = 300
    mode: str = "restart"
    output_dir: str = "results"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; known: {sorted(EXPERIMENTS)}"
            )
        for k in self.kinds:
            if k not in CHANNEL_KINDS:
                raise ValueError(f"unknown channel kind {k!r}")
        if self.mode not in ("track", "restart"):
            raise ValueError(f"mode must be 'track' or 'restart', got {self.mode!r}")
        if any(not 0.0 <= g <= 1.0 for g in self.gamma_grid):
            raise ValueError("gamma grid entries must lie in [0, 1]")
        if any(l < 1 for l in self.layers):
            raise ValueError("layer counts must be >= 1")
        if self.n_targets < 1 or self.n_samples < 2:
            raise ValueError("n_targets must be >= 1 and n_samples >= 2")
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "gamma_grid", tuple(float(g) for g in self.gamma_grid))
        object.__setattr__(self, "layers", tuple(int(l) for l in self.layers))
        object.__setattr__(self, "variants", tuple(self.variants))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


def default_config(experiment: str, **overrides) -> ExperimentConfig:
    """The registry defaults for an experiment, with keyword overrides."""
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r}; known: {sorted(EXPERIMENTS)}")
    base = dict(EXPERIMENTS[experiment]["defaults"])
    base.update(overrides)
    return ExperimentConfig(experiment=experiment, **base)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


@dataclass
class ResultRecord:
    experiment: str
    config: ExperimentConfig
    columns: tuple[str, ...]
    rows: list[tuple]
    elapsed_seconds: float = 0.0

    def csv_text(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match columns")
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def sidecar(self) -> dict:
        return {
            "experiment": self.experiment,
            "config": self.config.to_dict(),
            "config_hash": self.config.config_hash(),
            "version": __version__,
            "n_rows": len(self.rows),
            "elapsed_seconds": self.elapsed_seconds,
        }

    def write(self, out_dir: str | Path | None = None) -> tuple[Path, Path]:
        out = Path(out_dir) if out_dir is not None else Path(self.config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / f"{self.experiment}.csv"
        json_path = out / f"{self.experiment}.json"
        csv_path.write_text(self.csv_text())
        json_path.write_text(json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n")
        return csv_path, json_path


def is_complete(config: ExperimentConfig, out_dir: str | Path | None = None) -> bool:
    """True when this exact config already produced output in out_dir."""
    out = Path(out_dir) if out_dir is not None else Path(config.output_dir)
    csv_path = out / f"{config.experiment}.csv"
    json_path = out / f"{config.experiment}.json"
    if not csv_path.exists() or not json_path.exists():
        return False
    try:
        side = json.loads(json_path.read_text())
    except (OSError, json.JSONDecodeError):
        return False
    return side.get("config_hash") == config.config_hash()


def _uniform_noise(kind: str, gamma: float, n_qubits: int,
                   scales: tuple[float, ...] | None = None) -> NoiseSpec:
    if scales is None:
        return NoiseSpec.uniform(kind, gamma, n_qubits)
    return NoiseSpec(make_channel(kind, gamma), scales)


def _stream_seed(config: ExperimentConfig, *path: int) -> int:
    seq = np.random.SeedSequence(config.seed, spawn_key=tuple(path))
    return int(seq.generate_state(1)[0])


def _minima_rows(prefix: tuple, minima: list[OptResult]) -> list[tuple]:
    rows = []
    for idx, r in enumerate(minima):
        q = r.quality
        rows.append(prefix + (idx, r.cost, q.energy, q.fidelity, q.concurrence,
                              r.grad_norm, int(r.converged)))
    return rows


_MINIMA_COLS = ("minimum_index", "cost", "energy", "fidelity", "concurrence",
                "grad_norm", "converged")


def run_vqe2q(config: ExperimentConfig) -> ResultRecord:
    """Two-qubit VQE for each ansatz variant, channel kind, and gamma."""
    h = vqe_hamiltonian_2q()
    rows = []
    for vi, variant in enumerate(config.variants):
        circuit = build_2q_circuit(variant)
        for ki, kind in enumerate(config.kinds):
            def cost_at(g, kind=kind, circuit=circuit):
                return energy_cost(circuit, h, _uniform_noise(kind, g, 2))
            per_gamma = sweep_gamma(
                cost_at, config.gamma_grid, mode=config.mode,
                n_starts=config.n_starts_2q, seed=_stream_seed(config, vi, ki),
            )
            for g, minima in zip(config.gamma_grid, per_gamma):
                rows.extend(_minima_rows((variant, kind, g), minima))
    return ResultRecord(config.experiment, config,
                        ("variant", "kind", "gamma") + _MINIMA_COLS, rows)


def run_vqe4q(config: ExperimentConfig) -> ResultRecord:
    """Four-qubit VQE across channel kinds and gammas."""
    h = vqe_hamiltonian_4q()
    circuit = build_4q_vqe()
    rows = []
    for ki, kind in enumerate(config.kinds):
        def cost_at(g, kind=kind):
            return energy_cost(circuit, h, _uniform_noise(kind, g, 4))
        per_gamma = sweep_gamma(
            cost_at, config.gamma_grid, mode=config.mode,
            n_starts=config.n_starts_4q, seed=_stream_seed(config, ki),
        )
        for g, minima in zip(config.gamma_grid, per_gamma):
            rows.extend(_minima_rows((kind, g), minima))
    return ResultRecord(config.experiment, config, ("kind", "gamma") + _MINIMA_COLS, rows)


def run_vqe_unequal(config: ExperimentConfig) -> ResultRecord:
    """Two-qubit VQE with noise applied unequally to the two qubits."""
    h = vqe_hamiltonian_2q()
    circuit = build_2q_circuit("c")
    scale_sets = ((1.0, 0.1), (0.1, 1.0))
    rows = []
    for si, scales in enumerate(scale_sets):
        for ki, kind in enumerate(config.kinds):
            def cost_at(g, kind=kind, scales=scales):
                return energy_cost(circuit, h, _uniform_noise(kind, g, 2, scales))
            per_gamma = sweep_gamma(
                cost_at, config.gamma_grid, mode=config.mode,
                n_starts=config.n_starts_2q, seed=_stream_seed(config, si, ki),
            )
            for g, minima in zip(config.gamma_grid, per_gamma):
                rows.extend(_minima_rows((scales[0], scales[1], kind, g), minima))
    return ResultRecord(config.experiment, config,
                        ("scale_q0", "scale_q1", "kind", "gamma") + _MINIMA_COLS, rows)


def optimize_to_target(circuit: Circuit, target, seed: int,
                       infidelity_goal: float = 1e-6,
                       max_starts: int = 30) -> OptResult:
    """Noiseless fidelity optimization with adaptive restarts.

    Runs random starts until the best infidelity reaches the goal or
    max_starts is exhausted; returns the best result either way. Each start
    stops early once it is two orders of magnitude inside the goal, which
    keeps fully-expressive circuits cheap without touching the result grid.
    """
    cf = infidelity_cost(circuit, target)
    opts = MinimizeOptions(max_iters=400, cost_goal=infidelity_goal * 1e-2)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    best: OptResult | None = None
    for _ in range(max_starts):
        theta0 = rng.uniform(0.0, 2.0 * np.pi, circuit.n_params)
        cand = minimize(cf, theta0, opts)
        if best is None or cand.cost < best.cost:
            best = cand
        if best.cost <= infidelity_goal:
            break
    return best


def run_target_fidelity(config: ExperimentConfig) -> ResultRecord:
    """Noiseless optimum per target, then noisy evaluation and reoptimization.

    For every layer count and random pure target the ansatz is first
    optimized without noise; that optimum is reused across channel kinds and
    gammas, once frozen (reopt = 0) and once reoptimized (reopt = 1).
    """
    rows = []
    for li, layers in enumerate(config.layers):
        circuit = build_hea(layers)
        for t in range(config.n_targets):
            target = sample_real_haar_state(4, RngStream(config.seed, stream_id=t))
            base = optimize_to_target(circuit, target,
                                      _stream_seed(config, li, t))
            residual = base.cost
            for kind in config.kinds:
                for g in config.gamma_grid:
                    cf = infidelity_cost(circuit, target, _uniform_noise(kind, g, 4))
                    non_reopt, reopt = reoptimize_from(cf, base.params)
                    for flag, r in ((0, non_reopt), (1, reopt)):
                        q = r.quality
                        rows.append((kind, layers, g, t, flag, residual, r.cost,
                                     q.fidelity, q.concurrence, int(r.converged)))
    cols = ("kind", "layers", "gamma", "target_index", "reopt", "residual_id",
            "infidelity", "fidelity", "concurrence", "converged")
    return ResultRecord(config.experiment, config, cols, rows)


def run_degeneracy_hist(config: ExperimentConfig) -> ResultRecord:
    """Fidelity of every degenerate optimum image under each channel kind."""
    layers = config.layers[0]
    gamma = config.gamma_grid[0]
    circuit = build_hea(layers)
    target = sample_real_haar_state(4, RngStream(config.seed, stream_id=0))
    base = optimize_to_target(circuit, target, _stream_seed(config, 0))
    maps = generate_degeneracy_maps(circuit)
    rows = []
    for kind in config.kinds:
        noise = _uniform_noise(kind, gamma, 4)
        fids = degeneracy_split(circuit, base.params, maps, noise, target)
        rows.extend((kind, gamma, i, f) for i, f in enumerate(fids))
    return ResultRecord(config.experiment, config,
                        ("kind", "gamma", "map_index", "fidelity"), rows)


def _wrapped_jump(a: np.ndarray, b: np.ndarray) -> float:
    d = np.mod(a - b + np.pi, 2.0 * np.pi) - np.pi
    return float(np.abs(d).max())


def run_transition_scan(config: ExperimentConfig) -> ResultRecord:
    """Warm-started gamma scan tracking one optimum per target.

    Records noisy and noiseless quality at the tracked optimum plus four
    indicative angles; sudden angle jumps mark the transition where the
    noisy optimum decouples from the noiseless one.
    """
    layers = config.layers[0]
    kind = config.kinds[0]
    circuit = build_hea(layers)
    rows = []
    for t in range(config.n_targets):
        target = sample_real_haar_state(4, RngStream(config.seed, stream_id=t))
        base = optimize_to_target(circuit, target, _stream_seed(config, t))
        prev = base
        history = []
        for g in config.gamma_grid:
            cf = infidelity_cost(circuit, target, _uniform_noise(kind, g, 4))
            res = minimize(cf, prev.params)
            clean = infidelity_cost(circuit, target).quality(res.params)
            jump = _wrapped_jump(res.params, prev.params) if history else 0.0
            history.append((g, res, clean, jump))
            prev = res
        jumps = np.array([h[3] for h in history[1:]])
        positive = jumps[jumps > 1e-12]
        cut = 10.0 * float(np.median(positive)) if positive.size else np.inf
        for g, res, clean, jump in history:
            q = res.quality
            flagged = int(jump > cut and jump > 1e-6)
            rows.append((t, kind, layers, g, q.fidelity, q.concurrence,
                         clean.fidelity, clean.concurrence,
                         res.params[0], res.params[1], res.params[2], res.params[3],
                         jump, flagged))
    cols = ("target_index", "kind", "layers", "gamma",
            "fidelity_noisy", "concurrence_noisy", "fidelity_clean",
            "concurrence_clean", "theta0", "theta1", "theta2", "theta3",
            "jump", "flagged")
    return ResultRecord(config.experiment, config, cols, rows)


def run_alpha_beta_table(config: ExperimentConfig) -> ResultRecord:
    """Monte Carlo alpha/beta for each channel kind on 4-qubit Haar states."""
    rows = []
    for kind in config.kinds:
        params = estimate_alpha_beta(kind, 4, config.n_samples,
                                     RngStream(config.seed, stream_id=0))
        rows.append((kind, params.n_qubits, params.n_samples, params.alpha,
                     params.beta, params.stderr_alpha, params.stderr_beta))
    cols = ("kind", "n_qubits", "n_samples", "alpha", "beta",
            "stderr_alpha", "stderr_beta")
    return ResultRecord(config.experiment, config, cols, rows)


def run_valley_demo(config: ExperimentConfig) -> ResultRecord:
    """Cost surface of the one-qubit two-rotation circuit on a 101^2 grid."""
    circuit = build_valley_demo()
    kind = config.kinds[0]
    grid = np.linspace(0.0, 2.0 * np.pi, 101)
    rows = []
    for g in config.gamma_grid:
        noise = _uniform_noise(kind, g, 1) if g > 0 else None
        for i, t0 in enumerate(grid):
            for j, t1 in enumerate(grid):
                rho = evaluate(circuit, np.array([t0, t1]), noise)
                cost = rho.data[0, 0].real
                rows.append((kind, g, i, j, t0, t1, cost))
    return ResultRecord(config.experiment, config,
                        ("kind", "gamma", "i", "j", "theta0", "theta1", "cost"), rows)


EXPERIMENTS = {
    "vqe2q": {
        "runner": run_vqe2q,
        "help": "two-qubit VQE across ansatz variants, channels, gammas",
        "defaults": dict(gamma_grid=tuple(np.linspace(0.0, 0.5, 11)), mode="restart"),
    },
    "vqe4q": {
        "runner": run_vqe4q,
        "help": "four-qubit VQE across channels and gammas",
        "defaults": dict(gamma_grid=tuple(np.linspace(0.0, 0.2, 11)), mode="track"),
    },
    "vqe_unequal": {
        "runner": run_vqe_unequal,
        "help": "two-qubit VQE with per-qubit noise scales (1, 0.1) and (0.1, 1)",
        "defaults": dict(gamma_grid=tuple(np.linspace(0.0, 0.5, 11)), mode="restart"),
    },
    "target_fidelity": {
        "runner": run_target_fidelity,
        "help": "random-target state preparation, frozen vs reoptimized",
        "defaults": dict(gamma_grid=(1e-4, 3e-4, 1e-3, 1e-2),
                         layers=(2, 4, 6), n_targets=20),
    },
    "degeneracy_hist": {
        "runner": run_degeneracy_hist,
        "help": "fidelity histogram over all degenerate optimum images",
        "defaults": dict(gamma_grid=(0.01,), layers=(4,)),
    },
    "transition_scan": {
        "runner": run_transition_scan,
        "help": "warm-started gamma scan exposing the optimum transition",
        "defaults": dict(gamma_grid=tuple(np.linspace(0.0, 0.1, 21)),
                         layers=(3,), kinds=("phase",), n_targets=4),
    },
    "alpha_beta_table": {
        "runner": run_alpha_beta_table,
        "help": "Monte Carlo alpha/beta noise-model coefficients",
        "defaults": dict(n_samples=10000),
    },
    "valley_demo": {
        "runner": run_valley_demo,
        "help": "one-qubit cost surface with and without mid-circuit noise",
        "defaults": dict(gamma_grid=(0.0, 0.4), kinds=("phase",)),
    },
}


def run_experiment(config: ExperimentConfig) -> ResultRecord:
    """Dispatch to the experiment runner and time it."""
    runner = EXPERIMENTS[config.experiment]["runner"]
    t0 = time.perf_counter()
    record = runner(config)
    record.elapsed_seconds = time.perf_counter() - t0
    return record


def run_and_write(config: ExperimentConfig, out_dir: str | Path | None = None,
                  force: bool = False):
    """Run unless the same config already completed; returns (record, paths).

    record is None when the run was skipped.
    """
    out = Path(out_dir) if out_dir is not None else Path(config.output_dir)
    if not force and is_complete(config, out):
        return None, (out / f"{config.experiment}.csv", out / f"{config.experiment}.json")
    record = run_experiment(config)
    paths = record.write(out)
    return record, paths
