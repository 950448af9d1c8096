"""nvqa: density-matrix simulation of variational quantum algorithms under noise."""

__version__ = "0.1.0"

from .channels import (
    CHANNEL_KINDS,
    KrausChannel,
    NoiseSpec,
    apply_channel_one_qubit,
    apply_product_channel,
    channel_superop,
    make_channel,
    ptm_from_channel,
)
from .circuits import (
    NOISE,
    Circuit,
    Cx,
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
    ry_matrix,
)
from .degen import DegeneracyMap, degeneracy_split, generate_degeneracy_maps
from .harness import (
    EXPERIMENTS,
    ExperimentConfig,
    ResultRecord,
    default_config,
    run_and_write,
    run_experiment,
)
from .measures import (
    GroundTruth,
    QualityRecord,
    concurrence,
    energy,
    fidelity,
    ground_truth,
    infidelity,
    max_pairwise_concurrence,
)
from .noisemodel import (
    ModelParams,
    alpha_scaling_check,
    apply_global_depol,
    estimate_alpha_beta,
    global_depol_infidelity,
    linear_action_overlap_derivative,
    predict,
    slope_through_origin,
)
from .optimize import (
    CostFn,
    MinimizeOptions,
    OptResult,
    energy_cost,
    gradient,
    infidelity_cost,
    minimize,
    multistart,
    reoptimize_from,
    reoptimize_pair,
    sweep_gamma,
)
from .pauli import PauliSum, pauli_string_matrix, vqe_hamiltonian_2q, vqe_hamiltonian_4q
from .qstate import (
    DensityMatrix,
    apply_unitary,
    eigen_desc,
    expectation,
    partial_trace,
    pure_state,
    zero_state,
)
from .randstates import RngStream, haar_orthogonal, sample_product_state, sample_real_haar_state
