"""Plan, simulate, and certify multipartite Bell violations of graph states."""

from .bell import BellBounds, BellOperator, bell_bounds, build, lhv_bruteforce_bound
from .circuits import (
    Circuit,
    Gate,
    GateCounts,
    cz_via_path,
    gate_counts,
    prep_ghz_connectivity,
    prep_ghz_line,
    prep_lc_path,
    prep_lc_spanning_tree,
    simulate,
)
from .devices import DevicePreset, PRESET_NAMES, list_presets, load_preset
from .errors import BellmarkError, InvalidInputError, NoViolationMarginError
from .estimation import (
    EstimateResult,
    SamplingPlan,
    confidence_to_sigma,
    estimate,
    p_value_bound,
    required_K,
    required_L,
    required_L_from_alpha,
    sample_indices,
    sigma_equivalent,
    sigma_to_confidence,
)
from .graphs import (
    ConnectivityGraph,
    PathSearchResult,
    local_complement,
    longest_simple_path,
    spanning_tree,
)
from .harness import ExperimentConfig, ExperimentRecord, run_experiment, sweep_and_fit
from .noise import (
    NOISE_PRESETS,
    NoiseParams,
    ScalingModel,
    alpha_depolarization,
    extrapolate_L,
    fit_scaling,
    predict_required_L,
    violation_window_ghz,
)
from .pauli import PauliString, graph_stabilizers
from .tableau import StabilizerTableau, depolarize1, depolarize2, readout_flip

__version__ = "0.1.0"
