"""End-to-end experiment orchestration.

One experiment = pick qubits on a device, synthesize the preparation
circuit, then for each repetition draw L random Bell terms and evaluate each
one on a fresh noisy trajectory: gate-level depolarizing channels after every
gate (idling identities included), a local basis change on the term's
support, per-qubit readout flips, and the sign-corrected parity of the
support bits as the outcome.  Estimates and Hoeffding p-value bounds follow.

Every trajectory owns an RNG stream derived from
(master_seed, family, n, repetition, slot), so results are reproducible and
independent of how work is distributed over processes.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from statistics import mean, stdev

import numpy as np

from . import bell, estimation
from .circuits import Circuit, prep_ghz_connectivity, prep_lc_path
from .devices import DevicePreset, load_preset
from .errors import InvalidInputError
from .graphs import ConnectivityGraph, connected_subset, induced_subgraph, longest_simple_path
from .noise import NoiseParams, ScalingModel, fit_scaling
from .pauli import PauliString
from .tableau import StabilizerTableau

__all__ = [
    "ExperimentConfig",
    "ExperimentRecord",
    "SweepResult",
    "run_experiment",
    "sweep_and_fit",
    "to_json",
    "to_csv",
    "record_from_json",
]

_FAMILY_CODE = {"ghz": 0, "lc": 1}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one experiment."""

    device: str
    family: str
    n: int
    L: int
    K: int = 1
    repetitions: int = 10
    sigma_target: float = 5.0
    master_seed: int = 0
    noise: str = "device"  # "off", "device", or "global:ALPHA"

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_CODE:
            raise InvalidInputError(f"unknown family {self.family!r}")
        if self.n < 2 or self.L < 1 or self.K < 1 or self.repetitions < 1:
            raise InvalidInputError("n, L, K, repetitions must be positive (n >= 2)")
        if self.master_seed < 0:
            raise InvalidInputError("master_seed must be nonnegative")
        self.noise_mode()  # validates

    def noise_mode(self) -> tuple[str, float | None]:
        if self.noise == "off":
            return "off", None
        if self.noise == "device":
            return "device", None
        if self.noise.startswith("global:"):
            alpha = float(self.noise.split(":", 1)[1])
            if not 0.0 <= alpha <= 1.0:
                raise InvalidInputError("global depolarization alpha must be in [0, 1]")
            return "global", alpha
        raise InvalidInputError(f"unknown noise mode {self.noise!r}")


@lru_cache(maxsize=32)
def _cached_longest_path(graph: ConnectivityGraph, budget: int) -> tuple[tuple[int, ...], bool]:
    result = longest_simple_path(graph, length_multiple=3, budget=budget)
    return result.path, result.exact


@dataclass(frozen=True)
class _Setup:
    """Per-run immutable bundle shared by all trajectories."""

    operator: bell.BellOperator
    circuit: Circuit
    params: NoiseParams
    entries: tuple[tuple[str | None, tuple[int, ...]], ...]  # gate stream incl. idles
    site_probs: np.ndarray  # one depolarization site per entry

    @property
    def n(self) -> int:
        return self.circuit.n_qubits


def _select_qubits(preset: DevicePreset, family: str, n: int) -> tuple[Circuit, bell.BellOperator]:
    g = preset.graph
    if n > g.n_vertices:
        raise InvalidInputError(f"device {preset.name} has only {g.n_vertices} qubits")
    if family == "lc":
        path, _ = _cached_longest_path(g, 100_000)
        if len(path) < n:
            raise InvalidInputError(
                f"no length-{n} path found on {preset.name} (longest multiple-of-3 path: {len(path)})"
            )
        chosen = path[:n]
        circuit = prep_lc_path(chosen, device=g)
        operator = bell.build("lc", chosen)
        return circuit, operator
    vertices = connected_subset(g, n)
    sub = induced_subgraph(g, vertices)
    circuit, center = prep_ghz_connectivity(sub)
    circuit = Circuit(circuit.n_qubits, circuit.layers, qubit_map=tuple(vertices))
    # operator on circuit-local labels (star centered where the growth ended)
    star = ConnectivityGraph.star(n, center)
    operator = bell.BellOperator("ghz", n, tuple(vertices), bell.build("ghz", star).generators)
    return circuit, operator


def _compile(circuit: Circuit, params: NoiseParams) -> tuple[tuple, np.ndarray]:
    """Flatten layers into a gate stream with one noise site per gate or idle."""
    entries: list[tuple[str | None, tuple[int, ...]]] = []
    probs: list[float] = []
    for index, layer in enumerate(circuit.layers):
        touched = set()
        for gate in layer:
            entries.append((gate.kind, gate.qubits))
            probs.append(params.p2 if gate.kind == "CZ" else params.p1)
            touched.update(gate.qubits)
        if index > 0:
            for q in range(circuit.n_qubits):
                if q not in touched:
                    entries.append((None, (q,)))
                    probs.append(params.p1)
    return tuple(entries), np.asarray(probs)


_PAULI1 = ("x", "y", "z")
_PAULI2 = [(a, b) for a in "ixyz" for b in "ixyz"][1:]


def _device_trajectory(setup: _Setup, term: PauliString, rng: np.random.Generator) -> int:
    tab = StabilizerTableau(setup.n)
    hits = np.flatnonzero(rng.random(len(setup.site_probs)) < setup.site_probs)
    hit_set = set(int(h) for h in hits)
    for index, (kind, qubits) in enumerate(setup.entries):
        if kind is not None:
            tab.apply(kind, qubits)
        if index in hit_set:
            if len(qubits) == 1:
                getattr(tab, _PAULI1[rng.integers(3)])(qubits[0])
            else:
                pa, pb = _PAULI2[rng.integers(15)]
                if pa != "i":
                    getattr(tab, pa)(qubits[0])
                if pb != "i":
                    getattr(tab, pb)(qubits[1])
    return _measure_term(tab, term, setup.params.pr, rng)


def _measure_term(tab: StabilizerTableau, term: PauliString, pr: float, rng: np.random.Generator) -> int:
    """Basis-change each support qubit to Z, read it out, multiply with the sign."""
    outcome = term.sign
    for q in term.support():
        letter = term.letter(q)
        if letter == "X":
            tab.h(q)
        elif letter == "Y":
            tab.sdg(q)
            tab.h(q)
        bit, _ = tab.measure_z(q, rng)
        if pr and rng.random() < pr:
            bit = -bit
        outcome *= bit
    return outcome


def _noiseless_trajectory(setup: _Setup, term: PauliString, rng: np.random.Generator) -> int:
    tab = StabilizerTableau(setup.n)
    for kind, qubits in setup.entries:
        if kind is not None:
            tab.apply(kind, qubits)
    return _measure_term(tab, term, 0.0, rng)


def _global_trajectory(alpha: float, rng: np.random.Generator) -> int:
    # alpha |G><G| + (1 - alpha) I / 2^n: perfect trajectory yields +1, the
    # maximally mixed branch a fair coin for any non-identity Pauli.
    if rng.random() < alpha:
        return 1
    return 1 if rng.integers(2) == 0 else -1


def _stream(cfg: ExperimentConfig, rep: int, slot: int) -> np.random.Generator:
    return np.random.default_rng(
        (cfg.master_seed, _FAMILY_CODE[cfg.family], cfg.n, rep, slot)
    )


def _build_setup(cfg: ExperimentConfig) -> _Setup:
    preset = load_preset(cfg.device)
    circuit, operator = _select_qubits(preset, cfg.family, cfg.n)
    mode, _ = cfg.noise_mode()
    params = preset.noise if mode == "device" else NoiseParams(0.0, 0.0, 0.0)
    entries, probs = _compile(circuit, params)
    return _Setup(operator, circuit, params, entries, probs)


def _run_repetition(cfg: ExperimentConfig, setup: _Setup, rep: int) -> dict:
    mode, alpha = cfg.noise_mode()
    M = setup.operator.M
    indices = estimation.sample_indices(M, cfg.L, _stream(cfg, rep, 0))
    outcomes: list[int] = []
    for slot in range(cfg.L * cfg.K):
        rng = _stream(cfg, rep, slot + 1)
        term_index = indices[slot // cfg.K]
        if mode == "global":
            outcomes.append(_global_trajectory(alpha, rng))
        else:
            term = setup.operator.term(term_index)
            if mode == "off":
                outcomes.append(_noiseless_trajectory(setup, term, rng))
            else:
                outcomes.append(_device_trajectory(setup, term, rng))
    result = estimation.estimate(M, cfg.K, outcomes, sampled_indices=indices)
    bounds = setup.operator.bounds()
    p_bound = estimation.p_value_bound(result.estimate, bounds.C, M, cfg.K, cfg.L)
    return {
        "repetition": rep,
        "seed": cfg.master_seed,
        "indices": list(result.sampled_indices),
        "outcomes": list(result.outcomes),
        "estimate": result.estimate,
        "estimate_over_q": result.estimate / float(bounds.Q),
        "p_value_bound": p_bound,
        "sigma_equivalent": estimation.sigma_equivalent(p_bound),
    }


def _worker(payload: tuple) -> dict:
    cfg_dict, rep = payload
    cfg = ExperimentConfig(**cfg_dict)
    setup = _build_setup(cfg)
    return _run_repetition(cfg, setup, rep)


@dataclass(frozen=True)
class ExperimentRecord:
    """Full result of one experiment: per-repetition data plus aggregates."""

    config: dict
    qubits: tuple[int, ...]
    M: int
    Q: int
    C: int
    D: int
    repetitions: tuple[dict, ...]
    aggregate: dict
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        out = asdict(self)
        out["qubits"] = list(self.qubits)
        out["repetitions"] = list(self.repetitions)
        return out


def _workers_from_env(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    return max(1, int(os.environ.get("BELLMARK_WORKERS", "1")))


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> ExperimentRecord:
    """Run all repetitions of one experiment configuration."""
    start = time.perf_counter()
    setup = _build_setup(cfg)
    workers = _workers_from_env(workers)
    reps = list(range(cfg.repetitions))
    if workers == 1 or cfg.repetitions == 1:
        rows = [_run_repetition(cfg, setup, rep) for rep in reps]
    else:
        payloads = [(asdict(cfg), rep) for rep in reps]
        with ProcessPoolExecutor(max_workers=min(workers, cfg.repetitions)) as pool:
            rows = list(pool.map(_worker, payloads))
    rows.sort(key=lambda r: r["repetition"])

    bounds = setup.operator.bounds()
    estimates = [r["estimate"] for r in rows]
    over_q = [r["estimate_over_q"] for r in rows]
    aggregate = {
        "mean_estimate": mean(estimates),
        "std_estimate": stdev(estimates) if len(estimates) > 1 else 0.0,
        "mean_over_q": mean(over_q),
        "std_over_q": stdev(over_q) if len(over_q) > 1 else 0.0,
    }
    return ExperimentRecord(
        config=asdict(cfg),
        qubits=setup.operator.qubit_map,
        M=setup.operator.M,
        Q=bounds.Q,
        C=bounds.C,
        D=bounds.D,
        repetitions=tuple(rows),
        aggregate=aggregate,
        elapsed_seconds=time.perf_counter() - start,
    )


def to_json(record: ExperimentRecord) -> str:
    return json.dumps(record.to_json_dict(), sort_keys=True, indent=2) + "\n"


def record_from_json(text: str) -> ExperimentRecord:
    data = json.loads(text)
    return ExperimentRecord(
        config=data["config"],
        qubits=tuple(data["qubits"]),
        M=data["M"],
        Q=data["Q"],
        C=data["C"],
        D=data["D"],
        repetitions=tuple(data["repetitions"]),
        aggregate=data["aggregate"],
        elapsed_seconds=data["elapsed_seconds"],
    )


def to_csv(record: ExperimentRecord) -> str:
    """Per-repetition rows; deterministic bytes for a fixed seed and config."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "family", "repetition", "estimate", "estimate_over_Q", "p_bound", "seed"])
    for row in record.repetitions:
        writer.writerow([
            record.config["n"],
            record.config["family"],
            row["repetition"],
            repr(row["estimate"]),
            repr(row["estimate_over_q"]),
            repr(row["p_value_bound"]),
            row["seed"],
        ])
    return buf.getvalue()


@dataclass(frozen=True)
class SweepResult:
    """Records for each system size plus the fitted decay of estimate/Q."""

    records: tuple[ExperimentRecord, ...]
    model: ScalingModel

    def to_json_dict(self) -> dict:
        return {
            "model": asdict(self.model),
            "records": [r.to_json_dict() for r in self.records],
        }


def sweep_and_fit(
    cfg: ExperimentConfig,
    n_values: list[int],
    workers: int | None = None,
) -> SweepResult:
    """Run the experiment per n and fit estimate/Q in the log domain."""
    form = "log-quadratic" if cfg.family == "ghz" else "log-linear"
    minimum = 3 if form == "log-quadratic" else 2
    if len(n_values) < minimum:
        raise InvalidInputError(f"{form} sweep needs at least {minimum} sizes")
    records = []
    for n in n_values:
        fields = asdict(cfg)
        fields["n"] = n
        records.append(run_experiment(ExperimentConfig(**fields), workers=workers))
    points = [(r.config["n"], r.aggregate["mean_over_q"]) for r in records]
    model = fit_scaling(points, form)
    return SweepResult(tuple(records), model)
