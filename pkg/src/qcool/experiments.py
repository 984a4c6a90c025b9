"""Experiment drivers: spectrum scans, filter-time scaling studies, and
observable pipelines, with CSV/JSON output.

Every output file embeds the fully resolved configuration as '#'-prefixed
header lines, and identical (config, seed) pairs produce byte-identical
files.  Numeric CSV cells carry 12 significant digits.  Energies in files
appear in both frames: original (as the model defines them) and shifted
(nonnegative, the frame every phase factor uses internally).
"""

from __future__ import annotations

import configparser
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .budget import budget_for_observable, infidelity_bound
from .cooling import KINDS, CoolingFunction
from .engine import EigenSystem, StateVector, cooled_state, eigendecompose, exact_D_curve
from .estimators import DegenerateRatioError, estimate_D, estimate_N, find_peaks, scan_energy
from .models import basis_state, heisenberg, load_pauli_file, random_pauli_hamiltonian
from .pauli import PauliSum, parse_pauli_sum
from .shots import PURPOSE_N, _uniform_blocks, derive_seed, shot_rng
from .validate import validate_functions

OVERLAP_FLOOR = 0.004  # eigenstates below this overlap are ignored in defaults


class ConfigError(ValueError):
    """Invalid run configuration; message starts with the field path."""


_REQUIRED = object()


def _field(section, key, cast, default=_REQUIRED, path=""):
    if section is None or key not in section:
        if default is _REQUIRED:
            raise ConfigError(f"{path}.{key}: required key is missing")
        return default
    raw = section[key]
    try:
        if cast is bool:
            value = raw.strip().lower()
            if value in ("1", "true", "yes", "on"):
                return True
            if value in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}.{key}: cannot parse {raw!r}") from exc


def _float_list(raw: str, path: str):
    try:
        return [float(tok) for tok in raw.replace(";", ",").split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"{path}: cannot parse {raw!r} as a comma-separated float list") from exc


@dataclass
class RunConfig:
    """Resolved configuration for the experiment drivers."""

    model_family: str = "heisenberg_xxz"
    n: int = 8
    j_coupling: float = 1.0
    zz_anisotropy: float = 2.0
    field_h: float = 1.0
    periodic: bool = True
    model_path: str | None = None
    model_terms: int = 4
    model_seed: int = 0

    bitstring: str | None = "01010101"

    kind: str = "gaussian"

    mode: str = "expectation"
    seed: int | None = None
    out_dir: str = "runs/out"

    # spectrum
    taus: list = field(default_factory=lambda: [1.7])
    x_m: float | None = 4.4
    epsilon_cutoff: float | None = None
    n_shots: int = 100_000
    e_min: float | None = None          # original frame
    e_max: float | None = None
    grid_points: int | None = None
    min_height: float = 0.005
    min_separation: float | None = None

    # cooling scaling
    epsilon_list: list = field(
        default_factory=lambda: [float(f"{e:.6g}") for e in np.geomspace(0.5, 0.002, 10)])
    repetitions: int = 10
    target: str | int = "auto"

    # observable
    observable_text: str | None = None
    observable_path: str | None = None
    energy: str | float = "auto"
    epsilon_budget: float = 0.1
    confidence: float = 32.0
    observable_shots: int | None = None

    raw_sections: dict = field(default_factory=dict)

    @classmethod
    def from_file(cls, path: str, overrides: dict | None = None) -> "RunConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        read = parser.read(path)
        if not read:
            raise ConfigError(f"config: cannot read file {path!r}")
        cfg = cls.from_parser(parser)
        for key, value in (overrides or {}).items():
            if value is not None:
                setattr(cfg, key, value)
        cfg.validate()
        return cfg

    @classmethod
    def from_parser(cls, parser: configparser.ConfigParser) -> "RunConfig":
        cfg = cls()
        model = parser["model"] if parser.has_section("model") else None
        if model is not None:
            cfg.model_family = _field(model, "family", str, cfg.model_family, "model")
            cfg.n = _field(model, "n", int, cfg.n, "model")
            cfg.j_coupling = _field(model, "j", float, cfg.j_coupling, "model")
            cfg.zz_anisotropy = _field(model, "zz_anisotropy", float, cfg.zz_anisotropy, "model")
            cfg.field_h = _field(model, "h", float, cfg.field_h, "model")
            cfg.periodic = _field(model, "periodic", bool, cfg.periodic, "model")
            cfg.model_path = _field(model, "path", str, cfg.model_path, "model")
            cfg.model_terms = _field(model, "terms", int, cfg.model_terms, "model")
            cfg.model_seed = _field(model, "model_seed", int, cfg.model_seed, "model")
        state = parser["state"] if parser.has_section("state") else None
        if state is not None:
            cfg.bitstring = _field(state, "bitstring", str, cfg.bitstring, "state")
        cooling = parser["cooling"] if parser.has_section("cooling") else None
        if cooling is not None:
            cfg.kind = _field(cooling, "kind", str, cfg.kind, "cooling").lower()
        run = parser["run"] if parser.has_section("run") else None
        if run is not None:
            cfg.mode = _field(run, "mode", str, cfg.mode, "run")
            cfg.seed = _field(run, "seed", int, cfg.seed, "run")
            cfg.out_dir = _field(run, "out", str, cfg.out_dir, "run")
        spectrum = parser["spectrum"] if parser.has_section("spectrum") else None
        if spectrum is not None:
            if "tau_list" in spectrum:
                cfg.taus = _float_list(spectrum["tau_list"], "spectrum.tau_list")
            elif "tau" in spectrum:
                cfg.taus = [_field(spectrum, "tau", float, path="spectrum")]
            cfg.x_m = _field(spectrum, "x_m", float, cfg.x_m, "spectrum")
            cfg.epsilon_cutoff = _field(spectrum, "epsilon", float, cfg.epsilon_cutoff, "spectrum")
            cfg.n_shots = _field(spectrum, "n_shots", int, cfg.n_shots, "spectrum")
            cfg.e_min = _field(spectrum, "e_min", float, cfg.e_min, "spectrum")
            cfg.e_max = _field(spectrum, "e_max", float, cfg.e_max, "spectrum")
            cfg.grid_points = _field(spectrum, "grid_points", int, cfg.grid_points, "spectrum")
            cfg.min_height = _field(spectrum, "min_height", float, cfg.min_height, "spectrum")
            cfg.min_separation = _field(spectrum, "min_separation", float, cfg.min_separation, "spectrum")
        cool = parser["cool"] if parser.has_section("cool") else None
        if cool is not None:
            if "epsilon_list" in cool:
                cfg.epsilon_list = _float_list(cool["epsilon_list"], "cool.epsilon_list")
            cfg.n_shots = _field(cool, "n_shots", int, cfg.n_shots, "cool")
            cfg.repetitions = _field(cool, "repetitions", int, cfg.repetitions, "cool")
            target = _field(cool, "target", str, "auto", "cool")
            cfg.target = target if target == "auto" else int(target)
        observable = parser["observable"] if parser.has_section("observable") else None
        if observable is not None:
            cfg.observable_text = _field(observable, "observable", str, cfg.observable_text, "observable")
            cfg.observable_path = _field(observable, "path", str, cfg.observable_path, "observable")
            energy = _field(observable, "energy", str, "auto", "observable")
            cfg.energy = energy if energy == "auto" else float(energy)
            cfg.epsilon_budget = _field(observable, "epsilon", float, cfg.epsilon_budget, "observable")
            cfg.confidence = _field(observable, "confidence", float, cfg.confidence, "observable")
            cfg.observable_shots = _field(observable, "n_shots", int, cfg.observable_shots, "observable")
        cfg.raw_sections = {s: dict(parser[s]) for s in parser.sections()}
        return cfg

    def validate(self):
        if self.model_family not in ("heisenberg_xxz", "pauli_file", "random_pauli"):
            raise ConfigError(f"model.family: unknown family {self.model_family!r}")
        if self.model_family == "heisenberg_xxz" and self.n < 2:
            raise ConfigError("model.n: Heisenberg chain needs n >= 2")
        if self.model_family == "pauli_file" and not self.model_path:
            raise ConfigError("model.path: required for family pauli_file")
        if self.kind not in KINDS:
            raise ConfigError(f"cooling.kind: unknown kind {self.kind!r}")
        if self.mode not in ("shot", "expectation"):
            raise ConfigError(f"run.mode: must be 'shot' or 'expectation', got {self.mode!r}")
        if self.mode == "shot" and self.seed is None:
            raise ConfigError("run.seed: required in shot mode")
        if self.n_shots < 1:
            raise ConfigError("spectrum.n_shots: must be >= 1")
        if not self.taus or any(t < 0 for t in self.taus):
            raise ConfigError("spectrum.tau: must be nonnegative")
        if self.x_m is None and self.epsilon_cutoff is None:
            raise ConfigError("spectrum.x_m: give x_m or epsilon")

    def resolved(self) -> dict:
        keys = [
            "model_family", "n", "j_coupling", "zz_anisotropy", "field_h", "periodic",
            "model_path", "model_terms", "model_seed", "bitstring", "kind", "mode",
            "seed", "out_dir", "taus", "x_m", "epsilon_cutoff", "n_shots",
            "e_min", "e_max", "grid_points", "min_height", "min_separation",
            "epsilon_list", "repetitions", "target", "observable_text",
            "observable_path", "energy", "epsilon_budget", "confidence",
            "observable_shots",
        ]
        return {k: getattr(self, k) for k in keys}


def build_model(cfg: RunConfig) -> PauliSum:
    if cfg.model_family == "heisenberg_xxz":
        return heisenberg(cfg.n, cfg.j_coupling, cfg.zz_anisotropy, cfg.field_h, cfg.periodic)
    if cfg.model_family == "pauli_file":
        return load_pauli_file(cfg.model_path)
    return random_pauli_hamiltonian(cfg.n, cfg.model_terms, cfg.model_seed)


def build_initial_state(cfg: RunConfig, hamiltonian: PauliSum) -> StateVector:
    bits = cfg.bitstring or "0" * hamiltonian.n
    if len(bits) != hamiltonian.n:
        raise ConfigError(f"state.bitstring: length {len(bits)} but model has {hamiltonian.n} qubits")
    return basis_state(bits)


def build_system(cfg: RunConfig) -> EigenSystem:
    hamiltonian = build_model(cfg)
    return eigendecompose(hamiltonian, build_initial_state(cfg, hamiltonian))


# -- output helpers --------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, float) and not math.isnan(value):
        return f"{value:.12g}"
    return str(value)


def _echo_lines(cfg: RunConfig, extra: dict | None = None):
    items = dict(cfg.resolved())
    items.update(extra or {})
    return [f"# {key} = {items[key]}" for key in sorted(items)]


def write_csv(path, columns, rows, cfg: RunConfig, extra: dict | None = None):
    lines = _echo_lines(cfg, extra)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _resolve_x_m(cfg: RunConfig, cf: CoolingFunction) -> float:
    if cfg.x_m is not None:
        return cfg.x_m
    # cutoff from a target accuracy: difference of two sampled times stays
    # within x_m up to tail mass epsilon
    return math.sqrt(2.0) * cf.cutoff_L(cfg.epsilon_cutoff / 2.0)


def _default_window(es: EigenSystem) -> tuple[float, float]:
    keep = es.energies_original()[es.overlaps > OVERLAP_FLOOR]
    if len(keep) == 0:
        keep = es.energies_original()
    return float(keep.min() - 1.0), float(keep.max() + 1.0)


def _grid(cfg: RunConfig, es: EigenSystem) -> np.ndarray:
    lo = cfg.e_min if cfg.e_min is not None else _default_window(es)[0]
    hi = cfg.e_max if cfg.e_max is not None else _default_window(es)[1]
    if not hi > lo:
        raise ConfigError(f"spectrum.e_min/e_max: empty window [{lo}, {hi}]")
    if cfg.grid_points is not None:
        points = cfg.grid_points
    else:
        overlapped = np.sort(es.energies_original()[es.overlaps > OVERLAP_FLOOR])
        gaps = np.diff(overlapped)
        gaps = gaps[gaps > 1e-9]
        gap_guess = float(gaps.min()) if len(gaps) else (hi - lo) / 10.0
        points = max(3, int(math.ceil((hi - lo) / (gap_guess / 10.0))) + 1)
    return np.linspace(lo, hi, points)


# -- drivers ----------------------------------------------------------------


def run_spectrum(cfg: RunConfig, out_dir: str | None = None) -> dict:
    """Scan the normalization factor over trial energies, emit the estimate
    curve, the exact oracle curve, the eigenvalue table, and detected peaks.
    """
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    cf = CoolingFunction(cfg.kind)
    es = build_system(cfg)
    x_m = _resolve_x_m(cfg, cf)
    grid_original = _grid(cfg, es)
    grid = grid_original + es.shift
    seed = 0 if cfg.seed is None else cfg.seed

    eig_rows = [
        (i, es.energies_original()[i], es.energies[i], es.overlaps[i])
        for i in range(es.dim)
        if es.overlaps[i] > 1e-12
    ]
    write_csv(os.path.join(out, "eigenvalues.csv"),
              ["index", "E_original_frame", "E_shifted", "overlap"], eig_rows, cfg,
              {"shift": es.shift})

    multi = len(cfg.taus) > 1
    all_peaks = []
    results = {"files": [], "peaks": []}
    for tau in cfg.taus:
        suffix = f"_tau{tau:g}" if multi else ""
        curve = scan_energy(es, cf, tau, x_m, grid, cfg.n_shots,
                            derive_seed(seed, int(round(tau * 1e6))), cfg.mode)
        rows = [(grid_original[i], grid[i], curve.d_values[i], cfg.mode)
                for i in range(len(grid))]
        spec_path = os.path.join(out, f"spectrum{suffix}.csv")
        write_csv(spec_path, ["E_original_frame", "E_shifted", "D_hat", "mode"], rows, cfg,
                  {"shift": es.shift, "tau": tau, "x_m_resolved": x_m})

        oracle = exact_D_curve(es, cf, tau, grid)
        oracle_rows = [(grid_original[i], grid[i], oracle[i]) for i in range(len(grid))]
        oracle_path = os.path.join(out, f"oracle{suffix}.csv")
        write_csv(oracle_path, ["E_original_frame", "E_shifted", "D_exact"], oracle_rows, cfg,
                  {"shift": es.shift, "tau": tau, "x_m_resolved": x_m})

        peaks = find_peaks(curve, cfg.min_height, cfg.min_separation)
        all_peaks.append({
            "tau": tau,
            "peaks": [
                {"E_original_frame": p.energy - es.shift, "E_shifted": p.energy, "D_hat": p.height}
                for p in peaks
            ],
        })
        results["files"].extend([spec_path, oracle_path])
        results["peaks"].append((tau, peaks))

    peaks_path = os.path.join(out, "peaks.json")
    with open(peaks_path, "w") as fh:
        json.dump({"config": _jsonable(cfg.resolved()), "shift": es.shift, "scans": all_peaks},
                  fh, indent=2, sort_keys=True)
    results["files"].append(peaks_path)
    results["shift"] = es.shift
    results["eigensystem"] = es
    return results


def _resolve_target_index(cfg: RunConfig, es: EigenSystem) -> int:
    if cfg.target == "auto":
        return int(np.argmax(es.overlaps))
    index = int(cfg.target)
    if not 0 <= index < es.dim:
        raise ConfigError(f"cool.target: index {index} out of range")
    return index


def _gap_at(es: EigenSystem, j: int) -> float:
    distinct = np.unique(np.round(es.energies, 9))
    dist = np.abs(distinct - es.energies[j])
    dist = dist[dist > 1e-9]
    return float(dist.min()) if len(dist) else math.inf


def estimate_projector_overlap(es: EigenSystem, cf: CoolingFunction, tau: float,
                               x_m: float, energy: float, j: int, n_shots: int,
                               seed: int, mode: str = "expectation"):
    """Target-projector expectation on the filtered state, by sampling.

    The numerator samples time pairs exactly like an observable shot;
    the per-shot overlap for a rank-one target is p_j e^{i tau (x - x') E_j},
    with outcome bits drawn from it in shot mode (estimator scale 1, valid
    because the magnitude never exceeds 1).  Returns (ratio, d_hat, n_hat).
    """
    d = estimate_D(es, cf, tau, x_m, energy, n_shots, seed, mode)
    u = _uniform_blocks(seed, PURPOSE_N, n_shots, 8)
    if cf.kind == "triangle":
        xs = np.empty(n_shots)
        xps = np.empty(n_shots)
        for k in range(n_shots):
            rng = shot_rng(seed, k, PURPOSE_N)
            xs[k] = cf.sample_x(rng)
            xps[k] = cf.sample_x(rng)
        u_b, u_a = u[:, 3], u[:, 4]
    else:
        clip = np.clip
        xs = cf.x_from_uniform(clip(u[:, 0], 1e-16, 1 - 1e-16))
        xps = cf.x_from_uniform(clip(u[:, 1], 1e-16, 1 - 1e-16))
        u_b, u_a = u[:, 3], u[:, 4]
    keep = (np.abs(xs) <= x_m) & (np.abs(xps) <= x_m)
    p_j = float(es.overlaps[j])
    e_j = float(es.energies[j])
    v = np.where(keep, p_j * np.exp(1j * tau * (xs - xps) * e_j), 0.0)
    if mode == "shot":
        b = (u_b >= 0.5).astype(np.int8)
        part = np.where(b == 0, v.real, v.imag)
        a = (u_a >= 0.5 * (1.0 + part)).astype(np.int8)
        raw = np.where(keep, 2.0 * (1j ** b.astype(complex)) * np.where(a == 0, 1.0, -1.0), 0.0)
    else:
        raw = v
    n_hat = float((raw * np.exp(-1j * tau * (xs - xps) * energy)).sum().real / n_shots)
    floor = max(3.0 * d.standard_error, 1e-6)
    if d.value < floor:
        raise DegenerateRatioError(d.value, floor)
    return n_hat / d.value, d.value, n_hat


def run_cooling_scaling(cfg: RunConfig, out_dir: str | None = None) -> dict:
    """Sweep the maximal evolution time and record target-state infidelity.

    Per target accuracy eps: tau = g^{-1}(eps p / 12) / gap and
    x_m = sqrt(2) L(eps p / 12), so every point carries its own resource
    pair and t_m = tau x_m grows as the accuracy tightens.  Rows hold the
    sampled infidelity, the exact-filter infidelity (no cutoff), and the
    infinite-sample theoretical bound.  Shot mode repeats the whole setup
    and adds the standard deviation across repetitions.
    """
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    cf = CoolingFunction(cfg.kind)
    es = build_system(cfg)
    j = _resolve_target_index(cfg, es)
    gap = _gap_at(es, j)
    overlap = float(es.overlaps[j])
    if overlap <= 0.0:
        raise ConfigError("cool.target: initial state has no overlap with the target")
    energy = float(es.energies[j])
    seed = 0 if cfg.seed is None else cfg.seed
    reps = cfg.repetitions if cfg.mode == "shot" else 1

    columns = ["tau", "x_m", "t_m", "infidelity_estimated"]
    if cfg.mode == "shot":
        columns.append("infidelity_std")
    columns += ["infidelity_oracle", "theoretical_bound"]
    rows = []
    for point, eps in enumerate(cfg.epsilon_list):
        # accuracy-driven schedule: filter-time rule tau = g^{-1}(eps/2)/gap;
        # the cutoff tail target shrinks like eps^2 because the filter error
        # itself is quadratic in the window value, keeping truncation bias
        # subdominant at every point of the sweep
        inner = max(min(eps / 2.0, 1.0 - 1e-9), 1e-300)
        tail_target = max(min(eps ** 2 / 20.0, 1.0 - 1e-9), 1e-300)
        tau = cf.g_inverse(inner) / gap
        x_m = math.sqrt(2.0) * cf.cutoff_L(tail_target)
        if tau <= 0.0:
            continue
        values = []
        for rep in range(reps):
            ratio, _, _ = estimate_projector_overlap(
                es, cf, tau, x_m, energy, j, cfg.n_shots,
                derive_seed(seed, point, rep), cfg.mode)
            values.append(1.0 - ratio)
        estimated = float(np.mean(values))
        oracle = float(cooled_state(es, cf, tau, energy).infidelity[j])
        bound = infidelity_bound(cf, tau, x_m, overlap, gap)
        row = [tau, x_m, tau * x_m, estimated]
        if cfg.mode == "shot":
            row.append(float(np.std(values, ddof=1)) if reps > 1 else 0.0)
        row += [oracle, bound]
        rows.append(row)

    path = os.path.join(out, "cooling.csv")
    write_csv(path, columns, rows, cfg,
              {"target_index": j, "target_overlap": overlap, "gap": gap,
               "target_energy_original": energy - es.shift})
    return {"files": [path], "rows": rows, "columns": columns,
            "target_index": j, "overlap": overlap, "gap": gap, "eigensystem": es}


def _load_observable(cfg: RunConfig, n: int) -> PauliSum:
    if cfg.observable_path:
        obs = load_pauli_file(cfg.observable_path)
    elif cfg.observable_text:
        obs = parse_pauli_sum(cfg.observable_text.replace(";", "\n"))
    else:
        raise ConfigError("observable.observable: no observable given")
    if obs.n != n:
        raise ConfigError(f"observable.observable: acts on {obs.n} qubits, model has {n}")
    return obs


def run_observable(cfg: RunConfig, out_dir: str | None = None) -> dict:
    """Estimate one observable on the filtered state at a known or scanned
    energy; writes a JSON report plus a one-row CSV in the documented
    observable schema."""
    out = out_dir or cfg.out_dir
    os.makedirs(out, exist_ok=True)
    cf = CoolingFunction(cfg.kind)
    es = build_system(cfg)
    observable = _load_observable(cfg, es.n)
    seed = 0 if cfg.seed is None else cfg.seed

    if cfg.energy == "auto":
        grid = _grid(cfg, es) + es.shift
        curve = scan_energy(es, cf, max(cfg.taus), _resolve_x_m(cfg, cf), grid,
                            cfg.n_shots, derive_seed(seed, 999), cfg.mode)
        peaks = find_peaks(curve, cfg.min_height, cfg.min_separation)
        if not peaks:
            raise DegenerateRatioError(0.0, cfg.min_height)
        best = max(peaks, key=lambda p: p.height)
        energy = best.energy
    else:
        energy = float(cfg.energy) + es.shift
    j = int(np.argmin(np.abs(es.energies - energy)))
    overlap = float(es.overlaps[j])
    gap = _gap_at(es, j)

    budget = budget_for_observable(cf, cfg.epsilon_budget, max(min(overlap, 1 - 1e-9), 1e-6),
                                   gap, cfg.confidence)
    n_shots = cfg.observable_shots or budget.n_shots
    tau, x_m = budget.tau, budget.x_m

    d = estimate_D(es, cf, tau, x_m, energy, n_shots, seed, cfg.mode)
    n = estimate_N(es, cf, tau, x_m, energy, observable, n_shots, seed, cfg.mode)
    floor = max(3.0 * d.standard_error, 1e-6)
    if d.value < floor:
        raise DegenerateRatioError(d.value, floor)
    o_hat = n.value / d.value

    oracle_vec = es.vectors[:, j]
    oracle = float(np.real(oracle_vec.conj() @ (observable.to_matrix() @ oracle_vec)))
    guarantee = cfg.epsilon_budget * (observable.one_norm + 1.0)

    report = {
        "config": _jsonable(cfg.resolved()),
        "energy_shifted": energy,
        "energy_original": energy - es.shift,
        "target_index": j,
        "overlap": overlap,
        "gap": gap,
        "budget": {"tau": tau, "x_m": x_m, "t_m": budget.t_m, "n_shots": n_shots,
                   "confidence": budget.confidence, "delta": budget.delta},
        "D_hat": d.value,
        "N_hat": n.value,
        "O_hat": o_hat,
        "oracle": oracle,
        "abs_error": abs(o_hat - oracle),
        "error_guarantee": guarantee,
        "within_guarantee": bool(abs(o_hat - oracle) <= guarantee),
    }
    json_path = os.path.join(out, "observable.json")
    with open(json_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
    csv_path = os.path.join(out, "observable.csv")
    write_csv(csv_path,
              ["tau", "x_m", "t_m", "N_M", "E", "D_hat", "N_hat", "O_hat", "stderr_D", "stderr_N"],
              [(tau, x_m, budget.t_m, n_shots, energy, d.value, n.value, o_hat,
                d.standard_error, n.standard_error)],
              cfg, {"shift": es.shift})
    return {"files": [json_path, csv_path], "report": report}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def run_validation(seed: int = 0, n_draws: int = 100_000):
    return validate_functions(seed=seed, n_draws=n_draws)
