"""Experiment harness: configs, deterministic seeding, runners, records.

A run is described by a flat key-value config (JSON object, one level
deep; unknown keys are rejected).  Every trial's randomness derives from
the root seed through a documented SplitMix64 chain, so any cell of any
grid can be replayed in isolation and a rerun of the same config is
bitwise identical, regardless of worker count.

Runners:
  run_phase_grid  success probability of order selection over an
                  (n, separation) grid; emits phase cells.
  run_bench       accuracy/runtime race between the Fourier pipeline
                  and the EM baseline over a sample-size schedule.
  run_order       order selection on externally supplied samples.
  run_estimate    full pipeline (order, optional reduction, means,
                  weights) on externally supplied samples.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .design import (
    FrequencyDesign,
    ball_design,
    orthonormal_translations,
    random_translations,
)
from .em import em_fit, em_init_random
from .fourier import empirical_covariance, measurement_set, spectral_decomposition
from .metrics import DiscreteDistribution, wasserstein1
from .model import (
    GmmModel,
    SampleSet,
    random_rotation,
    sample_gmm,
    simplex_means,
    sphere_means,
)
from .music import EstimationError, GdSettings, estimate_means, projector_from_spectral
from .order import select_ratio, select_ratio_thresholded, select_threshold
from .reduce import back_project, pca_subspace, project
from .weights import estimate_weights

# ---------------------------------------------------------------------------
# seeding

_M64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    z = (z + _GAMMA) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def hash64(*parts: int) -> int:
    """Deterministic 64-bit combiner: fold each part into the state with
    the SplitMix64 finalizer.  Stable across platforms and runs; this is
    the only path from a root seed to per-trial seeds."""
    h = 0x243F6A8885A308D3
    for p in parts:
        h = _splitmix64((h ^ (int(p) & _M64)) & _M64)
    return h


# ---------------------------------------------------------------------------
# configuration

PHASE_CSV_HEADER = "k,d,delta,log10_n,n,trials,successes,success_rate"
BENCH_CSV_HEADER = "method,k,d,n,trial,seed,w1,runtime_ms"

_ENUMS = {
    "experiment": ("phase", "bench", "order", "estimate"),
    "geometry": ("simplex", "sphere"),
    "weight_scheme": ("uniform", "dirichlet"),
    "translation_scheme": ("orthonormal", "random"),
    "reduce": ("auto", "on", "off"),
    "order_rule": ("ratio_thresholded", "ratio", "threshold"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat, typed run description; see README for the key-by-key schema.
    Defaults reproduce the standard protocols: order-selection grids use
    L = 3k ball points and a full orthonormal translation basis, the
    accuracy benchmarks L = 5k."""

    experiment: str = "phase"
    k: int = 3
    d: int = 10
    sigma: float = 1.0
    geometry: str = "simplex"
    delta: float = 4.0
    sphere_radius: float = 4.0
    weight_scheme: str = "uniform"
    points_per_component: int = 3
    n_points: int = 0
    ball_radius: float = 0.5
    translation_scheme: str = "orthonormal"
    n_translations: int = 0
    translation_scale: float = 1.0
    order_rule: str = "ratio_thresholded"
    eps_floor: float = 1e-3
    gamma: float = 0.5
    max_steps: int = 50
    grad_tol: float = 1e-8
    dedup_delta: float = 1.0
    center_data: bool = True
    reduce: str = "auto"
    n: int = 10000
    seed: int = 0
    trials: int = 96
    log10_n_min: float = 3.0
    log10_n_max: float = 5.0
    log10_n_step: float = 0.0513
    delta_min: float = 2.0
    delta_max: float = 7.0
    delta_step: float = 0.128
    n_schedule: tuple = (5000, 10000, 15000, 20000, 25000, 30000,
                         35000, 40000, 45000, 50000)
    em_max_iter: int = 1000
    em_tol: float = 1e-6
    samples_file: str = ""
    points: tuple = ()
    translations: tuple = ()

    def __post_init__(self):
        for key, allowed in _ENUMS.items():
            if getattr(self, key) not in allowed:
                raise ValueError(f"{key} must be one of {allowed}")
        if self.k < 1 or self.d < 1:
            raise ValueError("k and d must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.eps_floor <= 0:
            raise ValueError("eps_floor must be positive")
        if not self.n_schedule or any(int(v) < 1 for v in self.n_schedule):
            raise ValueError("n_schedule must be nonempty positive ints")
        object.__setattr__(self, "n_schedule", tuple(int(v) for v in self.n_schedule))
        object.__setattr__(self, "points", _freeze(self.points))
        object.__setattr__(self, "translations", _freeze(self.translations))

    def gd_settings(self) -> GdSettings:
        return GdSettings(gamma=self.gamma, max_steps=self.max_steps,
                          grad_tol=self.grad_tol, dedup_delta=self.dedup_delta)


def _freeze(rows) -> tuple:
    return tuple(tuple(float(x) for x in row) for row in rows)


_BOOL_KEYS = {"center_data"}
_LIST_KEYS = {"n_schedule", "points", "translations"}


def config_from_dict(doc: dict) -> ExperimentConfig:
    """Build a config from a parsed JSON object.  Unknown keys and
    mistyped values are errors, not warnings."""
    fields = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
    unknown = sorted(set(doc) - set(fields))
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    kwargs = {}
    for key, value in doc.items():
        f = fields[key]
        if key in _LIST_KEYS:
            if not isinstance(value, (list, tuple)):
                raise ValueError(f"config key {key} must be a list")
            kwargs[key] = tuple(value)
        elif key in _BOOL_KEYS:
            if not isinstance(value, bool):
                raise ValueError(f"config key {key} must be a boolean")
            kwargs[key] = value
        elif f.type == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"config key {key} must be an integer")
            kwargs[key] = value
        elif f.type == "float":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"config key {key} must be a number")
            kwargs[key] = float(value)
        elif f.type == "str":
            if not isinstance(value, str):
                raise ValueError(f"config key {key} must be a string")
            kwargs[key] = value
        else:  # pragma: no cover
            kwargs[key] = value
    return ExperimentConfig(**kwargs)


def load_config(path: str) -> ExperimentConfig:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    return config_from_dict(doc)


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    """lo, lo+step, ... while the value stays <= hi + 1e-9 (endpoint kept
    when the step divides the range to within that tolerance)."""
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(max(count, 1))


# ---------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class PhaseCell:
    """One grid cell of the order-selection phase diagram."""

    k: int
    d: int
    delta: float
    log10_n: float
    n: int
    trials: int
    successes: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    def csv_row(self) -> str:
        return ",".join([
            str(self.k), str(self.d), repr(self.delta), repr(self.log10_n),
            str(self.n), str(self.trials), str(self.successes),
            repr(self.success_rate),
        ])


@dataclass(frozen=True)
class BenchRecord:
    """One method's outcome on one trial; the bench CSV row unit."""

    method: str
    k: int
    d: int
    n: int
    trial: int
    seed: int
    w1: float
    runtime_ms: float

    def csv_row(self) -> str:
        return ",".join([
            self.method, str(self.k), str(self.d), str(self.n),
            str(self.trial), str(self.seed), repr(self.w1),
            repr(self.runtime_ms),
        ])


@dataclass(frozen=True)
class TrialRecord:
    """Full per-trial outcome of a bench run, with the per-phase wall
    clock of the Fourier pipeline and the EM totals."""

    k: int
    d: int
    n: int
    trial: int
    seed: int
    w1_fourier: float
    w1_em: float
    measure_ms: float
    svd_ms: float
    descent_ms: float
    weights_ms: float
    em_ms: float
    em_iters: int

    @property
    def fourier_ms(self) -> float:
        return self.measure_ms + self.svd_ms + self.descent_ms + self.weights_ms

    def bench_records(self) -> tuple[BenchRecord, BenchRecord]:
        common = dict(k=self.k, d=self.d, n=self.n, trial=self.trial, seed=self.seed)
        return (
            BenchRecord(method="fourier", w1=self.w1_fourier,
                        runtime_ms=self.fourier_ms, **common),
            BenchRecord(method="em", w1=self.w1_em, runtime_ms=self.em_ms, **common),
        )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @staticmethod
    def from_dict(doc: dict) -> "TrialRecord":
        return TrialRecord(**doc)


def write_phase_csv(cells: list[PhaseCell], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(PHASE_CSV_HEADER + "\n")
        for cell in cells:
            fh.write(cell.csv_row() + "\n")


def read_phase_csv(path: str) -> list[PhaseCell]:
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != PHASE_CSV_HEADER:
            raise ValueError(f"unexpected phase CSV header: {header}")
        out = []
        for row in reader:
            cell = PhaseCell(
                k=int(row[0]), d=int(row[1]), delta=float(row[2]),
                log10_n=float(row[3]), n=int(row[4]), trials=int(row[5]),
                successes=int(row[6]),
            )
            if float(row[7]) != cell.success_rate:
                raise ValueError("success_rate column is inconsistent")
            out.append(cell)
    return out


def write_bench_csv(records: list[BenchRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(BENCH_CSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")


def read_bench_csv(path: str) -> list[BenchRecord]:
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != BENCH_CSV_HEADER:
            raise ValueError(f"unexpected bench CSV header: {header}")
        return [
            BenchRecord(
                method=row[0], k=int(row[1]), d=int(row[2]), n=int(row[3]),
                trial=int(row[4]), seed=int(row[5]), w1=float(row[6]),
                runtime_ms=float(row[7]),
            )
            for row in reader
        ]


def write_trials_json(trials: list[TrialRecord], path: str) -> None:
    with open(path, "w") as fh:
        json.dump([t.to_dict() for t in trials], fh, indent=1)


def read_trials_json(path: str) -> list[TrialRecord]:
    with open(path) as fh:
        return [TrialRecord.from_dict(doc) for doc in json.load(fh)]


# ---------------------------------------------------------------------------
# sample-file input

def load_samples_csv(path: str) -> SampleSet:
    """Read samples, one row per sample, d float columns.  A first row
    that does not parse as floats is taken as a header; any later
    malformed or ragged row raises with its 1-based line number."""
    rows = []
    width = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                vals = [float(cell) for cell in row]
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric value in row"
                ) from None
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise ValueError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(vals)}"
                )
            rows.append(vals)
    if not rows:
        raise ValueError(f"{path}: no sample rows found")
    return SampleSet(data=np.asarray(rows), seed=0)


# ---------------------------------------------------------------------------
# shared pipeline pieces

def _make_means(cfg: ExperimentConfig, delta: float, seed: int) -> np.ndarray:
    if cfg.geometry == "simplex":
        # random orientation per trial; the axis-aligned embedding puts the
        # pairwise mean gaps on a lattice that a unit-vector translation grid
        # can alias (phase gaps near multiples of 2pi kill the k-th singular
        # value), which turns sharp thresholds into orientation artifacts
        mu = simplex_means(cfg.k, delta, cfg.d)
        return mu @ random_rotation(cfg.d, seed).T
    # sphere draws must clear the dedup radius, or the descent's
    # distinctness filter cannot possibly accept k centers; reject and
    # redraw (deterministically) until the margin holds
    floor = 1.3 * cfg.dedup_delta
    for attempt in range(100):
        mu = sphere_means(cfg.k, cfg.d, cfg.sphere_radius, hash64(seed, attempt))
        if cfg.k == 1:
            return mu
        gaps = np.linalg.norm(mu[:, None] - mu[None], axis=-1)
        if gaps[np.triu_indices(cfg.k, 1)].min() > floor:
            return mu
    raise ValueError(
        f"could not draw k={cfg.k} sphere means separated by > {floor:.3g} "
        f"at radius {cfg.sphere_radius}"
    )


def _make_weights(cfg: ExperimentConfig, seed: int) -> np.ndarray:
    if cfg.weight_scheme == "uniform":
        return np.full(cfg.k, 1.0 / cfg.k)
    w = np.random.default_rng(seed).dirichlet(np.ones(cfg.k))
    return w / w.sum()


def _translations(cfg: ExperimentConfig, d: int, seed: int) -> np.ndarray:
    if cfg.translations:
        return np.asarray(cfg.translations)
    count = cfg.n_translations if cfg.n_translations > 0 else d + 1
    if cfg.translation_scheme == "orthonormal":
        return orthonormal_translations(d, count)
    return random_translations(count, d, cfg.translation_scale, seed)


def _design(cfg: ExperimentConfig, d: int, L: int, seed: int) -> FrequencyDesign:
    if cfg.points:
        pts = np.asarray(cfg.points)
        if pts.shape[1] != d:
            raise ValueError("explicit points have the wrong dimension")
        base = FrequencyDesign(points=pts, translations=np.zeros((1, d)),
                               meta="explicit")
    else:
        base = ball_design(L, cfg.ball_radius, d, seed)
    return base.with_translations(_translations(cfg, d, hash64(seed, 0xEE)))


def _select(cfg: ExperimentConfig, spec):
    if cfg.order_rule == "ratio_thresholded":
        return select_ratio_thresholded(spec, cfg.eps_floor)
    if cfg.order_rule == "ratio":
        return select_ratio(spec)
    return select_threshold(spec, cfg.eps_floor)


# ---------------------------------------------------------------------------
# phase grid

def _phase_cell(args) -> PhaseCell:
    cfg, row, col, delta, log10_n = args
    n = int(round(10.0**log10_n))
    L = cfg.n_points if cfg.n_points > 0 else cfg.points_per_component * cfg.k
    successes = 0
    for t in range(cfg.trials):
        cell_seed = hash64(cfg.seed, row, col, t)
        means = _make_means(cfg, delta, hash64(cell_seed, 1))
        weights = _make_weights(cfg, hash64(cell_seed, 5))
        model = GmmModel(weights=weights, means=means, sigma=cfg.sigma)
        design = _design(cfg, cfg.d, L, hash64(cell_seed, 2))
        samples = sample_gmm(model, n, hash64(cell_seed, 3))
        ms = measurement_set(samples, design, cfg.sigma)
        spec = spectral_decomposition(empirical_covariance(ms))
        if _select(cfg, spec).k_hat == cfg.k:
            successes += 1
    return PhaseCell(k=cfg.k, d=cfg.d, delta=float(delta),
                     log10_n=float(log10_n), n=n, trials=cfg.trials,
                     successes=successes)


def run_phase_grid(cfg: ExperimentConfig, workers: int = 1) -> list[PhaseCell]:
    """Sweep the (log10 n, separation) grid; rows iterate separation,
    columns sample size.  Cell results depend only on (root seed, row,
    col, trial), so worker count never changes the output."""
    d_axis = grid_axis(cfg.delta_min, cfg.delta_max, cfg.delta_step)
    n_axis = grid_axis(cfg.log10_n_min, cfg.log10_n_max, cfg.log10_n_step)
    tasks = [
        (cfg, row, col, float(delta), float(log10_n))
        for row, delta in enumerate(d_axis)
        for col, log10_n in enumerate(n_axis)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_phase_cell, tasks, chunksize=4))
    return [_phase_cell(t) for t in tasks]


# ---------------------------------------------------------------------------
# benchmark

def _fourier_trial(cfg: ExperimentConfig, model: GmmModel, samples: SampleSet,
                   design_seed: int):
    """Timed Fourier pipeline with the component count known; returns
    (estimate atoms, weights, timings dict)."""
    k = cfg.k
    reduce_path = cfg.reduce == "on" or (cfg.reduce == "auto" and k < cfg.d)
    L = cfg.n_points if cfg.n_points > 0 else cfg.points_per_component * k
    timings = {"measure_ms": 0.0, "svd_ms": 0.0, "descent_ms": 0.0,
               "weights_ms": 0.0}
    if reduce_path:
        t0 = time.perf_counter()
        sub = pca_subspace(samples, k, centered=cfg.center_data)
        work = project(samples, sub)
        timings["svd_ms"] += (time.perf_counter() - t0) * 1e3
        d_eff = k
    else:
        sub = None
        work = samples
        d_eff = cfg.d
    design = _design(cfg, d_eff, L, design_seed)
    t0 = time.perf_counter()
    ms = measurement_set(work, design, cfg.sigma)
    C = empirical_covariance(ms)
    timings["measure_ms"] += (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    spec = spectral_decomposition(C)
    proj = projector_from_spectral(spec, k, design)
    timings["svd_ms"] += (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    est = estimate_means(work, proj, k, cfg.gd_settings())
    timings["descent_ms"] += (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    wsol = estimate_weights(est.centers, ms)
    timings["weights_ms"] += (time.perf_counter() - t0) * 1e3
    centers = back_project(est.centers, sub) if sub is not None else est.centers
    return centers, wsol.weights, timings


def _bench_trial(args) -> TrialRecord:
    cfg, n_index, trial = args
    n = cfg.n_schedule[n_index]
    seed = hash64(cfg.seed, 1, n_index, trial)
    # model and design seeds are paired across the schedule: the same
    # trial index meets the same mixture at every n
    means = _make_means(cfg, cfg.delta, hash64(cfg.seed, 101, trial))
    weights = _make_weights(cfg, hash64(cfg.seed, 103, trial))
    model = GmmModel(weights=weights, means=means, sigma=cfg.sigma)
    samples = sample_gmm(model, n, seed)
    truth = DiscreteDistribution.from_model(model)

    design_seed = hash64(cfg.seed, 102, trial)
    try:
        centers, west, timings = _fourier_trial(cfg, model, samples, design_seed)
        w1_f = wasserstein1(truth, DiscreteDistribution(atoms=centers, masses=west))
    except (EstimationError, ValueError):
        w1_f = float("inf")
        timings = {"measure_ms": 0.0, "svd_ms": 0.0, "descent_ms": 0.0,
                   "weights_ms": 0.0}

    t0 = time.perf_counter()
    init = em_init_random(samples, cfg.k, hash64(cfg.seed, 2, n_index, trial))
    em = em_fit(samples, cfg.k, cfg.sigma, init, max_iter=cfg.em_max_iter,
                tol=cfg.em_tol)
    em_ms = (time.perf_counter() - t0) * 1e3
    keep = em.weights > 0
    w1_e = wasserstein1(truth, DiscreteDistribution(
        atoms=em.means[keep], masses=em.weights[keep] / em.weights[keep].sum()))

    return TrialRecord(
        k=cfg.k, d=cfg.d, n=n, trial=trial, seed=seed,
        w1_fourier=w1_f, w1_em=w1_e,
        measure_ms=timings["measure_ms"], svd_ms=timings["svd_ms"],
        descent_ms=timings["descent_ms"], weights_ms=timings["weights_ms"],
        em_ms=em_ms, em_iters=em.n_iter,
    )


def run_bench(cfg: ExperimentConfig, workers: int = 1) -> list[TrialRecord]:
    """Race the Fourier pipeline against EM over the sample schedule.
    Mixtures are paired across the schedule (trial i sees the same means
    at every n) so accuracy curves compare like against like."""
    tasks = [
        (cfg, n_index, trial)
        for n_index in range(len(cfg.n_schedule))
        for trial in range(cfg.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_trial, tasks, chunksize=1))
    return [_bench_trial(t) for t in tasks]


# ---------------------------------------------------------------------------
# external-sample runs

@dataclass(frozen=True)
class OrderReport:
    k_hat: int
    rule: str
    singular_values: tuple
    ratios: tuple
    below_floor: bool
    design_meta: str
    n: int
    d: int

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class EstimateReport:
    k_hat: int
    centers: tuple
    weights: tuple
    singular_values: tuple
    reduced: bool
    degenerate_weights: bool
    order: OrderReport
    settings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["order"] = self.order.to_dict()
        return out


def run_order(samples: SampleSet, cfg: ExperimentConfig) -> OrderReport:
    """Order selection on supplied samples with the configured rule."""
    d = samples.d
    L = cfg.n_points if cfg.n_points > 0 else 12
    design = _design(cfg, d, L, hash64(cfg.seed, 201))
    ms = measurement_set(samples, design, cfg.sigma)
    spec = spectral_decomposition(empirical_covariance(ms))
    sel = _select(cfg, spec)
    return OrderReport(
        k_hat=sel.k_hat, rule=sel.rule,
        singular_values=tuple(float(v) for v in sel.singular_values),
        ratios=tuple(float(v) for v in sel.ratios),
        below_floor=sel.below_floor, design_meta=design.meta,
        n=samples.n, d=d,
    )


def run_estimate(samples: SampleSet, cfg: ExperimentConfig) -> EstimateReport:
    """Full pipeline on supplied samples: order selection, dimension
    reduction when k_hat < d (reduce = auto), subspace descent, weights."""
    order_rep = run_order(samples, cfg)
    k_hat = order_rep.k_hat
    settings_echo = {
        "sigma": cfg.sigma, "gamma": cfg.gamma, "max_steps": cfg.max_steps,
        "grad_tol": cfg.grad_tol, "dedup_delta": cfg.dedup_delta,
        "eps_floor": cfg.eps_floor, "order_rule": cfg.order_rule,
    }
    if k_hat == 0:
        return EstimateReport(
            k_hat=0, centers=(), weights=(),
            singular_values=order_rep.singular_values, reduced=False,
            degenerate_weights=False, order=order_rep, settings=settings_echo,
        )
    d = samples.d
    reduce_path = cfg.reduce == "on" or (cfg.reduce == "auto" and k_hat < d)
    if reduce_path:
        sub = pca_subspace(samples, k_hat, centered=cfg.center_data)
        work = project(samples, sub)
        d_eff = k_hat
    else:
        sub = None
        work = samples
        d_eff = d
    L = cfg.points_per_component * k_hat if cfg.n_points == 0 else cfg.n_points
    design = _design(cfg, d_eff, L, hash64(cfg.seed, 202))
    ms = measurement_set(work, design, cfg.sigma)
    spec = spectral_decomposition(empirical_covariance(ms))
    proj = projector_from_spectral(spec, k_hat, design)
    est = estimate_means(work, proj, k_hat, cfg.gd_settings())
    wsol = estimate_weights(est.centers, ms)
    centers = back_project(est.centers, sub) if sub is not None else est.centers
    return EstimateReport(
        k_hat=k_hat,
        centers=tuple(tuple(float(x) for x in row) for row in centers),
        weights=tuple(float(w) for w in wsol.weights),
        singular_values=tuple(float(v) for v in spec.singular_values),
        reduced=reduce_path, degenerate_weights=wsol.degenerate,
        order=order_rep, settings=settings_echo,
    )
