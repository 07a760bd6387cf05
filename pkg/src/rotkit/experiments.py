"""Rotation-autoencoder benchmark.

For each representation kind an MLP encoder is trained against the fixed
differentiable decoder f on freshly sampled rotation batches; the trained
composition is evaluated on a held-out test set by geodesic error (in
degrees). Continuous representations train to uniformly small errors while
the classic 3D/4D encodings keep producing large errors at some rotations.

Everything is deterministic given (config, seed): training batches, the
test set, and weight initialization come from separate named substreams of
the run seed, and per-kind runs share the training stream so every kind
sees identical batches.
"""

import csv
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import autodiff as ad
from .decoders import decoder_for_kind
from .exceptions import ConfigError, EmptyInput, RotkitError
from .formatting import csv_float
from .kinds import kind_from_name
from .linalg import geodesic_distance
from .nn import AdamState, LOSSES, adam_step, init_mlp, mlp_forward, mlp_forward_np
from .representations import pair_for_kind
from .sampling import sample_axis_angle, sample_uniform_so3

logger = logging.getLogger(__name__)

CONFIG_SCHEMA_VERSION = 1
PERCENTILE_GRID = (10, 25, 50, 75, 90, 95, 99, 100)

# The representations compared in the benchmark: the continuous 6D/5D maps
# against the classic discontinuous encodings.
DEFAULT_KINDS = ("gs6", "p5", "quat", "axisangle", "euler", "rodriguez", "hemiquat")
DISCONTINUOUS_KINDS = ("quat", "axisangle", "euler", "rodriguez", "hemiquat")

_SAMPLERS = ("axis_angle", "haar")

# Substream tags for deriving independent generators from the run seed.
_STREAM_TRAIN, _STREAM_TEST, _STREAM_INIT = 1, 2, 3


@dataclass
class ExperimentConfig:
    kinds: tuple = DEFAULT_KINDS
    loss: str = "l2"
    sampler: str = "axis_angle"
    eval_sampler: str = None  # defaults to `sampler`; set to cross-evaluate
    iterations: int = 50_000
    batch_size: int = 64
    lr_initial: float = 1e-5
    lr_after: float = 1e-6
    lr_switch_iteration: int = 10_000
    test_set_size: int = 10_000
    eval_every: int = 1_000
    seed: int = 0
    leaky_slope: float = 0.01
    angle_range: tuple = (0.0, float(np.pi))
    input_encoding: str = "matrix9"
    workers: int = 1
    schema_version: int = CONFIG_SCHEMA_VERSION

    def __post_init__(self):
        self.kinds = tuple(self.kinds)
        self.angle_range = tuple(float(a) for a in self.angle_range)
        self.validate()

    def validate(self):
        if self.schema_version != CONFIG_SCHEMA_VERSION:
            raise ConfigError(f"unsupported config schema version {self.schema_version}")
        if self.iterations <= 0:
            raise ConfigError("iterations must be > 0")
        if self.batch_size <= 0:
            raise ConfigError("batch_size must be > 0")
        if self.test_set_size <= 0:
            raise ConfigError("test_set_size must be > 0")
        if self.eval_every <= 0:
            raise ConfigError("eval_every must be > 0")
        if self.workers <= 0:
            raise ConfigError("workers must be > 0")
        if self.loss not in LOSSES:
            raise ConfigError(f"loss must be one of {sorted(LOSSES)}, got {self.loss!r}")
        if self.sampler not in _SAMPLERS:
            raise ConfigError(f"sampler must be one of {_SAMPLERS}, got {self.sampler!r}")
        if self.eval_sampler is not None and self.eval_sampler not in _SAMPLERS:
            raise ConfigError(f"eval_sampler must be one of {_SAMPLERS}")
        if self.input_encoding != "matrix9":
            raise ConfigError("input_encoding: only 'matrix9' (flattened matrix) is implemented")
        if len(self.angle_range) != 2 or not self.angle_range[0] < self.angle_range[1]:
            raise ConfigError("angle_range must be an increasing (low, high) pair")
        if not self.kinds:
            raise ConfigError("kinds must not be empty")
        for label in self.kinds:
            kind = kind_from_name(label)
            decoder_for_kind(kind)  # raises for kinds without a differentiable decoder

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)


@dataclass
class RunReport:
    label: str
    eval_iterations: list
    eval_mean_deg: list
    final_mean_deg: float
    final_max_deg: float
    final_std_deg: float
    percentiles: dict
    train_losses: np.ndarray = field(repr=False)
    skipped_batches: int = 0
    eval_degenerate: int = 0


def error_percentiles(errors, grid=PERCENTILE_GRID):
    """Nearest-rank percentiles: the p-th percentile is the ceil(p/100 * N)
    smallest value, so the 100th percentile is the maximum."""
    errors = np.asarray(errors, dtype=np.float64)
    if errors.size == 0:
        raise EmptyInput("cannot take percentiles of an empty list")
    s = np.sort(errors)
    out = {}
    for p in grid:
        rank = max(1, int(np.ceil(p / 100.0 * s.size)))
        out[int(p)] = float(s[rank - 1])
    return out


def _stable_id(label):
    return int(hashlib.sha256(label.encode("utf-8")).hexdigest()[:8], 16)


def _generator(*entropy):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def _make_sampler(name, angle_range):
    if name == "axis_angle":
        return lambda rng, size: sample_axis_angle(rng, size, angle_range)
    return lambda rng, size: sample_uniform_so3(rng, size)


def evaluate_errors_deg(model, kind, rotations, chunk=4096):
    """Geodesic reconstruction errors (degrees) of the trained composition
    on a batch of rotations. Rows whose network output falls in a decoder
    degeneracy band score the worst-case 180 degrees and are counted."""
    _, f = pair_for_kind(kind)
    n = rotations.shape[0]
    errors = np.empty(n)
    degenerate = 0
    for lo in range(0, n, chunk):
        xs = rotations[lo : lo + chunk]
        reps = mlp_forward_np(model, xs.reshape(xs.shape[0], 9))
        try:
            errors[lo : lo + xs.shape[0]] = geodesic_distance(f(reps), xs)
        except RotkitError:
            for i in range(xs.shape[0]):
                try:
                    errors[lo + i] = geodesic_distance(f(reps[i]), xs[i])
                except RotkitError:
                    errors[lo + i] = np.pi
                    degenerate += 1
    return np.degrees(errors), degenerate


def train_kind(config, label):
    """Train one representation kind; returns (RunReport, MlpModel)."""
    kind = kind_from_name(label)
    decoder = decoder_for_kind(kind)
    loss_fn = LOSSES[config.loss]
    sample_train = _make_sampler(config.sampler, config.angle_range)
    sample_test = _make_sampler(config.eval_sampler or config.sampler, config.angle_range)

    train_rng = _generator(config.seed, _STREAM_TRAIN)
    test_rng = _generator(config.seed, _STREAM_TEST)
    init_rng = _generator(config.seed, _STREAM_INIT, _stable_id(label))

    model = init_mlp(kind.dim, init_rng, leaky_slope=config.leaky_slope)
    state = AdamState.for_model(
        model,
        lr_initial=config.lr_initial,
        lr_after=config.lr_after,
        lr_switch_iteration=config.lr_switch_iteration,
    )
    x_test = sample_test(test_rng, config.test_set_size)

    losses = np.full(config.iterations, np.nan)
    eval_iters, eval_means = [], []
    skipped = 0
    eval_degenerate = 0
    half = len(model.weights)  # params arrive interleaved (W, b) per layer

    for it in range(config.iterations):
        batch = sample_train(train_rng, config.batch_size)
        flat = batch.reshape(config.batch_size, 9)
        x = ad.constant(flat)
        target = ad.constant(flat)
        try:
            out, params = mlp_forward(model, x)
            loss = loss_fn(decoder(out), target)
        except RotkitError:
            skipped += 1
            logger.warning("%s: skipped degenerate batch at iteration %d", label, it)
            continue
        ad.backward(loss)
        grads = [p.grad for p in params[0::2]] + [p.grad for p in params[1::2]]
        adam_step(model, grads, state)
        losses[it] = float(loss.data)

        if (it + 1) % config.eval_every == 0 or it + 1 == config.iterations:
            errs, degen = evaluate_errors_deg(model, kind, x_test)
            eval_degenerate += degen
            eval_iters.append(it + 1)
            eval_means.append(float(errs.mean()))

    final_errs, degen = evaluate_errors_deg(model, kind, x_test)
    eval_degenerate += degen
    report = RunReport(
        label=label,
        eval_iterations=eval_iters,
        eval_mean_deg=eval_means,
        final_mean_deg=float(final_errs.mean()),
        final_max_deg=float(final_errs.max()),
        final_std_deg=float(final_errs.std()),
        percentiles=error_percentiles(final_errs),
        train_losses=losses,
        skipped_batches=skipped,
        eval_degenerate=eval_degenerate,
    )
    return report, model


def _train_worker(args):
    config_dict, label = args
    report, _ = train_kind(ExperimentConfig.from_dict(config_dict), label)
    return label, report


def run_sanity_test(config):
    """Train every configured kind; returns {label: RunReport}.

    Kinds share nothing, so with workers > 1 they train in separate
    processes; results are identical either way.
    """
    config.validate()
    labels = list(config.kinds)
    if config.workers > 1 and len(labels) > 1:
        jobs = [(config.to_dict(), label) for label in labels]
        with ProcessPoolExecutor(max_workers=min(config.workers, len(labels))) as pool:
            results = dict(pool.map(_train_worker, jobs))
    else:
        results = {}
        for label in labels:
            logger.info("training %s", label)
            results[label], _ = train_kind(config, label)
    return {label: results[label] for label in labels}


def write_report(reports, config, out_dir, wall_time_s=0.0):
    """Write per-kind training-curve CSVs, the cross-kind percentile table,
    and a JSON manifest echoing the config and seed.

    CSV content is byte-identical across runs with the same seed; the
    manifest additionally records wall time, which is not.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for label, report in reports.items():
        path = os.path.join(out_dir, f"curve_{label}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["iteration", "mean_error_deg"])
            for it, mean in zip(report.eval_iterations, report.eval_mean_deg):
                writer.writerow([it, csv_float(mean)])
        paths.append(path)

    table = os.path.join(out_dir, "percentiles.csv")
    with open(table, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["representation", "mean_deg", "max_deg", "std_deg"]
            + [f"p{p}" for p in PERCENTILE_GRID]
        )
        for label, report in reports.items():
            writer.writerow(
                [label, csv_float(report.final_mean_deg), csv_float(report.final_max_deg),
                 csv_float(report.final_std_deg)]
                + [csv_float(report.percentiles[p]) for p in PERCENTILE_GRID]
            )
    paths.append(table)

    manifest = {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "config": config.to_dict(),
        "seed": config.seed,
        "wall_time_s": wall_time_s,
        "skipped_batches": {label: r.skipped_batches for label, r in reports.items()},
        "eval_degenerate": {label: r.eval_degenerate for label, r in reports.items()},
    }
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    paths.append(manifest_path)
    return paths


def run_and_write(config, out_dir):
    """Run the benchmark and write its report files; returns the reports."""
    start = time.perf_counter()
    reports = run_sanity_test(config)
    write_report(reports, config, out_dir, wall_time_s=time.perf_counter() - start)
    return reports
