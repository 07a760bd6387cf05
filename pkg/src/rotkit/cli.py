"""Command-line interface.

One executable, five subcommands:

- ``roundtrip``: f(g(M)) = M checks over random rotations, per kind.
- ``probe``: max adjacent-jump statistics of g on axis curves.
- ``curves``: PCA-flattened representation curves as CSV, per (kind, axis).
- ``gradcheck``: analytic vs finite-difference decoder gradients.
- ``sanity``: the autoencoder benchmark, reports written as CSV + JSON.

Exit codes: 0 success, 1 check failure, 2 usage error. ``--seed`` (or the
ROTKIT_SEED environment variable) determines all outputs.
"""

import argparse
import logging
import os
import sys
import time

import numpy as np

from . import kinds as K
from .exceptions import ConfigError, RotkitError
from .experiments import DEFAULT_KINDS, ExperimentConfig, run_sanity_test, train_kind, write_report
from .formatting import sci15
from .gradcheck import gradcheck_kind
from .kinds import kind_from_name
from .linalg import geodesic_distance
from .nn import save_checkpoint
from .probe import export_pca_curves, jump_statistic, make_axis_curve
from .representations import SimilarityTransform, pair_for_kind, similarity_f, similarity_g
from .sampling import sample_axis_angle, sample_uniform_so3, sample_uniform_so_n

logger = logging.getLogger(__name__)

# Kinds whose round-trip is measured in geodesic radians; the rest use
# per-sample Frobenius error.
_GEODESIC_KINDS = {K.EULER, K.QUATERNION, K.UNIT_QUATERNION, K.HEMI_QUATERNION, K.AXIS_ANGLE, K.RODRIGUEZ}

ROUNDTRIP_TOLERANCES = {
    K.TWO_D: 1e-12,
    K.GRAM_SCHMIDT: 1e-9,
    K.ORTHOGONAL: 1e-9,
    K.MATRIX: 1e-9,
    K.PROJECTED: 1e-7,
    K.SIMILARITY: 1e-8,
    K.EULER: 1e-6,
    K.QUATERNION: 1e-6,
    K.UNIT_QUATERNION: 1e-6,
    K.HEMI_QUATERNION: 1e-6,
    K.AXIS_ANGLE: 1e-6,
    K.RODRIGUEZ: 1e-6,
}

# The supplement-style curve export defaults to six representations.
CURVE_KINDS = ("euler", "quat", "unitquat", "axisangle", "gs6", "p5")
PROBE_KINDS = ("euler", "quat", "unitquat", "hemiquat", "axisangle", "rodriguez", "gs6", "p5")


def _default_seed(value):
    if value is not None:
        return value
    env = os.environ.get("ROTKIT_SEED")
    return int(env) if env else 0


def _parse_kinds(spec, n, k):
    return [kind_from_name(tok, n, k) for tok in spec.split(",") if tok.strip()]


def _sample_rotations(kind, rng, count, sampler):
    if kind.n == 3 and sampler == "axis_angle":
        return sample_axis_angle(rng, count)
    if kind.n == 3 and sampler == "haar":
        return sample_uniform_so3(rng, count)
    return sample_uniform_so_n(kind.n, rng, count)


def _roundtrip_error(kind, rng, count, sampler):
    """Max round-trip error of f(g(.)) over `count` random inputs."""
    if kind.tag == K.SIMILARITY:
        worst = 0.0
        for _ in range(count):
            alpha = float(np.exp(rng.uniform(-1.0, 1.0)))
            rot = sample_uniform_so_n(kind.n, rng)
            u = rng.standard_normal(kind.n)
            t = SimilarityTransform(alpha, rot, u)
            back = similarity_f(similarity_g(t), kind.n)
            err = max(
                abs(back.scale - t.scale) / t.scale,
                float(np.abs(back.rotation - t.rotation).max()),
                float(np.abs(back.translation - t.translation).max()),
            )
            worst = max(worst, err)
        return worst
    g, f = pair_for_kind(kind)
    ms = _sample_rotations(kind, rng, count, sampler)
    if kind.tag == K.ORTHOGONAL:
        # exercise both determinant signs
        flip = rng.integers(0, 2, size=count).astype(bool)
        ms = ms.copy()
        ms[flip, :, -1] *= -1.0
    back = f(g(ms))
    if kind.tag in _GEODESIC_KINDS:
        return float(geodesic_distance(back, ms).max())
    return float(np.linalg.norm((back - ms).reshape(count, -1), axis=1).max())


def cmd_roundtrip(args):
    rng = np.random.default_rng(args.seed)
    kinds = _parse_kinds(args.kinds, args.n, args.k)
    failed = False
    print(f"{'kind':<14} {'samples':>8} {'metric':<10} {'max_error':<22} {'tolerance':<12} status")
    for kind in kinds:
        tol = ROUNDTRIP_TOLERANCES[kind.tag]
        err = _roundtrip_error(kind, rng, args.samples, args.sampler)
        metric = "geodesic" if kind.tag in _GEODESIC_KINDS else "frobenius"
        ok = err <= tol
        failed |= not ok
        print(f"{kind.label:<14} {args.samples:>8} {metric:<10} {sci15(err):<22} {tol:<12g} {'PASS' if ok else 'FAIL'}")
    return 1 if failed else 0


def cmd_probe(args):
    import csv as _csv

    from .formatting import csv_float

    kinds = _parse_kinds(args.kinds, args.n, args.k)
    axes = [a.strip().upper() for a in args.axes.split(",") if a.strip()]
    reports = []
    print(f"{'kind':<14} {'axis':<5} {'step':<22} {'max_jump':<22} fitted_lipschitz")
    for kind in kinds:
        for axis in axes:
            curve = make_axis_curve(axis, args.samples)
            rep = jump_statistic(kind, curve)
            reports.append(rep)
            print(
                f"{kind.label:<14} {axis:<5} {sci15(rep.step):<22} "
                f"{sci15(rep.max_jump):<22} {sci15(rep.fitted_lipschitz)}"
            )
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh, lineterminator="\n")
            writer.writerow(["representation", "axis", "step", "max_jump", "fitted_lipschitz"])
            for rep in reports:
                writer.writerow(
                    [rep.representation.label, rep.axis_label, csv_float(rep.step),
                     csv_float(rep.max_jump), csv_float(rep.fitted_lipschitz)]
                )
        print(f"wrote {args.out}")
    return 0


def cmd_curves(args):
    kinds = _parse_kinds(args.kinds, args.n, args.k)
    axes = [a.strip().upper() for a in args.axes.split(",") if a.strip()]
    os.makedirs(args.out, exist_ok=True)
    for kind in kinds:
        for axis in axes:
            curve = make_axis_curve(axis, args.samples)
            path = os.path.join(args.out, f"curve_{kind.label}_{axis}.csv")
            export_pca_curves([kind], [curve], path)
            print(f"wrote {path}")
    return 0


def cmd_gradcheck(args):
    rng = np.random.default_rng(args.seed)
    kinds = _parse_kinds(args.kinds, 3, 1)
    losses = ["l2", "geodesic"] if args.loss == "both" else [args.loss]
    failed = False
    print(f"{'kind':<14} {'loss':<10} {'points':>6} {'max_rel_error':<22} status")
    for kind in kinds:
        for loss in losses:
            rel = gradcheck_kind(kind, loss, args.points, rng)
            ok = rel < args.tolerance
            failed |= not ok
            print(f"{kind.label:<14} {loss:<10} {args.points:>6} {sci15(rel):<22} {'PASS' if ok else 'FAIL'}")
    return 1 if failed else 0


def cmd_sanity(args):
    if args.config:
        config = ExperimentConfig.from_file(args.config)
    else:
        config = ExperimentConfig()
    overrides = {}
    if args.kinds:
        overrides["kinds"] = tuple(t.strip() for t in args.kinds.split(",") if t.strip())
    for name in ("iterations", "seed", "loss", "sampler", "test_set_size", "eval_every"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.threads is not None:
        overrides["workers"] = args.threads
    if overrides:
        data = config.to_dict()
        data.update(overrides)
        config = ExperimentConfig.from_dict(data)

    start = time.perf_counter()
    if args.save_models:
        os.makedirs(args.save_models, exist_ok=True)
        reports = {}
        for label in config.kinds:
            reports[label], model = train_kind(config, label)
            save_checkpoint(model, os.path.join(args.save_models, f"model_{label}.npz"))
    else:
        reports = run_sanity_test(config)
    wall = time.perf_counter() - start
    write_report(reports, config, args.out, wall_time_s=wall)

    print(f"{'kind':<14} {'mean_deg':<22} {'max_deg':<22} {'std_deg':<22} p99_deg")
    for label, report in reports.items():
        print(
            f"{label:<14} {sci15(report.final_mean_deg):<22} {sci15(report.final_max_deg):<22} "
            f"{sci15(report.final_std_deg):<22} {sci15(report.percentiles[99])}"
        )
    print(f"reports written to {args.out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rotkit",
        description="Rotation representation toolkit: round-trip checks, continuity probes, "
        "curve exports, gradient checks, and the autoencoder benchmark.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roundtrip", help="check f(g(M)) = M over random samples")
    p.add_argument("--kinds", default="gs6,p5,quat,unitquat,hemiquat,axisangle,rodriguez,euler")
    p.add_argument("--n", type=int, default=3, help="group dimension for generic kind tokens")
    p.add_argument("--k", type=int, default=1, help="projection count for 'proj'")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--sampler", choices=("haar", "axis_angle"), default="haar")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("probe", help="max adjacent jumps of g on axis curves")
    p.add_argument("--kinds", default=",".join(PROBE_KINDS))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--axes", default="X,Y,Z")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--out", default=None, help="optional CSV path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("curves", help="export PCA-flattened representation curves")
    p.add_argument("--kinds", default=",".join(CURVE_KINDS))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--axes", default="X,Y,Z")
    p.add_argument("--samples", type=int, default=1_000)
    p.add_argument("--out", required=True, help="output directory; one CSV per (kind, axis)")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("gradcheck", help="decoder gradients vs central finite differences")
    p.add_argument("--kinds", default="gs6,p5,quat,axisangle")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--loss", choices=("l2", "geodesic", "both"), default="both")
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_gradcheck)

    p = sub.add_parser("sanity", help="train the autoencoder benchmark and write reports")
    p.add_argument("--config", default=None, help="JSON config file (see README for the schema)")
    p.add_argument("--out", default="runs/sanity")
    p.add_argument("--kinds", default=None)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--loss", choices=("l2", "geodesic"), default=None)
    p.add_argument("--sampler", choices=("axis_angle", "haar"), default=None)
    p.add_argument("--test-set-size", dest="test_set_size", type=int, default=None)
    p.add_argument("--eval-every", dest="eval_every", type=int, default=None)
    p.add_argument("--threads", type=int, default=None, help="cap on per-kind worker processes")
    p.add_argument("--save-models", default=None, help="directory for encoder checkpoints")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sanity)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if hasattr(args, "seed"):
        args.seed = _default_seed(args.seed)
    try:
        return args.func(args)
    except (RotkitError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
