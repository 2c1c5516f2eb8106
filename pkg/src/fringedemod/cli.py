"""Command-line interface.

Subcommands:
  synth    write the stock synthetic fringe pattern (and its exact quadrature
           and true phase) as images
  demod    demodulate a fringe image (or the synthetic pattern) end to end
  full     synonym for demod with metrics; the stock reproduction run
  metrics  compare two unwrapped phase images (range sidecars restore radians)

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .fields import NonFiniteError, PhaseMap
from .imageio import read_field, write_image
from .metrics import make_mask, phase_error_stats
from .pipeline import PipelineConfig, load_config, run_pipeline
from .synth import fringe_from_model, quadrature_truth, synthetic_model, add_noise

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4

_CONFIG_FLAGS = (
    ("--input", str, "fringe image path, or 'synthetic'"),
    ("--width", int, "synthetic pattern width in pixels"),
    ("--height", int, "synthetic pattern height in pixels"),
    ("--f-c", float, "Morlet center frequency, cycles/pixel"),
    ("--s-min", float, "smallest wavelet scale, pixels"),
    ("--s-max", float, "largest wavelet scale, pixels"),
    ("--n-scales", int, "number of scales"),
    ("--spacing", str, "scale spacing: logarithmic or linear"),
    ("--bias-method", str, "bias removal: global_mean or gaussian_highpass"),
    ("--bias-sigma", float, "highpass sigma, pixels"),
    ("--window-sigma", float, "orientation window sigma, pixels"),
    ("--scan-axis", str, "scan axis: rows or columns"),
    ("--noise-sigma", float, "synthetic additive noise sigma"),
    ("--seed", int, "noise seed"),
    ("--mask-border", int, "metric mask border, pixels"),
    ("--mask-disk-radius", float, "metric mask center-disk radius, pixels"),
    ("--output-dir", str, "artifact directory"),
    ("--threads", int, "demodulation worker threads (0 = cpu count)"),
)


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    for flag, tp, help_text in _CONFIG_FLAGS:
        sub.add_argument(flag, type=tp, default=None, help=help_text)
    sub.add_argument("--png", action="store_true", default=None,
                     help="also write PNG copies of the artifacts")
    sub.add_argument("--config", type=str, default=None,
                     help="flat key = value config file; flags override it")


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig()
    if args.config is not None:
        cfg = load_config(args.config, cfg)
    updates = {}
    for flag, _, _ in _CONFIG_FLAGS:
        name = flag.lstrip("-").replace("-", "_")
        value = getattr(args, name)
        if value is not None:
            updates[name] = value
    if args.png is not None:
        updates["write_png"] = True
    return replace(cfg, **updates) if updates else cfg


def _cmd_synth(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    cfg.validate()
    model = synthetic_model(cfg.width, cfg.height)
    fringe = fringe_from_model(model)
    if cfg.noise_sigma > 0:
        fringe = add_noise(fringe, cfg.noise_sigma, cfg.seed)
    os.makedirs(cfg.output_dir, exist_ok=True)
    targets = [("fringe", fringe, 8),
               ("quadrature_truth", quadrature_truth(model), 8),
               ("phase_truth", model.phase.field, 16)]
    for stem, field, depth in targets:
        write_image(field, os.path.join(cfg.output_dir, stem + ".pgm"), depth)
        if cfg.write_png:
            write_image(field, os.path.join(cfg.output_dir, stem + ".png"), depth)
    print(f"wrote {', '.join(t[0] + '.pgm' for t in targets)} to {cfg.output_dir}")
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    artifacts = run_pipeline(cfg)
    print(artifacts.report.to_text(), end="")
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    est = PhaseMap(read_field(args.estimated, "radians"), wrapped=False)
    truth = PhaseMap(read_field(args.truth, "radians"), wrapped=False)
    h, w = est.data.shape
    mask = make_mask(h, w, args.mask_border, args.mask_disk_radius)
    stats = phase_error_stats(est, truth, mask)
    masked_fraction = 1.0 - float(mask.sum()) / mask.size
    print(f"rms_error_rad = {stats.rms!r}")
    print(f"max_abs_error_rad = {stats.max_abs!r}")
    print(f"masked_fraction = {masked_fraction!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fringedemod",
        description="Single-pattern fringe demodulation: Hilbert quadrature "
                    "plus wavelet-ridge phase extraction.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("synth", help="write the synthetic test pattern")
    _add_config_flags(sub)
    sub.set_defaults(handler=_cmd_synth)

    for name, help_text in (("demod", "demodulate a fringe image"),
                            ("full", "run the full pipeline with metrics")):
        sub = subs.add_parser(name, help=help_text)
        _add_config_flags(sub)
        sub.set_defaults(handler=_cmd_run)

    sub = subs.add_parser("metrics", help="compare two unwrapped phase images")
    sub.add_argument("--estimated", required=True, help="estimated phase image")
    sub.add_argument("--truth", required=True, help="reference phase image")
    sub.add_argument("--mask-border", type=int, default=32)
    sub.add_argument("--mask-disk-radius", type=float, default=32.0)
    sub.set_defaults(handler=_cmd_metrics)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
