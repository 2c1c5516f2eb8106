"""Pipeline orchestration: configuration, the end-to-end run, and the report.

The default configuration demodulates the stock 512x512 synthetic pattern:
f_c = 1 cycle/px, 64 logarithmic scales on [2, 256], per-row mean bias removal,
orientation window sigma 8 px, row scan, no noise, metrics masked by a 32 px
border and a 32 px-radius center disk.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, fields as dc_fields, replace

import numpy as np

from .demod import SCAN_AXES, DemodResult, demodulate_image
from .fields import PhaseMap, ScalarField
from .imageio import read_field, write_image
from .metrics import aligned_estimate, make_mask, phase_error_stats
from .quadrature import BIAS_METHODS, corrected_quadrature, remove_bias
from .synth import add_noise, fringe_from_model, synthetic_model
from .unwrap import unwrap_2d
from .wavelet import SPACINGS, WaveletParams

SYNTHETIC_INPUT = "synthetic"
PROFILE_NAME = "profile_row256.csv"
REPORT_NAME = "report.txt"
REPORT_KEYS = ("rms_error_rad", "max_abs_error_rad", "masked_fraction", "wall_time_s")


@dataclass(frozen=True)
class PipelineConfig:
    input: str = SYNTHETIC_INPUT
    width: int = 512
    height: int = 512
    f_c: float = 1.0
    s_min: float = 2.0
    s_max: float = 256.0
    n_scales: int = 64
    spacing: str = "logarithmic"
    bias_method: str = "global_mean"
    bias_sigma: float = 30.0
    window_sigma: float = 8.0
    scan_axis: str = "rows"
    noise_sigma: float = 0.0
    seed: int = 0
    mask_border: int = 32
    mask_disk_radius: float = 32.0
    output_dir: str = "out"
    threads: int = 0  # 0 selects the cpu count
    write_png: bool = False

    def validate(self) -> None:
        if self.input != SYNTHETIC_INPUT and not self.input:
            raise ValueError("input must be a path or 'synthetic'")
        if self.width < 8 or self.height < 8:
            raise ValueError("width and height must be >= 8")
        if not self.f_c > 0:
            raise ValueError("f_c must be positive")
        if not (0 < self.s_min < self.s_max):
            raise ValueError("scale grid requires 0 < s_min < s_max")
        if self.n_scales < 2:
            raise ValueError("scale grid requires n_scales >= 2")
        if self.spacing not in SPACINGS:
            raise ValueError(f"spacing must be one of {SPACINGS}")
        if self.bias_method not in BIAS_METHODS:
            raise ValueError(f"bias_method must be one of {BIAS_METHODS}")
        if self.bias_method == "gaussian_highpass" and not self.bias_sigma > 0:
            raise ValueError("bias_sigma must be positive for gaussian_highpass")
        if not self.window_sigma > 0:
            raise ValueError("window_sigma must be positive")
        if self.scan_axis not in SCAN_AXES:
            raise ValueError(f"scan_axis must be one of {SCAN_AXES}")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.mask_border < 0 or self.mask_disk_radius < 0:
            raise ValueError("mask_border and mask_disk_radius must be >= 0")
        if self.threads < 0:
            raise ValueError("threads must be >= 0 (0 selects the cpu count)")

    def wavelet_params(self) -> WaveletParams:
        return WaveletParams(self.f_c, self.s_min, self.s_max, self.n_scales, self.spacing)

    def effective_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


_BOOL_STRINGS = {"true": True, "false": False, "1": True, "0": False,
                 "yes": True, "no": False}


def _parse_value(text: str, target_type: type):
    if target_type is bool:
        try:
            return _BOOL_STRINGS[text.strip().lower()]
        except KeyError:
            raise ValueError(f"invalid boolean {text!r}") from None
    return target_type(text)


def parse_config_text(text: str, base: PipelineConfig | None = None) -> PipelineConfig:
    """Parse flat ``key = value`` lines into a config.

    Blank lines and '#' comments are ignored; unknown keys are an error.  If a
    ``[config]`` section header is present (as in a report file), only the
    lines after it are read.
    """
    lines = text.splitlines()
    stripped = [ln.strip() for ln in lines]
    if "[config]" in stripped:
        lines = lines[stripped.index("[config]") + 1:]
    concrete = {"input": str, "width": int, "height": int, "f_c": float, "s_min": float,
                "s_max": float, "n_scales": int, "spacing": str, "bias_method": str,
                "bias_sigma": float, "window_sigma": float, "scan_axis": str,
                "noise_sigma": float, "seed": int, "mask_border": int,
                "mask_disk_radius": float, "output_dir": str, "threads": int,
                "write_png": bool}
    updates = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in concrete:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        updates[key] = _parse_value(value, concrete[key])
    return replace(base if base is not None else PipelineConfig(), **updates)


def load_config(path: str, base: PipelineConfig | None = None) -> PipelineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), base)


def config_echo(cfg: PipelineConfig) -> str:
    parts = []
    for f in dc_fields(PipelineConfig):
        v = getattr(cfg, f.name)
        parts.append(f"{f.name} = {v!r}" if isinstance(v, float) else f"{f.name} = {v}")
    return "\n".join(parts)


@dataclass(frozen=True)
class RunReport:
    rms_error_rad: float
    max_abs_error_rad: float
    masked_fraction: float
    wall_time_s: float
    config: PipelineConfig

    def to_text(self) -> str:
        head = "\n".join(
            f"{key} = {getattr(self, key)!r}" for key in REPORT_KEYS
        )
        return f"{head}\n\n[config]\n{config_echo(self.config)}\n"


def _check_finite(name: str, data: np.ndarray) -> None:
    if not np.all(np.isfinite(data)):
        raise ArithmeticError(f"numerical failure: non-finite values in {name}")


@dataclass(frozen=True)
class PipelineArtifacts:
    """In-memory results of a run, before/besides the files on disk."""

    fringe: ScalarField
    bias_removed: ScalarField
    quadrature: ScalarField
    demod: DemodResult
    unwrapped: PhaseMap
    orientation_angle: ScalarField
    sign: ScalarField
    truth: PhaseMap | None
    report: RunReport


def run_pipeline(cfg: PipelineConfig, write_files: bool = True) -> PipelineArtifacts:
    """Execute synth/load -> bias removal -> quadrature -> demodulation ->
    unwrap -> metrics, then write the artifact files."""
    cfg.validate()
    started = time.perf_counter()

    truth: PhaseMap | None = None
    if cfg.input == SYNTHETIC_INPUT:
        model = synthetic_model(cfg.width, cfg.height)
        fringe = fringe_from_model(model)
        if cfg.noise_sigma > 0:
            fringe = add_noise(fringe, cfg.noise_sigma, cfg.seed)
        truth = model.phase
    else:
        fringe = read_field(cfg.input)

    bias_sigma = cfg.bias_sigma if cfg.bias_method == "gaussian_highpass" else None
    i_f = remove_bias(fringe, cfg.bias_method, bias_sigma, cfg.scan_axis)
    i_q, signs, orient = corrected_quadrature(
        fringe, cfg.bias_method, cfg.bias_sigma, cfg.window_sigma, cfg.scan_axis)
    result = demodulate_image(i_f, i_q, cfg.wavelet_params(), cfg.scan_axis,
                              cfg.effective_threads())
    unwrapped = unwrap_2d(result.wrapped_phase, result.quality).phase
    for name, data in (("quadrature", i_q.data),
                       ("wrapped phase", result.wrapped_phase.data),
                       ("unwrapped phase", unwrapped.data)):
        _check_finite(name, data)

    h, w = fringe.data.shape
    mask = make_mask(h, w, cfg.mask_border, cfg.mask_disk_radius)
    masked_fraction = 1.0 - float(mask.sum()) / mask.size
    if truth is not None:
        stats = phase_error_stats(unwrapped, truth, mask)
        rms, max_abs = stats.rms, stats.max_abs
    else:
        rms = max_abs = float("nan")

    report = RunReport(rms, max_abs, masked_fraction,
                       time.perf_counter() - started, cfg)
    artifacts = PipelineArtifacts(fringe, i_f, i_q, result, unwrapped,
                                  orient.angle, signs.sign, truth, report)
    if write_files:
        write_artifacts(artifacts, cfg)
    return artifacts


def _image_targets(artifacts: PipelineArtifacts) -> list[tuple[str, ScalarField, int]]:
    return [
        ("fringe", artifacts.fringe, 8),
        ("quadrature", artifacts.quadrature, 8),
        ("wrapped", artifacts.demod.wrapped_phase.field, 8),
        ("unwrapped", artifacts.unwrapped.field, 16),
        ("quality", artifacts.demod.quality, 8),
        ("orientation", artifacts.orientation_angle, 8),
        ("sign", artifacts.sign, 8),
    ]


def write_artifacts(artifacts: PipelineArtifacts, cfg: PipelineConfig) -> None:
    out = cfg.output_dir
    os.makedirs(out, exist_ok=True)
    for stem, field, depth in _image_targets(artifacts):
        write_image(field, os.path.join(out, stem + ".pgm"), depth)
        if cfg.write_png:
            write_image(field, os.path.join(out, stem + ".png"), depth)
    _write_profile(artifacts, os.path.join(out, PROFILE_NAME), cfg)
    with open(os.path.join(out, REPORT_NAME), "w", encoding="utf-8") as fh:
        fh.write(artifacts.report.to_text())


def _write_profile(artifacts: PipelineArtifacts, path: str, cfg: PipelineConfig) -> None:
    """Central scan line as CSV.  The estimate column is piston-and-sign
    aligned to the truth when a truth exists, so the profiles overlay."""
    h, w = artifacts.fringe.data.shape
    row = h // 2
    wrapped = artifacts.demod.wrapped_phase.data[row]
    if artifacts.truth is not None:
        mask = make_mask(h, w, cfg.mask_border, cfg.mask_disk_radius)
        est = aligned_estimate(artifacts.unwrapped, artifacts.truth, mask)[row]
        truth_row = artifacts.truth.data[row]
    else:
        est = artifacts.unwrapped.data[row]
        truth_row = np.full(w, np.nan)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("y,truth,estimated,wrapped\n")
        for y in range(w):
            fh.write(f"{y},{truth_row[y]:.9g},{est[y]:.9g},{wrapped[y]:.9g}\n")
