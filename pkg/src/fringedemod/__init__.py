"""Single-pattern fringe demodulation.

Recovers the continuous phase of one fringe pattern (no spatial carrier) by
synthesizing a quadrature pattern with a sign-corrected scan-line Hilbert
transform and reading the phase off the ridge of a complex Morlet wavelet
transform, followed by quality-guided 2-D unwrapping.
"""

from .fields import (NonFiniteError, PhaseMap, ScalarField, dft_1d, gaussian_smooth,
                     gradient, wrap_phase)
from .synth import (FringeModel, add_noise, fringe_from_model, quadrature_truth,
                    synthetic_model, test_phase)
from .wavelet import (CwtMatrix, WaveletParams, admissibility_constant, cwt_row_direct,
                      cwt_row_spectral, morlet, morlet_spectrum, scale_grid)
from .demod import (DemodResult, RidgeRow, combine_quadratures, demodulate_image,
                    ridge_extract, signed_scale_matrix)
from .quadrature import (DirectionField, OrientationField, SignField, corrected_quadrature,
                         direction_unwrap, hilbert_row, orientation_map, remove_bias,
                         sign_map)
from .unwrap import UnwrapResult, unwrap_1d, unwrap_2d
from .metrics import make_mask, phase_error_stats, rms_error
from .imageio import read_field, read_image, write_image
from .pipeline import PipelineConfig, RunReport, load_config, parse_config_text, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "NonFiniteError", "PhaseMap", "ScalarField", "dft_1d", "gaussian_smooth",
    "gradient", "wrap_phase",
    "FringeModel", "add_noise", "fringe_from_model", "quadrature_truth",
    "synthetic_model", "test_phase",
    "CwtMatrix", "WaveletParams", "admissibility_constant", "cwt_row_direct",
    "cwt_row_spectral", "morlet", "morlet_spectrum", "scale_grid",
    "DemodResult", "RidgeRow", "combine_quadratures", "demodulate_image",
    "ridge_extract", "signed_scale_matrix",
    "DirectionField", "OrientationField", "SignField", "corrected_quadrature",
    "direction_unwrap", "hilbert_row", "orientation_map", "remove_bias", "sign_map",
    "UnwrapResult", "unwrap_1d", "unwrap_2d",
    "make_mask", "phase_error_stats", "rms_error",
    "read_field", "read_image", "write_image",
    "PipelineConfig", "RunReport", "load_config", "parse_config_text", "run_pipeline",
]
