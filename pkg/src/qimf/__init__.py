"""Amplitude-level simulation of quantum image filtering.

An image is amplitude-encoded, moved to the frequency domain with a 2D QFT,
the components inside an annular region are amplified with a fixed-point
Grover schedule, and the result is transformed back. Every run can be checked
against a classical FFT band-mask filter.
"""

from .amplification import Schedule, min_sequence_length, run_iterations, schedule
from .classical import ideal_bandpass_filter, reference_state
from .encoding import ImageBuffer, RectangleSpec, decode_state, encode_image, prepare_rectangle
from .pipeline import FilterConfig, FilterReport, preset, run_filter
from .region import RegionSpec, region_mask
from .spectral import iqft2d, qft2d
from .state import StateVector

__version__ = "0.1.0"
