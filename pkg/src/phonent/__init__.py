"""Exact reduced dynamics and entanglement of two LC oscillators on a phonon strip."""

from .errors import DomainError, ResourceError, TruncationError, ValidationError
from .model import REFERENCE_DEVICE, DeviceParams, derive
from .evolution import (
    DimensionlessConfig,
    FockDensityMatrix,
    ModeSumPolicy,
    config_from_device,
    p1_closed,
    p2_closed,
    p_mode_sum,
    phases_at,
    propagate,
)
from .entanglement import entangled_window, log_negativity, negativity_curve, rephasing_negativity

__version__ = "0.1.0"
