"""Momentum entanglement of two fermions after finite-time one-photon exchange."""

__version__ = "0.1.0"

from .amplitude import (  # noqa: E402
    PARALLEL_CHANNEL,
    T_CHANNEL,
    U_CHANNEL,
    ScatterParams,
    SpinChannel,
    amplitude_callback,
    amplitude_channel,
    sample_grid,
)
from .majorization import locc_transformable, majorizes  # noqa: E402
from .schmidt import (  # noqa: E402
    ProbabilityVector,
    decompose,
    entanglement_entropy,
    project_coefficients,
    schmidt_from_amplitude,
    slater_number,
)
from .specfun import gauss_hermite_rule  # noqa: E402
