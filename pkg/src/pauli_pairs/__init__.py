"""Numerical toolkit for discrete Pauli pairs, discrete Fourier uniqueness and a
discrete Hardy uncertainty principle."""

__version__ = "0.1.0"

from .grid import GridFunction, GridSpec, KernelF, kernel_eval, kernel_fourier, quad_fourier  # noqa: E402
from .hermite import HermiteFunction, basis_matrix, sample_on_nodes  # noqa: E402
from .nodes import NodeSet, density_profile, envelope_check, gen_power_nodes, perturb  # noqa: E402

__all__ = [
    "GridFunction", "GridSpec", "HermiteFunction", "KernelF", "NodeSet", "basis_matrix",
    "density_profile", "envelope_check", "gen_power_nodes", "kernel_eval", "kernel_fourier",
    "perturb", "quad_fourier", "sample_on_nodes",
]
