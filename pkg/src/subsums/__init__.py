"""Exact tools for MCSP, (min,+)-convolution and unique-configuration counting."""

__version__ = "0.1.0"

from .kernels import mcsp_naive, minplus_conv, maxplus_conv  # noqa: E402
from .configurations import Configuration, is_unique, output_configurations  # noqa: E402
from .feasibility import strict_feasible  # noqa: E402
from .census import count_unique  # noqa: E402
