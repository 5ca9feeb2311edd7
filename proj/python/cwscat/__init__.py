"""Exact three-body scattering on a line.

Calogero-Wolfes potential families, exact transfer matrices, classical
trajectory experiments, and finite-difference spectra, backed by the C++
core module.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
