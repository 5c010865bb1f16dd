"""Degrees-of-freedom toolkit for multi-hop and full-duplex wireless networks.

Submodules
----------
network     instances, gain processes, causal forward simulation
transforms  full-duplex equivalence, cooperation collapse, message nulling
bounds      exact outer-bound regions and closed-form DoF formulas
alignment   diagonal-extension beamformer construction and checks
ratesim     zero-forcing rate sweeps and slope fits
converse    genie replay on the four-node X network
cli         command-line front end
"""

from .errors import DofLabError

__all__ = ["DofLabError"]
__version__ = "0.1.0"
