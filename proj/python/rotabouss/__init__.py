"""Rotating Boussinesq convection between free-slip plates.

Linear spectra, onset thresholds, the cubic amplitude model near the steady
onset and a 2-D pseudo-spectral simulator, backed by a C++ core.
"""

from ._rotabouss import *  # noqa: F401,F403
from ._rotabouss import __version__  # noqa: F401
