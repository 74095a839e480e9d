"""Photon-pressure circuit toolkit.

Thin re-export of the compiled core. Rates and frequencies are angular
(rad/s) unless a name ends in _hz; flux biases are floats in flux quanta.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
