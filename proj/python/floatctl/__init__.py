"""Shallow-water floating-body control toolkit: spectra, energy-preserving
simulation, open-loop steering, feedback stabilization, and a nonlinear
exterior-domain cross-check solver."""

try:
    from ._floatctl import *  # noqa: F401,F403
    from ._floatctl import __version__  # noqa: F401
except ImportError:  # build-tree layout used by ctest
    from _floatctl import *  # noqa: F401,F403
    from _floatctl import __version__  # noqa: F401
