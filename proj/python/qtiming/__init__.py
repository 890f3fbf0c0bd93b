"""Quantum-limited pulse timing: temporal modes, homodyne statistics,
SQL/squeezed sensitivity, Fisher information and Monte Carlo estimation."""

try:
    from ._qtiming import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _qtiming import *  # noqa: F401,F403  (build-tree layout)
