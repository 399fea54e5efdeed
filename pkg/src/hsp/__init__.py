"""Hierarchic superposition prover for clause logic modulo linear integer arithmetic."""

__version__ = "0.1.0"

# terms must be loaded before the kernel, which imports them
from . import core  # noqa: E402,F401
