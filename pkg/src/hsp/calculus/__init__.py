"""Inference rules, Define, simplification and Close."""

from .close import CloseChecker, CloseResult, close_check
from .define import DefinitionTable, DefineResult, define, parameter_for
from .rules import (Calculus, Inference, equality_factoring, equality_resolution, generate,
                    negative_superposition, positive_superposition)
from .simp import Simplifier, SimpResult, normal_form, simp, suitable

__all__ = [
    "Calculus", "CloseChecker", "CloseResult", "DefineResult", "DefinitionTable", "Inference",
    "SimpResult", "Simplifier", "close_check", "define", "equality_factoring",
    "equality_resolution", "generate", "negative_superposition", "normal_form", "parameter_for",
    "positive_superposition", "simp", "suitable",
]
