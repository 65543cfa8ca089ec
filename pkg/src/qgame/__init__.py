"""Quantum two-player games in the EWL protocol."""

from .ewl import CHICKEN, PRISONERS_DILEMMA, GameSpec, build_context, payoffs
from .equilibrium import SearchConfig, best_response, verify_nash
from .strategies import StrategySet, named

__version__ = "0.1.0"
