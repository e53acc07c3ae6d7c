"""R-graph semigroups, their shifts and presentations.

Modules: ``rgraph`` (semigroup), ``presentation`` (labeled graphs and
languages), ``periodic``, ``zeta``, ``sofic``, ``examples`` and ``cli``.
"""

from __future__ import annotations

from .rgraph import RGraph, InvalidInput, dyck, graph_inverse, mul, classify
from .presentation import Presentation, PresentationLanguage, BudgetExceeded, identity_presentation, motzkin_presentation
from .sofic import SoficPresentation, follower_family, instantaneity_check, theorem61_transform
from .zeta import FormalSeries, zeta_bruteforce, zeta_theorem91

__version__ = "0.1.0"

__all__ = [
    "RGraph",
    "InvalidInput",
    "BudgetExceeded",
    "dyck",
    "graph_inverse",
    "mul",
    "classify",
    "Presentation",
    "PresentationLanguage",
    "identity_presentation",
    "motzkin_presentation",
    "SoficPresentation",
    "follower_family",
    "instantaneity_check",
    "theorem61_transform",
    "FormalSeries",
    "zeta_bruteforce",
    "zeta_theorem91",
]
