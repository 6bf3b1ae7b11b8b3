"""Finitely presented groups: words, presentations, simplification, recognition."""
from .algebra import GroupAlgebraElement, ga_multiply_trace
from .coset import todd_coxeter
from .groups import AbelianGroup, FiniteGroup, FreeProductCyclicGroup
from .presentation import Presentation, parse_presentation
from .recognize import Classification, Verdict, analyze, recognize, verdicts
from .simplify import simplify_presentation
from .snf import abelianization, invariant_factors

__all__ = [
    "GroupAlgebraElement", "ga_multiply_trace", "todd_coxeter", "AbelianGroup", "FiniteGroup",
    "FreeProductCyclicGroup", "Presentation", "parse_presentation", "Classification",
    "Verdict", "analyze", "recognize", "verdicts", "simplify_presentation", "abelianization",
    "invariant_factors",
]
