"""Recursive Grassmann algebra, its Clifford operator ladder, the so(3,3) chiral cell, and contraction."""
from . import basis, grassmann
from .basis import Monomial, enumerate_stage, from_serial, hyperexp, parse, render, serial
from .errors import (
    BudgetExceeded,
    EmptySweep,
    NonCompactPlane,
    NotAComplexStructure,
    ParseError,
    PlexusError,
    RankTooLarge,
    StageMismatch,
    TooLarge,
)
from .grassmann import DualElement, DuplexVector, Element

__version__ = "0.1.0"
