"""Wreath products of a finite monoid with the partial-bijection monoids and
category: element arithmetic, presentations by generators and relations, and
desk-scale verification of those presentations."""

from .base import BUILTIN_NAMES, BasePresentation, FiniteMonoid, MTuple, builtin
from .pperm import PartialBijection
from .presentations import KINDS, Presentation, build
from .wreath import WreathElement

__all__ = [
    "BUILTIN_NAMES",
    "BasePresentation",
    "FiniteMonoid",
    "MTuple",
    "builtin",
    "PartialBijection",
    "KINDS",
    "Presentation",
    "build",
    "WreathElement",
]

__version__ = "0.1.0"
