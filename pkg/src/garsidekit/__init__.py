"""Garside normal forms for spherical simply-laced Artin groups."""

from .coxeter_core import CoxeterGraph, build_root_system, named_graph
from .garside_engine import ArtinGroup, GarsideElement, GeneratorWord, artin_group
from .word_language import Environment, expand, load_script, parse

__all__ = [
    "ArtinGroup",
    "CoxeterGraph",
    "Environment",
    "GarsideElement",
    "GeneratorWord",
    "artin_group",
    "build_root_system",
    "expand",
    "load_script",
    "named_graph",
    "parse",
]
