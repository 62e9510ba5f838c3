"""Exact computations with Weyl modules of simple algebraic groups over prime fields."""

__version__ = "0.1.0"

from .roots import Character, RootSystem, root_system, weyl_character, weyl_dimension, saturated_below
from .hyperalgebra import chevalley_constants, contravariant_gram, apply_generator, GeneratorSymbol, VermaElement
from .modules import (
    CharacterCache,
    build_weyl_module,
    decomposition_numbers,
    ext1_witness,
    hom_dimension,
    is_ambiguous,
    maximal_vectors,
    quotient,
    simple_character,
    socle,
    socle_series,
    submodule_generated,
)
from .blocks import blocks

__all__ = [
    "Character", "RootSystem", "root_system", "weyl_character", "weyl_dimension", "saturated_below",
    "chevalley_constants", "contravariant_gram", "apply_generator", "GeneratorSymbol", "VermaElement",
    "CharacterCache", "build_weyl_module", "decomposition_numbers", "ext1_witness", "hom_dimension",
    "is_ambiguous", "maximal_vectors", "quotient", "simple_character", "socle", "socle_series",
    "submodule_generated", "blocks",
]
