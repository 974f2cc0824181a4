"""Triple Massey products over F_p for finitely presented groups."""

from .cohomology import (
    MasseyOutcome,
    ResonanceComponent,
    UndefinedProductError,
    cpi_component,
    cup,
    in_resonance,
    indeterminacy,
    massey,
    massey_mod_indeterminacy,
    theorem_fixture,
)
from .magnus import eps, magnus_pairing, magnus_tensor
from .presentations import (
    Presentation,
    kty_presentation,
    load_presentation,
    monomial_presentation,
    save_presentation,
)
from .words import Word, parse_word

__version__ = "0.1.0"
