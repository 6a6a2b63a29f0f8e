"""Exact computations with model DGAs: cohomology, Massey products and formality obstructions."""

from .algebra import Element, Generator, GradedAlgebra, make_algebra, multiply
from .constructions import circle_bundle, gysin_report, pullback_massey, tensor
from .dga import DGA, CohomologyClass, CohomologySpace, Morphism, cup
from .dsl import ParseError, ValidationError, parse_model, serialize
from .geography import GeographyQuery, GeographyVerdict, realize
from .massey import (
    MasseyResult,
    a_massey,
    donaldson_betti_floor,
    higher_massey,
    not_s_formal_certificate,
    triple_massey,
)
from .minimal import minimal_model_up_to
from .zoo import fgg, m_pq, sphere2, torus

__version__ = "0.1.0"
