"""Exact surgery calculus for 2-framed three-manifold invariants.

The package models framed links with embedded handlebodies at linking-data
level, evaluates them exactly against abelian modular data, and extends the
resulting functionals to a full symmetric monoidal assignment whose axioms
and functor laws are machine-checked with zero tolerance.
"""

from .cyclotomic import CyclotomicNumber, cyclotomic_polynomial, make_root, sqrt_as_cyclotomic
from .engine import (
    Cobordism,
    CobordismMap,
    DualElement,
    MinimalData,
    cap_cobordism,
    cobordism_union,
    compose_cobordisms,
    cup_cobordism,
    extend,
    functional,
    hat,
    identity_cobordism,
    minimal_data,
    symmetry_cobordism,
)
from .errors import (
    BiframeError,
    ContextRequiredError,
    InvalidMoveError,
    NondegeneracyError,
    ParseError,
    PresentationError,
    TheoryError,
)
from .fileformat import (
    parse_move_script,
    parse_presentation,
    parse_theory_config,
    render_move_script,
    render_presentation,
    render_theory_config,
)
from .harness import (
    Budget,
    Report,
    Sampler,
    axiom_check,
    component_scale_mutant,
    functoriality_check,
    lk_component_count,
    phase_twist_mutant,
)
from .presentation import (
    Circle,
    Handlebody,
    MoveScript,
    Presentation,
    pairing_presentation,
)
from .scalars import ExactScalar, arith
from .theory import AbelianTheory, builtin_theories

__all__ = [
    "AbelianTheory",
    "BiframeError",
    "Budget",
    "Circle",
    "Cobordism",
    "CobordismMap",
    "ContextRequiredError",
    "CyclotomicNumber",
    "DualElement",
    "ExactScalar",
    "Handlebody",
    "InvalidMoveError",
    "MinimalData",
    "MoveScript",
    "NondegeneracyError",
    "ParseError",
    "Presentation",
    "PresentationError",
    "Report",
    "Sampler",
    "TheoryError",
    "arith",
    "axiom_check",
    "builtin_theories",
    "cap_cobordism",
    "cobordism_union",
    "component_scale_mutant",
    "compose_cobordisms",
    "cup_cobordism",
    "cyclotomic_polynomial",
    "extend",
    "functional",
    "functoriality_check",
    "hat",
    "identity_cobordism",
    "lk_component_count",
    "make_root",
    "minimal_data",
    "pairing_presentation",
    "parse_move_script",
    "parse_presentation",
    "parse_theory_config",
    "phase_twist_mutant",
    "render_move_script",
    "render_presentation",
    "render_theory_config",
    "sqrt_as_cyclotomic",
    "symmetry_cobordism",
]
