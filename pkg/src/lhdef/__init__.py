"""Deformed planar sl(2) Lie-Hamilton systems.

Classical catalog (P2, I4, I5), their one-parameter Hamiltonian
deformations, two-copy constants of motion, fixed-step integration with
drift measurement, and a machine-verification suite for every algebraic
identity involved. See README.md for the CLI and the acceptance suite.
"""
from .backend import active_backend, compiled_available
from .catalog import (
    ClassTag,
    ConfigurationError,
    DarbouxChart,
    Sl2ClassSystem,
    Sl2DualPoint,
    darboux_chart,
    deformed_dual_functions,
    foliation_realization,
    kks_bracket,
    make_class,
)
from .deformation import (
    DeformedSystem,
    deform,
    deform_hamiltonians,
    deform_vector_fields,
    deformed_fields_from_symplectic,
    predicted_commutators,
    structure_functions,
)
from .dynamics import (
    CoefficientCurve,
    DriftReport,
    Trajectory,
    assemble,
    assemble_two_copy,
    integrate_rk4,
    invariant_drift,
)
from .geometry import (
    DomainError,
    ScalarField2D,
    SymplecticForm2D,
    VectorField2D,
    canonical_form,
    fd_bracket_oracle,
    hamiltonian_vector_field,
    lie_bracket,
    poisson_bracket,
    shc,
)
from .invariants import (
    TwoCopyField,
    casimir_level,
    coupled_invariant,
    table_coupled_forms,
    two_copy_lift,
)
from .verification import VerificationReport, limit_scan, run_verification

__version__ = "0.1.0"

__all__ = [
    "ClassTag",
    "CoefficientCurve",
    "ConfigurationError",
    "DarbouxChart",
    "DeformedSystem",
    "DomainError",
    "DriftReport",
    "ScalarField2D",
    "Sl2ClassSystem",
    "Sl2DualPoint",
    "SymplecticForm2D",
    "Trajectory",
    "TwoCopyField",
    "VectorField2D",
    "VerificationReport",
    "active_backend",
    "assemble",
    "assemble_two_copy",
    "canonical_form",
    "casimir_level",
    "compiled_available",
    "coupled_invariant",
    "darboux_chart",
    "deform",
    "deform_hamiltonians",
    "deform_vector_fields",
    "deformed_dual_functions",
    "deformed_fields_from_symplectic",
    "fd_bracket_oracle",
    "foliation_realization",
    "hamiltonian_vector_field",
    "integrate_rk4",
    "invariant_drift",
    "kks_bracket",
    "lie_bracket",
    "limit_scan",
    "make_class",
    "poisson_bracket",
    "predicted_commutators",
    "run_verification",
    "shc",
    "structure_functions",
    "table_coupled_forms",
    "two_copy_lift",
]
