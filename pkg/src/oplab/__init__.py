"""Numerical laboratory for weighted rotation groups on the little Bloch space."""

from oplab.analytic import (
    DEFAULT_GRID,
    BlochGrid,
    NormEstimate,
    TaylorPolynomial,
    bloch_norm,
    bloch_seminorm,
    differentiate,
    dilate,
    evaluate,
    little_bloch_tail,
    mz_power,
    q_power,
    random_polynomial,
)
from oplab.bergman import PairingConfig, adjoint_pairing_residual, bergman_norm_p, bergman_pairing
from oplab.disc_groups import (
    BASE,
    GroupParams,
    apply_generator,
    apply_group,
    resolvent_diagonal,
    resolvent_integral,
    resolvent_spectrum,
    spectrum,
    truncated_resolvent_cr,
)
from oplab.errors import (
    AliasingError,
    BranchError,
    ConfigurationError,
    DivergenceError,
    DomainError,
    OplabError,
    PreconditionError,
    SingularityError,
    SpectrumError,
)
from oplab.halfplane import MobiusMap, PointwiseFunction, delta_apply, delta_resolvent, eigenfunction
from oplab.quadrature import DiscRule, IntervalRule, make_disc_rule, make_graded_rule, make_interval_rule
from oplab.suite import SuiteConfig, VerificationReport, emit_report_json, emit_spectrum_csv, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
