"""Conditional independence: checks and axiom property tests."""

from .checks import (
    CIReport,
    check_event_independence,
    check_variable_ci,
    ci_deviation,
    verify_local_independencies,
)
from .generate import random_distribution, factorized_distribution, copy_distribution
from .axioms import (
    AxiomSuite,
    AxiomSummary,
    AxiomReport,
    AxiomOutcome,
    axiom_suite,
    copy_counterexample,
    axioms,
)

components = [AxiomSuite]
