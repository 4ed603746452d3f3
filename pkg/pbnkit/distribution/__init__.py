"""Discrete distributions as dense factors."""

from .variable import Variable, EventSet, events_from_assignment, check_assignment
from .factor import (
    Factor,
    assignments,
    factor_product,
    sum_out,
    marginal,
    restrict,
    normalize,
    condition,
    posterior,
    event_mass,
    point_mass,
)
from .functions import StateFunction, expectation, default_values
