"""Exact inference on Bayesian networks."""

from .task import InferenceTask
from .ordering import relevant_nodes, elimination_order, check_order
from .engines import (
    query_enumeration,
    query_variable_elimination,
    query,
    get_engine,
    Enumeration,
    VariableElimination,
    EliminationStep,
)

components = [Enumeration, VariableElimination]
