"""Probability bracket queries: parsing, validity and evaluation."""

from .ast import BracketExpression, Term, PROBABILITY, EXPECTATION, OPERATOR, OMEGA
from .parser import parse_query, to_text
from .validity import (
    ValidityReport,
    validate,
    resolve,
    WELL_FORMED,
    INVALID_INSERTION,
    MEANINGLESS,
)
from .evaluate import QueryResult, evaluate, load_functions, function_for


def query(text, net, functions=None, force=False, method=None):
    """Parse and evaluate query text on net."""
    return evaluate(parse_query(text), net, functions=functions, force=force, method=method)
