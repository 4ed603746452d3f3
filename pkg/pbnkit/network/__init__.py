"""Bayesian networks: structure, validation, joints and fixtures."""

from .network import BayesianNetwork
from .graph import (
    CIStatement,
    ChainFactor,
    parse_statement,
    find_cycle,
    topological_order,
    local_independencies,
    chain_rule_factorization,
)
from .validation import ValidationReport, Violation, validate_network, require_valid
from .joint import joint_distribution, conditional_table, chain_rule_product
from .fixtures import (
    student_network,
    two_variable_network,
    dig_network,
    chain_network,
    naive_network,
    get_builtin,
    builtins,
)
from .random import random_network

components = [BayesianNetwork]
