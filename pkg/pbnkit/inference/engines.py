"""Exact inference, two ways.

`query_enumeration` is the reference: build the full joint, restrict to
the evidence, sum out everything that is not a target, normalise.

`query_variable_elimination` never builds the joint. It drops the CPTs
of nodes that are neither targets, evidence nor their ancestors,
restricts the rest to the evidence, then eliminates one variable at a
time: multiply the factors that mention it and sum it out. Every
elimination step is one unit-operator insertion, i.e. a sum over the
states of the eliminated variable.

Both are wrapped as Components, so they can be chosen from a config:

    {"variable_elimination": {"order": None}}
    {"enumeration": {}}

"""

from dataclasses import dataclass

from pbnkit import logger, env
from pbnkit.engine import Component
from pbnkit.exceptions import ImpossibleEvidence
from pbnkit.distribution import Factor, factor_product, sum_out, restrict, condition, marginal
from pbnkit.network import joint_distribution, require_valid
from .ordering import relevant_nodes, elimination_order, check_order
from .task import InferenceTask


@dataclass(frozen=True)
class EliminationStep:
    variable: str
    n_factors: int
    scope: tuple
    size: int

    def __str__(self):
        return f"sum over {self.variable}: {self.n_factors} factor(s) -> [{', '.join(self.scope)}] ({self.size} cells)"


def query_enumeration(net, task):
    """P(targets | evidence) from the full joint.

    Raises:
        ImpossibleEvidence: If the evidence has probability zero.

    """
    task.check(net)
    joint = joint_distribution(net)
    return condition(joint, task.evidence, task.targets)


def query_variable_elimination(net, task, order=None, max_cells=None, trace=None):
    """P(targets | evidence) by variable elimination.

    Args:
        net: BayesianNetwork.
        task: InferenceTask.
        order: Optional elimination order (permutation of the non-targets,
            or of the relevant non-targets), otherwise the task's hint,
            otherwise min-degree.
        max_cells: Cap on intermediate factor size.
        trace: Optional list; one `EliminationStep` is appended per step.

    Raises:
        ImpossibleEvidence: If the evidence has probability zero.
        ResourceCapExceeded: If an intermediate factor exceeds max_cells.

    """
    task.check(net)
    require_valid(net)

    if max_cells is None:
        max_cells = env.max_factor_cells

    if order is None:
        order = task.order
    if order is None:
        order = elimination_order(net, task)
    else:
        order = check_order(net, task, order)

    factors = []
    for node in relevant_nodes(net, task):
        cpt = net.cpts[node]
        events = [e for e in task.evidence if e.variable in cpt.names]
        factors.append(restrict(cpt, events))

    for variable in order:
        touched = [f for f in factors if variable in f.names]
        factors = [f for f in factors if variable not in f.names]

        product = Factor.scalar(1.0)
        for f in touched:
            product = factor_product(product, f, max_cells=max_cells)
        reduced = sum_out(product, [variable])

        if trace is not None:
            trace.append(EliminationStep(variable, len(touched), reduced.names, reduced.size))

        factors.append(reduced)

    result = Factor.scalar(1.0)
    for f in factors:
        result = factor_product(result, f, max_cells=max_cells)

    result = marginal(result, task.targets)
    mass = result.total()
    if mass <= 0.0:
        raise ImpossibleEvidence(f"Evidence {list(task.evidence)} has probability zero.")

    return Factor(result.scope, result.values / mass, normalized=True)


class Enumeration(Component):
    """Inference by summing the full joint."""

    kind = "enumeration"

    def __init__(self, context={}):
        super().__init__(context=context)

    def _get_config(self):
        return {}

    def __call__(self, net, task):
        return query_enumeration(net, task)


class VariableElimination(Component):
    """Inference by variable elimination.

    Attributes:
        order: Optional fixed elimination order; default min-degree per task.

    """

    kind = "variable_elimination"

    default_context = {"max_factor_cells": None}

    def __init__(self, order=None, context={}):
        super().__init__(context=context)
        self.order = None if order is None else tuple(order)

    def _get_config(self):
        return {"order": None if self.order is None else list(self.order)}

    def __call__(self, net, task, trace=None):
        return query_variable_elimination(
            net,
            task,
            order=self.order,
            max_cells=self.context["max_factor_cells"],
            trace=trace,
        )


engines = {"enumeration": Enumeration, "variable_elimination": VariableElimination}


def get_engine(method, context={}):
    """Engine for a method name ("enum", "ve", or the long forms)."""
    task = InferenceTask((), method=method)  # normalises the name
    return engines[task.method](context=context)


def query(net, targets, evidence=None, method="variable_elimination"):
    """Shortcut: P(targets | evidence) with evidence as {name: state(s)}."""
    task = InferenceTask.make(targets, evidence, method=method)
    logger.debug(f"Answering {task} on {net.name}.")
    return get_engine(task.method)(net, task)
