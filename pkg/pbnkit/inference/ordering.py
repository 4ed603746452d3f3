"""Relevant nodes and elimination orders.

Only the targets, the evidence variables and their ancestors matter
for P(targets | evidence): every other node is barren, its CPT sums to
one and can be dropped without being multiplied in.

The order is greedy min-degree on the moral graph of the relevant
nodes: repeatedly pick the variable with the fewest neighbours among
those still to be eliminated (ties broken by name), connect its
neighbours, and remove it. Targets stay in the graph but are never
picked. Evidence variables are eliminated too, since evidence is
applied by restriction and the evidence axes still have to be summed
away.

"""

import itertools

import networkx as nx

from pbnkit import logger
from pbnkit.exceptions import UsageError


def relevant_nodes(net, task):
    """Targets, evidence variables and their ancestors, in declaration order."""
    graph = net.graph()
    found = set(task.targets) | set(task.evidence_names)
    for node in list(found):
        found |= nx.ancestors(graph, node)
    return tuple(n for n in net.names if n in found)


def elimination_order(net, task):
    """Deterministic min-degree elimination order over the relevant nodes."""
    relevant = relevant_nodes(net, task)
    graph = nx.moral_graph(net.graph().subgraph(relevant))
    to_eliminate = {n for n in relevant if n not in task.targets}

    order = []
    while to_eliminate:
        node = min(to_eliminate, key=lambda n: (graph.degree(n), n))

        neighbours = list(graph.neighbors(node))
        graph.add_edges_from(itertools.combinations(neighbours, 2))
        graph.remove_node(node)

        to_eliminate.remove(node)
        order.append(node)

    logger.debug(f"Elimination order for {list(task.targets)}: {order}")

    return tuple(order)


def check_order(net, task, order):
    """Make sure order is a permutation of the non-targets, or of the relevant ones.

    Returns:
        The order restricted to the relevant nodes.
    """
    relevant = relevant_nodes(net, task)
    every = sorted(n for n in net.names if n not in task.targets)
    needed = sorted(n for n in relevant if n not in task.targets)

    if sorted(order) not in (every, needed):
        raise UsageError(f"Elimination order {list(order)} must be a permutation of {every} or {needed}.")
    return tuple(n for n in order if n in relevant)
