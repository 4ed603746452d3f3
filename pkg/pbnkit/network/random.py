"""Seeded random networks for property tests."""

import numpy as np

from pbnkit.distribution import Variable
from .network import BayesianNetwork


def random_network(n_nodes, max_card=3, seed=0, edge_prob=0.5, max_parents=3, positive=True):
    """Generate a random valid network.

    Nodes are named X0, X1, ... and declared in a shuffled order, so
    declaration order is generally not topological. Edges only go from
    earlier to later nodes of a hidden random order, so the graph is
    acyclic by construction.

    Args:
        n_nodes: Number of nodes.
        max_card: Cardinalities are drawn from 2..max_card.
        seed: Seed for `numpy.random.default_rng`; same seed, same network.
        edge_prob: Probability of each admissible edge.
        max_parents: Cap on the number of parents per node.
        positive: If True, CPT entries are bounded away from zero.

    """
    rng = np.random.default_rng(seed)

    cards = rng.integers(2, max_card + 1, size=n_nodes)
    variables = [
        Variable(f"X{j}", [f"x{j}_{k}" for k in range(cards[j])]) for j in range(n_nodes)
    ]

    hidden_order = rng.permutation(n_nodes)
    parents = {}
    for position, j in enumerate(hidden_order):
        candidates = [int(c) for c in hidden_order[:position] if rng.random() < edge_prob]
        candidates = candidates[:max_parents]
        parents[f"X{j}"] = [f"X{c}" for c in candidates]

    cpts = {}
    low = 0.05 if positive else 0.0
    for v in variables:
        n_rows = int(np.prod([cards[int(p[1:])] for p in parents[v.name]]))
        rows = rng.uniform(low, 1.0, size=(n_rows, v.cardinality))
        rows = rows / rows.sum(axis=1, keepdims=True)
        cpts[v.name] = rows.ravel().tolist()

    declared = [variables[int(j)] for j in rng.permutation(n_nodes)]

    return BayesianNetwork.build(declared, parents=parents, cpts=cpts, name=f"random_{seed}")
