"""BayesianNetwork.

A network is a list of discrete variables, a set of directed edges
and one conditional probability table (CPT) per node. The CPT of a
node is a `Factor` over (parents..., node), parents in the order their
edges were declared, so that every "row" (fixed parent assignment) is
the distribution of the node given those parents.

Networks are `Configurable`: the inner config is exactly the native
interchange document,

```
{"bayesian_network": {
    "name": "student",
    "nodes": [{"name": "D", "states": ["d0", "d1"]}, ...],
    "edges": [["I", "G"], ...],
    "cpts": {"D": [0.6, 0.4], ...},
}}
```

so networks can be written to and read from yaml like any other
pbnkit object.

The constructor only checks what is needed to build the tables
(known node names, value counts). Whether the result is a *valid*
network (acyclic, rows normalised) is the job of `validate_network`,
so that broken networks can still be built and inspected.

"""

import networkx as nx
import numpy as np

from pbnkit.engine import Configurable
from pbnkit.exceptions import SchemaError, ScopeError
from pbnkit.distribution import Variable, Factor


class BayesianNetwork(Configurable):
    """Discrete Bayesian network.

    Attributes:
        name: Name of the network.
        variables: Tuple of `Variable`s in declaration order.
        edges: Tuple of (parent, child) name pairs in declaration order.
        cpts: Dict mapping node name to its CPT `Factor`.

    """

    kind = "bayesian_network"

    def __init__(self, nodes, edges, cpts, name="network"):
        self.name = str(name)
        self.variables = tuple(_make_variable(n, i) for i, n in enumerate(nodes))

        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise SchemaError(f"Duplicate node names in {names}.", path=["nodes"])
        self._by_name = {v.name: v for v in self.variables}

        self.edges = tuple(_make_edge(e, i, self._by_name) for i, e in enumerate(edges))
        if len(set(self.edges)) != len(self.edges):
            raise SchemaError("Duplicate edges.", path=["edges"])

        self._parents = {n: [] for n in names}
        for parent, child in self.edges:
            self._parents[child].append(parent)

        if not isinstance(cpts, dict):
            raise SchemaError("CPTs must be a mapping from node name to values.", path=["cpts"])
        for key in cpts:
            if key not in self._by_name:
                raise SchemaError(f"CPT given for unknown node {key!r}.", path=["cpts", key])

        self.cpts = {}
        for n in names:
            if n not in cpts:
                raise SchemaError(f"Node {n} has no CPT.", path=["cpts", n])
            self.cpts[n] = self._make_cpt(n, cpts[n])

        self._joint = None

    @classmethod
    def build(cls, variables, parents, cpts, name="network"):
        """Convenience constructor from Variables and a parents dict.

        Args:
            variables: List of `Variable`s.
            parents: Dict node -> list of parent names (missing means root).
            cpts: Dict node -> flat value list (or Factor).
            name: Name of the network.

        """
        edges = [(p, v.name) for v in variables for p in parents.get(v.name, [])]
        return cls(nodes=list(variables), edges=edges, cpts=cpts, name=name)

    @classmethod
    def _from_config(cls, config, **kwargs):
        # networks take no context
        return cls(**config)

    def _make_cpt(self, node, values):
        if isinstance(values, Factor):
            return values

        scope = [self._by_name[p] for p in self._parents[node]] + [self._by_name[node]]
        expected = int(np.prod([v.cardinality for v in scope]))

        try:
            values = np.asarray(values, dtype=float).ravel()
        except (TypeError, ValueError):
            raise SchemaError(f"CPT of {node} must be a list of numbers.", path=["cpts", node])

        if values.size != expected:
            raise SchemaError(
                f"CPT of {node} needs {expected} values, got {values.size}.", path=["cpts", node]
            )
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise SchemaError(f"CPT of {node} has negative or non-finite entries.", path=["cpts", node])

        return Factor(scope, values)

    def _get_config(self):
        return {
            "name": self.name,
            "nodes": [{"name": v.name, "states": list(v.states)} for v in self.variables],
            "edges": [list(e) for e in self.edges],
            "cpts": {n: [float(x) for x in self.cpts[n].flat] for n in self.names},
        }

    @property
    def names(self):
        return tuple(v.name for v in self.variables)

    def variable(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise ScopeError(f"Node {name!r} is not in network {self.name}.") from None

    def parents(self, node):
        self.variable(node)
        return tuple(self._parents[node])

    def children(self, node):
        self.variable(node)
        return tuple(c for p, c in self.edges if p == node)

    def cpt(self, node):
        self.variable(node)
        return self.cpts[node]

    def cpd(self, node, parent_assignment=None):
        """The distribution of node given a full parent assignment, as {state: p}."""
        parent_assignment = parent_assignment or {}
        cpt = self.cpt(node)
        row = {}
        for state in self.variable(node).states:
            row[state] = cpt.lookup({**parent_assignment, node: state})
        return row

    def graph(self):
        """The DAG as a networkx DiGraph (nodes in declaration order)."""
        g = nx.DiGraph()
        g.add_nodes_from(self.names)
        g.add_edges_from(self.edges)
        return g

    def descendants(self, node):
        self.variable(node)
        found = nx.descendants(self.graph(), node)
        return tuple(n for n in self.names if n in found)

    def ancestors(self, node):
        self.variable(node)
        found = nx.ancestors(self.graph(), node)
        return tuple(n for n in self.names if n in found)

    def non_descendants(self, node):
        """All nodes that are neither node nor one of its descendants."""
        desc = set(self.descendants(node))
        return tuple(n for n in self.names if n != node and n not in desc)

    def moral_graph(self):
        """Undirected graph: edges of the DAG plus "married" co-parents."""
        return nx.moral_graph(self.graph())

    def subnetwork(self, nodes, name=None):
        """The network restricted to an ancestrally closed set of nodes.

        Since no parent is dropped, the CPTs carry over unchanged and the
        joint of the subnetwork is the marginal of the full joint.
        """
        nodes = [n for n in self.names if n in set(nodes)]
        for n in nodes:
            missing = [p for p in self.parents(n) if p not in nodes]
            if missing:
                raise ScopeError(f"Subnetwork must contain the parents {missing} of {n}.")

        return BayesianNetwork(
            nodes=[self.variable(n) for n in nodes],
            edges=[e for e in self.edges if e[1] in nodes],
            cpts={n: self.cpts[n] for n in nodes},
            name=name or f"{self.name}[{','.join(nodes)}]",
        )

    def with_cpt(self, node, values, name=None):
        """Copy of this network with one CPT replaced."""
        config = self._get_config()
        config["cpts"][node] = values
        if name is not None:
            config["name"] = name
        return BayesianNetwork(**config)

    def __repr__(self):
        return f"BayesianNetwork({self.name}: {len(self.variables)} nodes, {len(self.edges)} edges)"


def _make_variable(node, i):
    if isinstance(node, Variable):
        return node
    try:
        name, states = node["name"], node["states"]
        if not isinstance(name, str):
            raise SchemaError(f"Node name must be a string, got {name!r}.", path=["nodes", i, "name"])
        if not isinstance(states, list):
            raise SchemaError("States must be a list.", path=["nodes", i, "states"])
        for j, state in enumerate(states):
            if not isinstance(state, str):
                raise SchemaError(
                    f"States of {name} must be strings, got {state!r}.", path=["nodes", i, "states", j]
                )
        return Variable(name, states)
    except SchemaError:
        raise
    except (KeyError, TypeError):
        raise SchemaError("Nodes need a name and a list of states.", path=["nodes", i])
    except ValueError as e:
        raise SchemaError(str(e), path=["nodes", i])


def _make_edge(edge, i, by_name):
    try:
        if not isinstance(edge, (list, tuple)):
            raise TypeError
        parent, child = edge
    except (TypeError, ValueError):
        raise SchemaError("Edges must be [parent, child] pairs.", path=["edges", i])

    for end in (parent, child):
        if not isinstance(end, str) or end not in by_name:
            raise SchemaError(f"Edge endpoint {end!r} is not a declared node.", path=["edges", i])
    if parent == child:
        raise SchemaError(f"Self-loop on {parent}.", path=["edges", i])

    return (parent, child)
