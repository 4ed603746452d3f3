"""Graph-level questions about a network.

Everything here only looks at the DAG, never at the numbers:
topological order, the local independencies a DAG encodes (each node
is independent of its non-descendants given its parents), and the
chain-rule factorisation compared to the reduced one the DAG allows.

"""

from dataclasses import dataclass

import networkx as nx

from pbnkit.exceptions import CycleError, UsageError, NameResolutionError


@dataclass(frozen=True)
class CIStatement:
    """The statement (left _|_ right | given) over sets of variable names.

    Sets are stored as tuples to keep a stable order for printing.
    """

    left: tuple
    right: tuple
    given: tuple = ()

    def __post_init__(self):
        for field in ("left", "right", "given"):
            value = getattr(self, field)
            if isinstance(value, str):
                value = (value,)
            object.__setattr__(self, field, tuple(value))

        if not self.left or not self.right:
            raise ValueError("Both sides of an independence statement must be nonempty.")

        names = self.left + self.right + self.given
        if len(set(names)) != len(names):
            raise ValueError(f"Sets of {self} must be pairwise disjoint and duplicate-free.")

    @property
    def variables(self):
        return self.left + self.right + self.given

    def symmetric(self):
        return CIStatement(self.right, self.left, self.given)

    def decompose(self):
        """All statements with singleton left and right sides implied by decomposition."""
        return [CIStatement((x,), (y,), self.given) for x in self.left for y in self.right]

    def __str__(self):
        text = f"{', '.join(self.left)} _|_ {', '.join(self.right)}"
        if self.given:
            text += f" | {', '.join(self.given)}"
        return text


def parse_statement(text):
    """Parse "X, Y | Z" (left, right | given) or "X _|_ Y | Z" into a CIStatement.

    In the short form the first name is the left set and the remaining
    names before "|" form the right set.
    """
    if "|" in text.replace("_|_", ""):
        head, _, given = text.replace("_|_", "#").partition("|")
    else:
        head, given = text.replace("_|_", "#"), ""

    given = [g.strip() for g in given.split(",") if g.strip()]

    if "#" in head:
        left, _, right = head.partition("#")
        left = [x.strip() for x in left.split(",") if x.strip()]
        right = [x.strip() for x in right.split(",") if x.strip()]
    else:
        names = [x.strip() for x in head.split(",") if x.strip()]
        left, right = names[:1], names[1:]

    try:
        return CIStatement(tuple(left), tuple(right), tuple(given))
    except ValueError as e:
        raise UsageError(f"Cannot read independence statement {text!r}: {e}") from None


def find_cycle(net):
    """One directed cycle as a node list (first node repeated), or None."""
    try:
        edges = nx.find_cycle(net.graph())
    except nx.NetworkXNoCycle:
        return None
    return [u for u, _ in edges] + [edges[0][0]]


def topological_order(net):
    """Nodes ordered parents-first, ties broken by declaration order.

    Raises:
        CycleError: If the graph has a directed cycle.

    """
    position = {n: i for i, n in enumerate(net.names)}
    try:
        return tuple(nx.lexicographical_topological_sort(net.graph(), key=position.get))
    except nx.NetworkXUnfeasible:
        raise CycleError(find_cycle(net)) from None


def local_independencies(net):
    """One statement (X _|_ NonDesc(X) minus Pa(X) | Pa(X)) per node.

    Nodes whose non-descendants are all parents yield no statement.
    """
    topological_order(net)  # raises on cycles

    statements = []
    for node in net.names:
        parents = net.parents(node)
        rest = tuple(n for n in net.non_descendants(node) if n not in parents)
        if rest:
            given = tuple(n for n in net.names if n in parents)
            statements.append(CIStatement((node,), rest, given))

    return statements


@dataclass(frozen=True)
class ChainFactor:
    """One factor of a chain-rule expansion: P(node | generic) vs P(node | reduced)."""

    node: str
    generic: tuple
    reduced: tuple

    def __str__(self):
        generic = f"P({self.node} | {', '.join(self.generic)})" if self.generic else f"P({self.node})"
        reduced = f"P({self.node} | {', '.join(self.reduced)})" if self.reduced else f"P({self.node})"
        return f"{generic} -> {reduced}"


def chain_rule_factorization(net, order=None):
    """Chain-rule conditioning sets along order, next to the network's parent sets.

    The generic chain rule conditions each node on all its predecessors
    in order; the network only needs the parents. The reduced sets are
    only a valid factorisation if order is topological.

    Args:
        net: BayesianNetwork.
        order: Permutation of the node names, default topological order.

    Returns:
        List of `ChainFactor`s in order.

    """
    if order is None:
        order = topological_order(net)
    order = tuple(order)

    for n in order:
        if n not in net.names:
            raise NameResolutionError(f"Unknown node {n!r} in order.")
    if sorted(order) != sorted(net.names):
        raise UsageError(f"Order {list(order)} is not a permutation of {list(net.names)}.")

    result = []
    for i, node in enumerate(order):
        result.append(ChainFactor(node, order[:i], net.parents(node)))

    return result
