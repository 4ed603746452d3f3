"""Built-in networks.

The Student network: Difficulty and Intelligence are independent
roots, Grade depends on both, SAT depends on Intelligence and Letter
depends on Grade. The numbers reproduce the usual textbook tables.

The smaller networks are pieces of the Student network (which keep
their CPTs, since they are ancestrally closed) or generic shapes used
to illustrate independencies.

"""

from pbnkit.distribution import Variable
from pbnkit.exceptions import UsageError
from .network import BayesianNetwork


def student_network():
    """The five-node Student network (D, I, G, S, L)."""
    d = Variable("D", ["d0", "d1"])  # easy, hard
    i = Variable("I", ["i0", "i1"])  # low, high
    g = Variable("G", ["g1", "g2", "g3"])  # A, B, C
    s = Variable("S", ["s0", "s1"])  # low, high
    l = Variable("L", ["l0", "l1"])  # weak, strong

    return BayesianNetwork.build(
        [d, i, g, s, l],
        parents={"G": ["I", "D"], "S": ["I"], "L": ["G"]},
        cpts={
            "D": [0.6, 0.4],
            "I": [0.7, 0.3],
            # rows (i0, d0), (i0, d1), (i1, d0), (i1, d1)
            "G": [0.3, 0.4, 0.3, 0.05, 0.25, 0.7, 0.9, 0.08, 0.02, 0.5, 0.3, 0.2],
            "S": [0.95, 0.05, 0.2, 0.8],
            "L": [0.1, 0.9, 0.4, 0.6, 0.99, 0.01],
        },
        name="student",
    )


def two_variable_network():
    """Intelligence -> SAT."""
    return student_network().subnetwork(["I", "S"], name="intelligence_sat")


def dig_network():
    """Difficulty -> Grade <- Intelligence."""
    return student_network().subnetwork(["D", "I", "G"], name="difficulty_intelligence_grade")


def chain_network(declaration=("X", "Y", "Z")):
    """X -> Y -> Z, with nodes declared in the given order."""
    variables = {n: Variable(n, [f"{n.lower()}0", f"{n.lower()}1"]) for n in ("X", "Y", "Z")}

    return BayesianNetwork.build(
        [variables[n] for n in declaration],
        parents={"Y": ["X"], "Z": ["Y"]},
        cpts={"X": [0.4, 0.6], "Y": [0.7, 0.3, 0.2, 0.8], "Z": [0.9, 0.1, 0.25, 0.75]},
        name="chain",
    )


def naive_network(k=3):
    """k unconnected binary roots."""
    variables = [Variable(f"X{j}", ["a", "b"]) for j in range(k)]
    cpts = {v.name: [0.2 + 0.1 * j, 0.8 - 0.1 * j] for j, v in enumerate(variables)}
    return BayesianNetwork.build(variables, parents={}, cpts=cpts, name="naive")


builtins = {
    "student": student_network,
    "intelligence_sat": two_variable_network,
    "dig": dig_network,
    "chain": chain_network,
    "naive": naive_network,
}


def get_builtin(name):
    if name in builtins:
        return builtins[name]()
    else:
        raise UsageError(f"No built-in network named {name}. Known: {sorted(builtins)}.")
