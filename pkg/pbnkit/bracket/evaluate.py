"""Evaluation of bracket queries against a network.

Brackets are evaluated on the joint distribution of the network; plain
conditional probabilities may instead be answered by an inference
engine (`method="enum"` or `"ve"`).

    P(A | K)                  conditional probability (a table for free targets)
    P(A | [V] | K)            sum over v of P(A | v, K) P(v | K)
    P(A | Y | K)              sum over y of F(y) P(A | y, K) P(y | K)
    E[F | K]                  sum over x of F(x) P(x | K)

A unit operator [V] is a resolution of the identity, so a well-formed
insertion never changes the value; `evaluate` checks this against the
direct value. For an operator bracket whose ket fixes Y = y the sum
collapses to F(y) P(A | y), and for the Omega ket it is
sum_y F(y) P(A, y).

Invalid or meaningless brackets are refused with `InvalidBracket`
unless `force=True`. Forced brackets are evaluated literally: each
bracket is conditioned only on its immediate right neighbour, e.g.

    P(A | [V] | K) -> sum_v P(A | v) P(v | K)

which is how such expressions come out wrong: P(I=i0 | [S] | I=i0)
evaluates to about 0.878 instead of 1.

Operator values come from a function table (name -> `StateFunction`),
or, for a plain network variable, from its states read as numbers.
States that are not numbers need a table entry.

"""

from dataclasses import dataclass

import numpy as np

from pbnkit import logger, env
from pbnkit.engine import read_yaml
from pbnkit.exceptions import InvalidBracket, ImpossibleEvidence, SchemaError
from pbnkit.distribution import (
    EventSet,
    Factor,
    StateFunction,
    event_mass,
    expectation,
    marginal,
    posterior,
    restrict,
)
from pbnkit.network import joint_distribution
from pbnkit.inference import InferenceTask, get_engine
from .ast import PROBABILITY, EXPECTATION, OPERATOR
from .validity import validate

# agreement required between inserted and direct evaluation
insertion_tolerance = 1e-9


@dataclass(frozen=True)
class QueryResult:
    """Value of a bracket query.

    Attributes:
        expression: The evaluated `BracketExpression`.
        report: Its `ValidityReport`.
        value: Scalar result (fully bound targets), else None.
        table: Factor over the free targets, else None.

    """

    expression: object
    report: object
    value: float = None
    table: object = None

    @property
    def is_scalar(self):
        return self.table is None

    def to_rows(self, precision=None):
        """Header and rows of strings: free targets followed by the value."""
        if precision is None:
            precision = env.precision

        if self.is_scalar:
            return ["value"], [[f"{self.value:.{precision}f}"]]

        header = list(self.table.names) + ["P"]
        rows = [
            [assignment[n] for n in self.table.names] + [f"{value:.{precision}f}"]
            for assignment, value in self.table.rows()
        ]
        return header, rows

    def format(self, precision=None, style="table"):
        """Text rendering; style is "table" (aligned columns) or "tsv"."""
        if self.is_scalar:
            return self.to_rows(precision)[1][0][0]

        header, rows = self.to_rows(precision)
        if style == "tsv":
            return "\n".join("\t".join(r) for r in [header] + rows)

        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
            for r in [header] + rows
        )

    def __float__(self):
        if not self.is_scalar:
            raise TypeError("Query result is a table, not a number.")
        return self.value


def load_functions(filename):
    """Read a function table from yaml.

    The document maps function names to `{variables: [...], table:
    [[state, ..., value], ...]}`.
    """
    d = read_yaml(filename)
    if not isinstance(d, dict):
        raise SchemaError("Function table must be a mapping of names to functions.")

    functions = {}
    for name, entry in d.items():
        try:
            functions[name] = StateFunction.from_dict(entry)
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"Malformed function {name!r}: {e}", path=[name]) from None
    return functions


def function_for(name, net, functions=None):
    """The named function, or the observable of the network variable called name.

    Raises:
        NameResolutionError: If name has no function table entry and is not
            a network variable with numeric states.

    """
    functions = functions or {}
    if name in functions:
        return functions[name]

    variable = net.variable(name)
    return StateFunction.observable(variable)



def _points(assignment):
    return [EventSet.point(n, s) for n, s in assignment.items()]


def _bra(joint, targets, evidence):
    """P(targets | evidence) over the free targets, as an ndarray."""
    names = [t.name for t in targets]
    if not names:
        if event_mass(joint, evidence) <= 0.0:
            raise ImpossibleEvidence(f"Evidence {list(evidence)} has probability zero.")
        return np.array(1.0)

    p = posterior(joint, evidence, names)
    p = restrict(p, [EventSet.point(t.name, t.state) for t in targets if t.bound])
    return marginal(p, [t.name for t in targets if not t.bound]).values


def _inserted(joint, targets, evidence, insertions, literal):
    """P(targets | insertions... | evidence)."""
    if not insertions:
        return _bra(joint, targets, evidence)

    if not literal:
        inserted = []
        for block in insertions:
            inserted.extend(n for n in block if n not in inserted)

        total = 0.0
        for u, weight in posterior(joint, evidence, inserted).rows():
            if weight > 0.0:
                total = total + weight * _bra(joint, targets, list(evidence) + _points(u))
        return total

    weights = posterior(joint, evidence, insertions[-1])
    for block in reversed(insertions[:-1]):
        acc = 0.0
        for v, weight in weights.rows():
            if weight > 0.0:
                acc = acc + weight * posterior(joint, _points(v), block).values
        weights = Factor([joint.variable(n) for n in block], acc)

    total = 0.0
    for v, weight in weights.rows():
        if weight > 0.0:
            total = total + weight * _bra(joint, targets, _points(v))
    return total


def _operator(joint, expr, func, insertions, literal):
    """sum_y F(y) P(targets | insertions | y, K) P(y | K)."""
    evidence = list(expr.evidence)

    total = 0.0
    for y, weight in posterior(joint, evidence, func.variables).rows():
        if weight > 0.0:
            given = _points(y) if literal else _points(y) + evidence
            inner = _inserted(joint, expr.targets, given, insertions, literal)
            total = total + func(y) * weight * inner
    return total


def _engine_bra(net, expr, method, trace):
    """Like `_bra`, but answered by an inference engine instead of the joint."""
    task = InferenceTask(expr.target_names, expr.evidence, method=method)
    engine = get_engine(task.method)
    if task.method == "variable_elimination":
        p = engine(net, task, trace=trace)
    else:
        p = engine(net, task)

    p = restrict(p, [EventSet.point(t.name, t.state) for t in expr.targets if t.bound])
    return marginal(p, expr.free_names).values


def evaluate(expr, net, functions=None, force=False, method=None, trace=None):
    """Evaluate a parsed query on net.

    Args:
        expr: BracketExpression.
        net: BayesianNetwork.
        functions: Optional dict of name -> StateFunction.
        force: Evaluate invalid and meaningless brackets literally.
        method: Inference method ("enum", "ve", ...) for plain conditional
            probabilities; None uses the joint distribution.
        trace: Optional list collecting `EliminationStep`s (method "ve").

    Returns:
        QueryResult.

    Raises:
        NameResolutionError: If a name does not resolve.
        InvalidBracket: If the bracket is not well-formed and not forced.
        ImpossibleEvidence: If the ket has probability zero.

    """
    report = validate(expr, net, functions)
    literal = not report.well_formed
    if literal:
        if not force:
            raise InvalidBracket(report)
        logger.warning(f"Forcing evaluation of {report.classification} bracket {expr}.")

    plain = (
        expr.kind == PROBABILITY
        and not expr.insertions
        and expr.targets
        and not set(expr.target_names).intersection(expr.evidence_names)
    )
    if method is not None and plain:
        return _result(expr, report, net, _engine_bra(net, expr, method, trace))

    joint = joint_distribution(net)

    if expr.kind == EXPECTATION:
        func = function_for(expr.operator, net, functions)
        value = expectation(joint, func, list(expr.evidence))
        return QueryResult(expr, report, value=value)

    def compute(insertions):
        if expr.kind == OPERATOR:
            func = function_for(expr.operator, net, functions)
            return _operator(joint, expr, func, insertions, literal)
        return _inserted(joint, expr.targets, list(expr.evidence), insertions, literal)

    values = compute(expr.insertions)

    if expr.insertions and not literal:
        direct = np.asarray(compute(()), dtype=float)
        if not np.allclose(values, direct, rtol=0.0, atol=insertion_tolerance):
            raise ArithmeticError(
                f"Insertion changed the value of {expr}: {np.ravel(values).tolist()} != {direct.ravel().tolist()}."
            )

    return _result(expr, report, net, values)


def _result(expr, report, net, values):
    values = np.asarray(values, dtype=float)

    free = expr.free_names
    if not free:
        return QueryResult(expr, report, value=float(values))

    table = Factor([net.variable(n) for n in free], values)
    return QueryResult(expr, report, table=table)
