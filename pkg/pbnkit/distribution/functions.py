"""Real functions of observables, and their expectation values.

A `StateFunction` assigns a real number to every full assignment of a
set of variables, for example F(X) = "numeric value of the observed
state", or an indicator of a subset of states. Expectations are taken
against a `Factor`, optionally conditioned on evidence:

    E[F | H] = sum_x F(x) P(x | H)

"""

import itertools
import numpy as np

from pbnkit.exceptions import ScopeError, NameResolutionError
from .factor import posterior


class StateFunction:
    """Table of real values over the joint states of some variables.

    Attributes:
        variables: Tuple of variable names.
        table: Dict mapping tuples of states (in `variables` order) to floats.

    """

    def __init__(self, variables, table):
        self.variables = tuple(variables)
        self.table = {tuple(k) if isinstance(k, (list, tuple)) else (k,): float(v) for k, v in table.items()}

        for key in self.table:
            if len(key) != len(self.variables):
                raise ValueError(
                    f"Function over {list(self.variables)} has entry {key} of wrong length."
                )

    @classmethod
    def indicator(cls, variable, states):
        """1 on the given states of variable, 0 elsewhere."""
        states = set(states)
        return cls((variable.name,), {(s,): 1.0 if s in states else 0.0 for s in variable.states})

    @classmethod
    def observable(cls, variable, values=None):
        """The "value of the observable" function.

        Without explicit values the states must parse as numbers, which
        are then used as values (`NameResolutionError` otherwise).
        """
        if values is None:
            values = default_values(variable)
        return cls((variable.name,), {(s,): values[s] for s in variable.states})

    @classmethod
    def constant(cls, variables, value=1.0):
        names = tuple(v.name for v in variables)
        table = {states: value for states in itertools.product(*[v.states for v in variables])}
        return cls(names, table)

    def check(self, variables):
        """Make sure the table is total over the domains of its variables."""
        by_name = {v.name: v for v in variables}
        for name in self.variables:
            if name not in by_name:
                raise ScopeError(f"Function variable {name!r} is not in scope.")

        domains = [by_name[n].states for n in self.variables]
        for states in itertools.product(*domains):
            if states not in self.table:
                raise NameResolutionError(
                    f"Function over {list(self.variables)} has no value for {states}."
                )

    def __call__(self, assignment):
        return self.table[tuple(assignment[n] for n in self.variables)]

    def to_dict(self):
        return {
            "variables": list(self.variables),
            "table": [list(k) + [v] for k, v in self.table.items()],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["variables"], {tuple(row[:-1]): row[-1] for row in d["table"]})


def default_values(variable):
    """Numeric value of each state, for variables whose states are numbers.

    Raises:
        NameResolutionError: If a state does not parse as a number.

    """
    try:
        values = {s: float(s) for s in variable.states}
    except ValueError:
        values = None

    if values is None or not np.all(np.isfinite(list(values.values()))):
        raise NameResolutionError(
            f"States {list(variable.states)} of {variable.name} are not numbers; give {variable.name} a function table."
        )
    return values


def expectation(dist, func, given=None):
    """Expectation value of func under dist, optionally given events.

    The events may concern the function's own variables, which gives
    the expectation over a subset H of the sample space.

    Args:
        dist: Factor whose scope contains the function's variables.
        func: StateFunction.
        given: Optional list of `EventSet`s.

    Raises:
        ImpossibleEvidence: If the events have probability zero.

    """
    func.check(dist.scope)
    p = posterior(dist, given or [], func.variables)

    f = np.array([func(a) for a, _ in p.rows()]).reshape(p.shape)
    return float(np.sum(f * p.values))
