"""Variables, events and assignments.

A `Variable` is a named discrete random variable with an ordered
domain of states. Evidence is expressed as `EventSet`s, i.e. "variable
takes one of these states"; a point observation is simply an
`EventSet` with one state.

Assignments are plain dicts mapping variable names to state names,
possibly partial. `check_assignment` validates them against a scope.

"""

from dataclasses import dataclass

from pbnkit.exceptions import NameResolutionError, DomainMismatch


@dataclass(frozen=True)
class Variable:
    """Discrete random variable.

    Attributes:
        name: Identifier of the variable.
        states: Tuple of state identifiers, in domain order.

    """

    name: str
    states: tuple

    def __post_init__(self):
        # allow lists to be passed in, but store tuples
        object.__setattr__(self, "states", tuple(self.states))

        if not isinstance(self.name, str) or self.name == "":
            raise ValueError(f"Variable name must be a nonempty string, got {self.name!r}.")
        if len(self.states) < 1:
            raise ValueError(f"Variable {self.name} needs at least one state.")
        if not all(isinstance(s, str) and s != "" for s in self.states):
            raise ValueError(f"States of {self.name} must be nonempty strings, got {list(self.states)!r}.")
        if len(set(self.states)) != len(self.states):
            raise ValueError(f"Variable {self.name} has duplicate states {self.states}.")

    @property
    def cardinality(self):
        return len(self.states)

    def index(self, state):
        """Position of state in the domain."""
        try:
            return self.states.index(state)
        except ValueError:
            raise NameResolutionError(
                f"State {state!r} is not in the domain of {self.name} {self.states}."
            ) from None

    def __repr__(self):
        return f"Variable({self.name}: {', '.join(self.states)})"


@dataclass(frozen=True)
class EventSet:
    """The event "variable takes a state in states".

    Attributes:
        variable: Name of the variable.
        states: Nonempty tuple of distinct state names.

    """

    variable: str
    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))

        if len(self.states) == 0:
            raise ValueError(f"Event on {self.variable} must contain at least one state.")
        if len(set(self.states)) != len(self.states):
            raise ValueError(f"Event on {self.variable} has duplicate states {self.states}.")

    @classmethod
    def point(cls, variable, state):
        return cls(variable, (state,))

    @property
    def is_point(self):
        return len(self.states) == 1

    def check(self, variable):
        """Make sure this event fits the domain of variable."""
        if variable.name != self.variable:
            raise DomainMismatch(f"Event on {self.variable} checked against {variable.name}.")
        for s in self.states:
            variable.index(s)

    def is_vacuous(self, variable):
        """True if this event covers the whole domain."""
        return set(self.states) == set(variable.states)

    def __repr__(self):
        if self.is_point:
            return f"{self.variable}={self.states[0]}"
        return f"{self.variable} in {{{', '.join(self.states)}}}"


def events_from_assignment(assignment):
    """Turn a (partial) assignment dict into a list of point EventSets."""
    return [EventSet.point(name, state) for name, state in assignment.items()]


def check_assignment(variables, assignment):
    """Validate a (partial) assignment against a list of variables.

    Every bound variable must exist, and every bound state must belong
    to its variable's domain.
    """
    by_name = {v.name: v for v in variables}

    for name, state in assignment.items():
        if name not in by_name:
            raise NameResolutionError(f"Unknown variable {name!r} in assignment.")
        by_name[name].index(state)


def check_unique_names(variables):
    names = [v.name for v in variables]
    if len(set(names)) != len(names):
        raise DomainMismatch(f"Variable names must be unique within a scope, got {names}.")
