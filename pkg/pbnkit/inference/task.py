"""Inference tasks."""

from dataclasses import dataclass

from pbnkit.exceptions import ScopeError, NameResolutionError
from pbnkit.distribution import EventSet

methods = {
    "enum": "enumeration",
    "enumeration": "enumeration",
    "ve": "variable_elimination",
    "variable_elimination": "variable_elimination",
}


@dataclass(frozen=True)
class InferenceTask:
    """P(targets | evidence), to be answered by method.

    Attributes:
        targets: Tuple of free target variable names.
        evidence: Tuple of `EventSet`s.
        method: "enumeration" or "variable_elimination".
        order: Optional elimination order hint (variable elimination only).

    """

    targets: tuple
    evidence: tuple = ()
    method: str = "variable_elimination"
    order: tuple = None

    def __post_init__(self):
        if isinstance(self.targets, str):
            object.__setattr__(self, "targets", (self.targets,))
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "evidence", tuple(self.evidence))
        if self.order is not None:
            object.__setattr__(self, "order", tuple(self.order))

        if self.method not in methods:
            raise ValueError(f"Unknown inference method {self.method!r}, pick one of {sorted(methods)}.")
        object.__setattr__(self, "method", methods[self.method])

        if len(set(self.targets)) != len(self.targets):
            raise ScopeError(f"Duplicate targets in {list(self.targets)}.")

        overlap = set(self.targets).intersection(self.evidence_names)
        if overlap:
            raise ScopeError(f"Targets and evidence overlap in {sorted(overlap)}.")

    @classmethod
    def make(cls, targets, evidence=None, method="variable_elimination", order=None):
        """Build a task, accepting evidence as a dict name -> state or list of states."""
        events = []
        for name, states in (evidence or {}).items():
            if isinstance(states, str):
                states = (states,)
            events.append(EventSet(name, tuple(states)))
        return cls(tuple(targets), tuple(events), method=method, order=order)

    @property
    def evidence_names(self):
        return tuple(e.variable for e in self.evidence)

    def check(self, net):
        """Make sure all names resolve in net."""
        for name in self.targets + self.evidence_names:
            if name not in net.names:
                raise NameResolutionError(f"Unknown variable {name!r} in task.")
        for e in self.evidence:
            e.check(net.variable(e.variable))
