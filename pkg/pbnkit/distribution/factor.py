"""Dense factor algebra.

A `Factor` is a nonnegative table over an ordered scope of variables.
Values are stored as a dense `numpy` array with one axis per scope
variable, in C order, so the flat view is the mixed-radix layout with
the LAST scope variable varying fastest.

Factors never change after construction: the value array is marked
read-only, and all operations return new factors. This makes them safe
to share between threads or workers.

The operations mirror the manipulations one does by hand with joint,
marginal and conditional tables:

    factor_product  P(x) * P(y|x) -> P(x, y)
    sum_out         P(x, y) -> P(x)
    restrict        zero every cell outside an event
    normalize       divide by total mass
    condition       P(x, y) -> P(x | y in H)

"""

import itertools
import numpy as np

from pbnkit.exceptions import DomainMismatch, ScopeError, ZeroMass, ImpossibleEvidence
from pbnkit.exceptions import ResourceCapExceeded
from .variable import Variable, EventSet, check_unique_names

# tolerance for "sums to one"
normalization_tolerance = 1e-9


class Factor:
    """Nonnegative table over an ordered scope.

    Attributes:
        scope: Tuple of `Variable`s.
        values: Read-only ndarray with shape `(card_1, ..., card_n)`.
        normalized: True if the factor was produced by normalisation.

    """

    def __init__(self, scope, values, normalized=False):
        scope = tuple(scope)
        check_unique_names(scope)

        shape = tuple(v.cardinality for v in scope)
        values = np.array(values, dtype=float)

        if values.size != int(np.prod(shape, dtype=np.int64)):
            raise ValueError(
                f"Factor over {[v.name for v in scope]} needs {int(np.prod(shape))} values, got {values.size}."
            )
        values = values.reshape(shape)

        if np.any(np.isnan(values)) or np.any(values < 0):
            raise ValueError("Factor values must be nonnegative numbers.")

        if normalized and abs(values.sum() - 1.0) > normalization_tolerance:
            raise ValueError(f"Factor flagged normalized sums to {values.sum()}.")

        values.flags.writeable = False

        self.scope = scope
        self.values = values
        self.normalized = normalized

    @classmethod
    def scalar(cls, value=1.0):
        """Factor with empty scope."""
        return cls((), [value])

    @property
    def names(self):
        return tuple(v.name for v in self.scope)

    @property
    def shape(self):
        return self.values.shape

    @property
    def size(self):
        return self.values.size

    @property
    def flat(self):
        """Flat view, last scope variable fastest."""
        return self.values.ravel()

    def variable(self, name):
        for v in self.scope:
            if v.name == name:
                return v
        raise ScopeError(f"Variable {name!r} is not in scope {list(self.names)}.")

    def axis(self, name):
        self.variable(name)
        return self.names.index(name)

    def total(self):
        return float(self.values.sum())

    def is_normalized(self, tol=normalization_tolerance):
        return abs(self.total() - 1.0) <= tol

    def lookup(self, assignment):
        """Value of the cell matching a full assignment of the scope."""
        missing = [n for n in self.names if n not in assignment]
        if missing:
            raise ScopeError(f"Assignment does not bind {missing}.")
        index = tuple(v.index(assignment[v.name]) for v in self.scope)
        return float(self.values[index])

    def align(self, names):
        """Same factor with axes reordered to names (a permutation of the scope)."""
        names = tuple(names)
        if sorted(names) != sorted(self.names):
            raise ScopeError(f"Cannot align scope {list(self.names)} to {list(names)}.")

        axes = [self.names.index(n) for n in names]
        scope = [self.scope[a] for a in axes]
        return Factor(scope, np.transpose(self.values, axes), normalized=self.normalized)

    def allclose(self, other, atol=1e-12):
        """Compare values after aligning other to this scope."""
        if sorted(self.names) != sorted(other.names):
            return False
        other = other.align(self.names)
        if any(a != b for a, b in zip(self.scope, other.scope)):
            return False
        return bool(np.allclose(self.values, other.values, rtol=0.0, atol=atol))

    def rows(self):
        """Iterate over (assignment, value) in storage order."""
        for a, value in zip(assignments(self.scope), self.flat):
            yield a, float(value)

    def __mul__(self, other):
        return factor_product(self, other)

    def __repr__(self):
        return f"Factor({list(self.names)}, {self.flat.tolist()})"


def assignments(scope):
    """All full assignments of scope, as dicts, last variable fastest."""
    scope = tuple(scope)
    for states in itertools.product(*[v.states for v in scope]):
        yield dict(zip([v.name for v in scope], states))


def merge_scopes(a, b):
    """Scope of a product: a's order, then b's unseen variables.

    Raises DomainMismatch if a name appears with two different domains.
    """
    by_name = {v.name: v for v in a}
    scope = list(a)
    for v in b:
        if v.name in by_name:
            if by_name[v.name] != v:
                raise DomainMismatch(
                    f"Variable {v.name} appears with domains {by_name[v.name].states} and {v.states}."
                )
        else:
            scope.append(v)
            by_name[v.name] = v
    return tuple(scope)


def _broadcast_to(f, scope):
    """View of f's values with axes arranged along scope, size-1 where absent."""
    present = [v.name for v in scope if v.name in f.names]
    aligned = np.transpose(f.values, [f.names.index(n) for n in present])
    shape = [v.cardinality if v.name in f.names else 1 for v in scope]
    return aligned.reshape(shape)


def factor_product(a, b, max_cells=None):
    """Pointwise product over the union of both scopes.

    Args:
        a, b: Factors. Shared variables must have identical domains.
        max_cells: Optional, raise ResourceCapExceeded if the result
            would have more cells than this.

    Returns:
        Factor over a's scope followed by b's new variables.

    """
    scope = merge_scopes(a.scope, b.scope)

    if max_cells is not None:
        size = int(np.prod([v.cardinality for v in scope], dtype=np.int64))
        if size > max_cells:
            raise ResourceCapExceeded(
                f"Product over {[v.name for v in scope]} would have {size} cells (cap {max_cells})."
            )

    values = _broadcast_to(a, scope) * _broadcast_to(b, scope)
    return Factor(scope, values)


def sum_out(f, names):
    """Sum over all states of the named variables."""
    names = list(names)
    axes = tuple(f.axis(n) for n in names)
    if not axes:
        return f

    scope = [v for v in f.scope if v.name not in names]
    return Factor(scope, f.values.sum(axis=axes))


def marginal(f, names):
    """Keep only the named variables (in that order), summing out the rest."""
    names = list(names)
    for n in names:
        f.axis(n)
    others = [n for n in f.names if n not in names]
    return sum_out(f, others).align(names)


def _mask(f, evidence):
    mask = np.ones(f.shape, dtype=bool)
    for event in evidence:
        variable = f.variable(event.variable)
        event.check(variable)

        keep = np.zeros(variable.cardinality, dtype=bool)
        keep[[variable.index(s) for s in event.states]] = True

        shape = [1] * len(f.scope)
        shape[f.axis(event.variable)] = variable.cardinality
        mask &= keep.reshape(shape)
    return mask


def restrict(f, evidence):
    """Zero every cell whose state lies outside an event.

    Multiple events on the same variable intersect. The result is
    not renormalised.
    """
    evidence = list(evidence)
    if not evidence:
        return f
    return Factor(f.scope, np.where(_mask(f, evidence), f.values, 0.0))


def normalize(f):
    """Divide by the total mass."""
    total = f.total()
    if total <= 0.0:
        raise ZeroMass(f"Cannot normalize factor over {list(f.names)} with zero mass.")
    return Factor(f.scope, f.values / total, normalized=True)


def event_mass(f, evidence):
    """Total mass of f inside the events."""
    evidence = list(evidence)
    if not evidence:
        return f.total()
    return float(f.values[_mask(f, evidence)].sum())


def posterior(joint, evidence, targets):
    """Normalized distribution over targets given evidence.

    Unlike `condition`, targets may overlap the evidence, which is what
    the subset-conditioned expectation needs: P(x | x in H).
    """
    evidence = list(evidence)
    restricted = restrict(joint, evidence)
    mass = restricted.total()
    if mass <= 0.0:
        raise ImpossibleEvidence(f"Evidence {evidence} has probability zero.")

    reduced = marginal(restricted, targets)
    return Factor(reduced.scope, reduced.values / mass, normalized=True)


def condition(joint, evidence, targets):
    """P(targets | evidence) from a joint distribution.

    Args:
        joint: Factor over (at least) targets and evidence variables.
        evidence: List of `EventSet`s.
        targets: List of variable names, disjoint from the evidence.

    Returns:
        Normalized factor over targets, in the given order.

    Raises:
        ImpossibleEvidence: If the evidence has probability zero.

    """
    evidence = list(evidence)
    targets = list(targets)

    evidence_names = {e.variable for e in evidence}
    overlap = evidence_names.intersection(targets)
    if overlap:
        raise ScopeError(f"Targets and evidence overlap in {sorted(overlap)}.")
    if len(set(targets)) != len(targets):
        raise ScopeError(f"Duplicate targets {targets}.")

    return posterior(joint, evidence, targets)


def point_mass(variable, state):
    """The factor delta_{state} over a single variable."""
    values = np.zeros(variable.cardinality)
    values[variable.index(state)] = 1.0
    return Factor((variable,), values, normalized=True)
