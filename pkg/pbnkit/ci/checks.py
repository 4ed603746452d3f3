"""Numerical conditional independence checks.

Two granularities:

    - events: is P(x | y, z) = P(x | z) for one assignment each?
      (True by definition if P(y, z) = 0.)
    - variables: does P(x, y | z) = P(x | z) P(y | z) hold for *all*
      x, y and all z with P(z) > 0?

The variable check never rounds: it reports the largest deviation it
found, and the statement "holds at tol" means exactly
max_deviation <= tol.

"""

from dataclasses import dataclass

import numpy as np

from pbnkit import env
from pbnkit.exceptions import ScopeError, PartitionOverlap
from pbnkit.distribution import events_from_assignment, event_mass, check_assignment
from pbnkit.network import joint_distribution, local_independencies


@dataclass(frozen=True)
class CIReport:
    """Outcome of checking one statement.

    Attributes:
        statement: The CIStatement checked.
        holds: True iff max_deviation <= tolerance.
        max_deviation: max |P(x,y|z) - P(x|z)P(y|z)| over cells with P(z) > 0.
        witness: Assignment (dict) of the worst cell.
        tolerance: Tolerance used.

    """

    statement: object
    holds: bool
    max_deviation: float
    witness: dict
    tolerance: float

    def __str__(self):
        verdict = "holds" if self.holds else "fails"
        witness = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.statement}: {verdict} (max deviation {self.max_deviation:.3e} at {witness})"


def check_event_independence(dist, x, y, z=None, tol=None):
    """Is event x independent of event y given event z in dist?

    Args:
        dist: Factor (need not be normalised).
        x, y, z: Assignments (dicts name -> state); z optional.
        tol: Tolerance for P(x|y,z) = P(x|z).

    """
    if tol is None:
        tol = env.tolerance
    z = z or {}

    names = list(x) + list(y) + list(z)
    if len(set(names)) != len(names):
        raise PartitionOverlap(f"Events must concern disjoint variables, got {names}.")
    for a in (x, y, z):
        for name in a:
            dist.variable(name)
        check_assignment(dist.scope, a)

    ex, ey, ez = (events_from_assignment(a) for a in (x, y, z))

    p_yz = event_mass(dist, ey + ez)
    if p_yz <= 0.0:
        return True

    p_xyz = event_mass(dist, ex + ey + ez)
    p_z = event_mass(dist, ez)
    p_xz = event_mass(dist, ex + ez)

    return abs(p_xyz / p_yz - p_xz / p_z) <= tol


def _grouped(dist, left, right, given):
    """dist as an array with axes (left block, right block, given block)."""
    for name in left + right + given:
        dist.axis(name)

    order = list(left) + list(right) + list(given)
    others = tuple(dist.axis(n) for n in dist.names if n not in order)

    values = dist.values.sum(axis=others) if others else dist.values
    kept = [n for n in dist.names if n in order]
    values = np.transpose(values, [kept.index(n) for n in order])

    size = lambda names: int(np.prod([dist.variable(n).cardinality for n in names]))
    return values.reshape(size(left), size(right), size(given)) / values.sum()


def ci_deviation(dist, left, right, given=()):
    """Largest |P(x,y|z) - P(x|z)P(y|z)| and the flat index of where it occurs.

    Empty left or right sides are trivially independent.
    """
    if not left or not right:
        return 0.0, None

    p = _grouped(dist, tuple(left), tuple(right), tuple(given))

    p_z = p.sum(axis=(0, 1))
    p_xz = p.sum(axis=1)
    p_yz = p.sum(axis=0)

    safe = np.where(p_z > 0, p_z, 1.0)
    deviation = np.abs(p / safe - (p_xz[:, None, :] / safe) * (p_yz[None, :, :] / safe))
    deviation = np.where(p_z[None, None, :] > 0, deviation, 0.0)

    worst = int(np.argmax(deviation))
    return float(deviation.flat[worst]), np.unravel_index(worst, deviation.shape)


def _witness(dist, names, flat_index):
    """Turn the index of a block into an assignment dict."""
    if flat_index is None:
        return {}
    shape = [dist.variable(n).cardinality for n in names]
    if not shape:
        return {}
    index = np.unravel_index(int(flat_index), shape)
    return {n: dist.variable(n).states[i] for n, i in zip(names, index)}


def check_variable_ci(dist, statement, tol=None):
    """Exhaustively check a CIStatement in dist.

    Returns:
        CIReport; the deviation is reported even when the statement holds.

    """
    if tol is None:
        tol = env.tolerance

    for name in statement.variables:
        if name not in dist.names:
            raise ScopeError(f"Statement variable {name!r} is not in scope {list(dist.names)}.")

    deviation, where = ci_deviation(dist, statement.left, statement.right, statement.given)

    witness = {}
    if where is not None:
        i, j, k = where
        witness.update(_witness(dist, statement.left, i))
        witness.update(_witness(dist, statement.right, j))
        witness.update(_witness(dist, statement.given, k))

    return CIReport(statement, deviation <= tol, deviation, witness, tol)


def verify_local_independencies(net, tol=None):
    """Check every local independence of net in its joint distribution."""
    joint = joint_distribution(net)
    return [check_variable_ci(joint, s, tol) for s in local_independencies(net)]
