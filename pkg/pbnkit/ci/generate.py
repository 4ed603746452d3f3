"""Seeded distributions for exercising the independence axioms.

`random_distribution` draws a generic joint, which almost never
satisfies any independence exactly. `factorized_distribution` builds
P(z) P(x|z) P(y,w|z), which satisfies X _|_ {Y, W} | Z by construction
and therefore the antecedents of every axiom in the suite.
`copy_distribution` is the classic non-positive counterexample for
intersection: three perfectly correlated copies of one fair variable.

Seeds may be integers or sequences of integers (as accepted by
`numpy.random.default_rng`); the same seed always gives bit-identical
values.

"""

import numpy as np

from pbnkit.exceptions import ResourceCapExceeded
from pbnkit.distribution import Factor, factor_product, normalize

max_cells = 2 ** 16


def _check_size(variables):
    size = int(np.prod([v.cardinality for v in variables]))
    if size > max_cells:
        raise ResourceCapExceeded(f"Distribution would have {size} cells (cap {max_cells}).")
    return size


def random_distribution(variables, seed, positive=False):
    """Normalized random joint over variables.

    Cells are uniform(0, 1), or uniform(1e-3, 1) if positive.
    """
    variables = tuple(variables)
    size = _check_size(variables)

    rng = np.random.default_rng(seed)
    low = 1e-3 if positive else 0.0
    values = rng.uniform(low, 1.0, size=size)

    return normalize(Factor(variables, values))


def _conditional(rng, given, over, low):
    """Random factor over (given, over), normalized along the `over` block."""
    n_given = int(np.prod([v.cardinality for v in given]))
    n_over = int(np.prod([v.cardinality for v in over]))

    values = rng.uniform(low, 1.0, size=(n_given, n_over))
    values = values / values.sum(axis=1, keepdims=True)

    return Factor(tuple(given) + tuple(over), values)


def factorized_distribution(x, y, z, w, seed, positive=True):
    """P(z) P(x|z) P(y,w|z) over the four (possibly empty) variable lists.

    The scope order is x, y, z, w.
    """
    x, y, z, w = (tuple(v) for v in (x, y, z, w))
    _check_size(x + y + z + w)

    rng = np.random.default_rng(seed)
    low = 1e-3 if positive else 0.0

    p_z = _conditional(rng, (), z, low)
    p_x = _conditional(rng, z, x, low)
    p_yw = _conditional(rng, z, y + w, low)

    joint = factor_product(factor_product(p_z, p_x), p_yw)
    names = [v.name for v in x + y + z + w]
    return normalize(joint.align(names))


def copy_distribution(x, y, w):
    """X = Y = W, uniformly distributed; the variables must share a cardinality."""
    k = x.cardinality
    if y.cardinality != k or w.cardinality != k:
        raise ValueError("Copied variables must have the same number of states.")

    values = np.zeros((k, k, k))
    for i in range(k):
        values[i, i, i] = 1.0 / k

    return Factor((x, y, w), values, normalized=True)
