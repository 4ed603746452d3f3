"""The full joint distribution of a network, and chain-rule products.

The joint is the product of all CPTs, multiplied in topological order
and then aligned to declaration order. Networks are immutable, so the
joint is computed once per network and kept on the instance.

"""

import numpy as np

from pbnkit import logger
from pbnkit.distribution import Factor, factor_product, marginal
from .graph import topological_order, chain_rule_factorization
from .validation import require_valid


def joint_distribution(net):
    """P(x_1, ..., x_n) = prod_i P(x_i | pa(x_i)).

    Raises:
        NetworkInvalid: If the network fails validation.

    """
    if net._joint is not None:
        return net._joint

    require_valid(net)

    joint = Factor.scalar(1.0)
    for node in topological_order(net):
        joint = factor_product(joint, net.cpts[node])

    joint = joint.align(net.names)
    net._joint = Factor(joint.scope, joint.values, normalized=joint.is_normalized())

    logger.debug(f"Built joint of {net.get_hid()} with {joint.size} cells.")

    return net._joint


def conditional_table(joint, node, given):
    """P(node | given) as a factor over (given..., node), computed from a joint.

    Rows whose conditioning assignment has probability zero are left at zero.
    """
    given = list(given)
    full = marginal(joint, given + [node])

    if not given:
        return Factor(full.scope, full.values / full.values.sum())

    denominator = full.values.sum(axis=-1, keepdims=True)
    values = np.divide(
        full.values, denominator, out=np.zeros_like(full.values), where=denominator > 0
    )
    return Factor(full.scope, values)


def chain_rule_product(net, order=None, reduced=False):
    """Product of the chain-rule factors along order.

    With `reduced=False`, each factor P(x_i | x_1, ..., x_{i-1}) is
    computed from the joint; with `reduced=True`, the network's own
    CPTs P(x_i | pa(x_i)) are used. Both reproduce the joint.
    """
    expansion = chain_rule_factorization(net, order)

    if reduced:
        factors = [net.cpts[f.node] for f in expansion]
    else:
        joint = joint_distribution(net)
        factors = [conditional_table(joint, f.node, f.generic) for f in expansion]

    product = Factor.scalar(1.0)
    for f in factors:
        product = factor_product(product, f)

    return product.align(net.names)
