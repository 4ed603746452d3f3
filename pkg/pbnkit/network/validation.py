"""Network validation.

`validate_network` never raises for a broken network: it collects
every violation it finds into a `ValidationReport`. Operations that
need a valid network call `require_valid`, which raises
`NetworkInvalid` carrying the report.

Checks:
    - the graph is acyclic
    - each CPT has scope (parents in declared order, node) with the
      network's own variable definitions
    - each CPT row sums to one within `row_tolerance`

"""

from dataclasses import dataclass, field

from pbnkit.exceptions import NetworkInvalid
from .graph import find_cycle

row_tolerance = 1e-9


@dataclass(frozen=True)
class Violation:
    node: str
    kind: str  # "cycle", "scope" or "normalization"
    message: str
    excess: float = 0.0

    def __str__(self):
        return f"{self.node}: {self.message}"


@dataclass
class ValidationReport:
    network: str
    n_nodes: int = 0
    n_rows: int = 0
    violations: list = field(default_factory=list)

    @property
    def valid(self):
        return len(self.violations) == 0

    def by_kind(self, kind):
        return [v for v in self.violations if v.kind == kind]

    def summary(self):
        if self.valid:
            return f"{self.network} is valid: {self.n_nodes} nodes, {self.n_rows} CPT rows."
        return f"{self.network} has {len(self.violations)} violation(s): " + "; ".join(
            str(v) for v in self.violations
        )

    def lines(self):
        yield self.summary()
        for v in self.violations:
            yield f"  [{v.kind}] {v}"


def validate_network(net, tol=row_tolerance):
    """Collect all structural and numerical problems of net."""
    report = ValidationReport(network=net.name, n_nodes=len(net.variables))

    cycle = find_cycle(net)
    if cycle is not None:
        report.violations.append(
            Violation(cycle[0], "cycle", "directed cycle " + " -> ".join(cycle))
        )

    for node in net.names:
        cpt = net.cpts[node]
        expected = tuple(net.variable(n) for n in net.parents(node)) + (net.variable(node),)

        if cpt.scope != expected:
            report.violations.append(
                Violation(
                    node,
                    "scope",
                    f"CPT scope {list(cpt.names)} should be {[v.name for v in expected]}",
                )
            )
            continue

        rows = cpt.values.reshape(-1, net.variable(node).cardinality)
        report.n_rows += rows.shape[0]

        sums = rows.sum(axis=1)
        for i, s in enumerate(sums):
            if abs(s - 1.0) > tol:
                report.violations.append(
                    Violation(
                        node,
                        "normalization",
                        f"CPT row {i} sums to {s:.12g} (excess {s - 1.0:+.3g})",
                        excess=float(s - 1.0),
                    )
                )

    return report


def require_valid(net):
    report = validate_network(net)
    if not report.valid:
        raise NetworkInvalid(report)
    return report
