"""Name resolution and validity classification of bracket queries.

Every query is first resolved against a network (and an optional table
of named functions); unknown names raise `NameResolutionError`. A
resolved query is then classified:

    well-formed         evaluate normally
    invalid-insertion   a unit operator [V] was inserted into a
                        same-domain bracket P(A | [V] | B), where A and
                        B concern the same variables, the ket is not
                        Omega and V is not among them
    meaningless         an operator bracket P(A | Y | ket) whose ket
                        neither fixes the value of Y nor is Omega

Only well-formed queries are evaluated, unless forced.

"""

from dataclasses import dataclass

from pbnkit.exceptions import NameResolutionError, ScopeError
from .ast import EXPECTATION, OPERATOR

WELL_FORMED = "well-formed"
INVALID_INSERTION = "invalid-insertion"
MEANINGLESS = "meaningless"


@dataclass(frozen=True)
class ValidityReport:
    classification: str
    reason: str = ""

    @property
    def well_formed(self):
        return self.classification == WELL_FORMED

    def __str__(self):
        if self.reason:
            return f"{self.classification}: {self.reason}"
        return self.classification


def _variable(net, name, role):
    try:
        return net.variable(name)
    except ScopeError:
        raise NameResolutionError(f"Unknown {role} {name!r} in network {net.name}.") from None


def operator_variables(expr, net, functions=None):
    """Names of the variables the operator (or expectation) function depends on."""
    functions = functions or {}
    if expr.operator in functions:
        return tuple(functions[expr.operator].variables)
    if expr.operator in net.names:
        return (expr.operator,)
    raise NameResolutionError(
        f"{expr.operator!r} is neither a variable of {net.name} nor a known function."
    )


def resolve(expr, net, functions=None):
    """Check every name in expr against net; raise NameResolutionError if one is unknown."""
    for term in expr.targets:
        variable = _variable(net, term.name, "target variable")
        if term.bound:
            variable.index(term.state)

    for event in expr.evidence:
        event.check(_variable(net, event.variable, "evidence variable"))

    for block in expr.insertions:
        for name in block:
            _variable(net, name, "inserted variable")

    if expr.operator is not None:
        names = operator_variables(expr, net, functions)
        for name in names:
            _variable(net, name, "function variable")
        if functions and expr.operator in functions:
            functions[expr.operator].check(net.variables)


def validate(expr, net, functions=None):
    """Resolve and classify expr.

    Returns:
        ValidityReport.

    Raises:
        NameResolutionError: If a name does not resolve.

    """
    resolve(expr, net, functions)

    if expr.kind == EXPECTATION:
        return ValidityReport(WELL_FORMED)

    if expr.kind == OPERATOR and not expr.is_omega_ket:
        fixed = {e.variable for e in expr.evidence if e.is_point}
        missing = [n for n in operator_variables(expr, net, functions) if n not in fixed]
        if missing:
            return ValidityReport(
                MEANINGLESS,
                f"the ket does not fix {', '.join(missing)}, so the value of "
                f"{expr.operator} is undetermined",
            )

    if expr.insertions and not expr.is_omega_ket:
        bra = set(expr.target_names)
        ket = set(expr.evidence_names)
        if bra == ket:
            foreign = [n for n in expr.inserted_names if n not in bra]
            if foreign:
                return ValidityReport(
                    INVALID_INSERTION,
                    f"inserted {', '.join(foreign)} into a bracket over the single "
                    f"domain {{{', '.join(sorted(bra))}}}",
                )

    return ValidityReport(WELL_FORMED)
