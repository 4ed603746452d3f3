"""pbnkit exceptions.

Every error carries an `exit_code`, which is what the command line
front end returns when it catches one. Where it makes sense, the
exceptions also derive from the matching builtin, so code that only
knows about `ValueError` and friends keeps working.

"""


class PBNError(Exception):
    """Base class for all pbnkit errors."""

    exit_code = 2


class UsageError(PBNError, ValueError):
    """Raised when an invocation makes no sense."""

    exit_code = 1


class QuerySyntaxError(PBNError, ValueError):
    """Raised when a bracket query cannot be parsed.

    Attributes:
        offset: Byte offset into the query text where parsing failed.
    """

    exit_code = 1

    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DuplicateVariable(QuerySyntaxError):
    """Raised when a variable is bound twice in one query."""


class DomainMismatch(PBNError, ValueError):
    """Raised when two variables share a name but not a domain."""


class ScopeError(PBNError, KeyError):
    """Raised when a variable is not in the scope of a factor."""

    def __str__(self):
        # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class PartitionOverlap(PBNError, ValueError):
    """Raised when variable sets that must be disjoint share a variable."""


class NameResolutionError(PBNError, KeyError):
    """Raised when a variable, state or function name is unknown."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidBracket(PBNError, ValueError):
    """Raised when evaluating an invalid or meaningless bracket.

    Attributes:
        report: The `ValidityReport` explaining the classification.
    """

    def __init__(self, report):
        super().__init__(f"Refusing to evaluate {report.classification} bracket: {report.reason}")
        self.report = report


class CycleError(PBNError, ValueError):
    """Raised when a network graph contains a directed cycle.

    Attributes:
        cycle: List of node names, first node repeated at the end.
    """

    def __init__(self, cycle):
        super().__init__("Graph contains a cycle: " + " -> ".join(cycle))
        self.cycle = cycle


class NetworkInvalid(PBNError, ValueError):
    """Raised when an operation requires a valid network.

    Attributes:
        report: The `ValidationReport` listing all violations.
    """

    def __init__(self, report):
        super().__init__(f"Network is invalid: {report.summary()}")
        self.report = report


class FormatError(PBNError, ValueError):
    """Raised when a network file cannot be read.

    Attributes:
        line, column: Position of the problem (1-based), if known.
        node: Node the problem concerns, if known.
    """

    def __init__(self, message, line=None, column=None, node=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
        self.line = line
        self.column = column
        self.node = node


class SchemaError(PBNError, ValueError):
    """Raised when a native document violates its schema.

    Attributes:
        path: List of keys leading to the offending entry.
    """

    def __init__(self, message, path=()):
        self.path = list(path)
        location = "/".join(str(p) for p in self.path)
        super().__init__(f"{message} (at /{location})")


class ZeroMass(PBNError, ArithmeticError):
    """Raised when normalising a factor without any mass."""

    exit_code = 3


class ImpossibleEvidence(ZeroMass):
    """Raised when conditioning on evidence with probability zero."""


class ResourceCapExceeded(PBNError, MemoryError):
    """Raised when a factor would grow beyond the configured cap."""

    exit_code = 4
