"""Syntax tree of bracket queries.

A query is either a probability bracket

    P(bra | [V1] | [V2, V3] | ket)

or an expectation E[F | ket]. The bra is a list of terms, each a
variable that is either bound to a state (L=l1) or free (L); an empty
bra stands for the whole sample space (Omega). The ket is a list of
events; empty means Omega. Between bra and ket, unit operators I_V may
be inserted, written [V]. In the operator form P(A | Y | y) the ket is
preceded by an observable Y whose value multiplies the bracket.

"""

from dataclasses import dataclass

PROBABILITY = "probability"
EXPECTATION = "expectation"
OPERATOR = "operator"

OMEGA = "Omega"


@dataclass(frozen=True)
class Term:
    name: str
    state: str = None

    @property
    def bound(self):
        return self.state is not None

    def __str__(self):
        if self.bound:
            return f"{self.name}={self.state}"
        return self.name


@dataclass(frozen=True)
class BracketExpression:
    """A parsed query.

    Target names are distinct, and free targets never appear in the
    evidence. Bound targets may: P(I=i0 | I=i1) is a valid (zero) bracket.

    Attributes:
        kind: PROBABILITY, EXPECTATION or OPERATOR.
        targets: Tuple of `Term`s (empty: the bra is Omega).
        evidence: Tuple of `EventSet`s (empty: the ket is Omega).
        operator: Name of the observable / function (OPERATOR, EXPECTATION).
        insertions: Tuple of tuples of variable names, one per unit operator.

    """

    kind: str
    targets: tuple = ()
    evidence: tuple = ()
    operator: str = None
    insertions: tuple = ()

    @property
    def target_names(self):
        return tuple(t.name for t in self.targets)

    @property
    def free_names(self):
        return tuple(t.name for t in self.targets if not t.bound)

    @property
    def bound(self):
        return {t.name: t.state for t in self.targets if t.bound}

    @property
    def evidence_names(self):
        return tuple(e.variable for e in self.evidence)

    @property
    def inserted_names(self):
        """All inserted variables, in order of first appearance."""
        names = []
        for block in self.insertions:
            for n in block:
                if n not in names:
                    names.append(n)
        return tuple(names)

    @property
    def is_omega_ket(self):
        return len(self.evidence) == 0

    def __str__(self):
        from .parser import to_text

        return to_text(self)
