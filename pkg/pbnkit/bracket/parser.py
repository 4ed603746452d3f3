"""Parser and printer for bracket queries.

Grammar (whitespace is insignificant):

    query     := prob | expect
    prob      := "P" "(" bra ( ("|" insertion)* "|" ket )? ")"
    expect    := "E" "[" NAME ( "|" evidence )? "]"
    bra       := "Omega" | term ("," term)*
    term      := NAME ( "=" NAME )?
    insertion := "[" NAME ("," NAME)* "]"
    ket       := "Omega" | evidence | NAME "|" ( "Omega" | evidence )
    evidence  := event ("," event)*
    event     := NAME "=" NAME | NAME "in" "{" NAME ("," NAME)* "}"

The third form of ket is the operator bracket P(A | Y | y). Names
are only checked syntactically here; resolving them against a network
is the job of `validate`. Errors carry the byte offset at which
parsing failed.

"""

import re

from pbnkit.exceptions import QuerySyntaxError, DuplicateVariable
from pbnkit.distribution import EventSet
from .ast import BracketExpression, Term, PROBABILITY, EXPECTATION, OPERATOR, OMEGA

_token = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([()\[\]{}|,=]))")


def _tokenize(text):
    """List of (kind, value, byte offset); kind is "name", a symbol or "end"."""
    tokens = []
    position = 0
    while True:
        match = _token.match(text, position)
        if match is None:
            rest = text[position:]
            if rest.strip() == "":
                break
            offset = position + len(rest) - len(rest.lstrip())
            raise QuerySyntaxError(
                f"Unexpected character {text[offset]!r}", _byte_offset(text, offset)
            )

        name, symbol = match.groups()
        start = _byte_offset(text, match.start(1) if name else match.start(2))
        if name:
            tokens.append(("name", name, start))
        else:
            tokens.append((symbol, symbol, start))
        position = match.end()

    tokens.append(("end", None, _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def current(self):
        return self.tokens[self.i]

    def peek(self, ahead=1):
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def error(self, message, token=None):
        token = token or self.current
        found = "end of input" if token[0] == "end" else repr(token[1])
        raise QuerySyntaxError(f"{message}, found {found}", token[2])

    def expect(self, kind, what=None):
        token = self.current
        if token[0] != kind:
            self.error(f"Expected {what or repr(kind)}")
        self.i += 1
        return token

    def name(self, what="a name"):
        return self.expect("name", what)[1]

    def accept(self, kind):
        if self.current[0] == kind:
            self.i += 1
            return True
        return False

    def is_name(self, value, token=None):
        token = token or self.current
        return token[0] == "name" and token[1] == value

    # productions

    def query(self):
        head = self.current
        if self.is_name("P") and self.peek()[0] == "(":
            self.i += 2
            expr = self.probability()
            self.expect(")", "')'")
        elif self.is_name("E") and self.peek()[0] == "[":
            self.i += 2
            expr = self.expectation()
            self.expect("]", "']'")
        else:
            self.error("Expected 'P(' or 'E['", head)

        self.expect("end", "end of query")
        return expr

    def probability(self):
        start = self.current
        targets = self.bra()

        insertions = []
        evidence = ()
        operator = None
        while self.accept("|"):
            if self.current[0] == "[":
                insertions.append(self.insertion())
                continue

            operator, evidence = self.ket()
            break
        else:
            if insertions:
                self.error("Expected '|' and a ket after the insertions")

        _check_targets(targets, evidence, start[2])

        kind = OPERATOR if operator is not None else PROBABILITY
        return BracketExpression(
            kind=kind,
            targets=tuple(targets),
            evidence=tuple(evidence),
            operator=operator,
            insertions=tuple(insertions),
        )

    def expectation(self):
        function = self.name("a function name")

        evidence = ()
        if self.accept("|"):
            if self.current[0] == "name" and self.peek()[0] == "|":
                self.error("Operator kets are not allowed inside E[...]", self.peek())
            if self.is_name(OMEGA):
                self.i += 1
            else:
                evidence = self.evidence()

        return BracketExpression(kind=EXPECTATION, evidence=tuple(evidence), operator=function)

    def bra(self):
        if self.is_name(OMEGA):
            self.i += 1
            return []

        terms = [self.term()]
        while self.accept(","):
            terms.append(self.term())
        return terms

    def term(self):
        token = self.current
        name = self.name("a variable name")
        if name == OMEGA:
            self.error("Omega cannot be combined with other targets", token)
        if self.accept("="):
            return Term(name, self.name("a state name"))
        return Term(name)

    def insertion(self):
        start = self.expect("[", "'['")
        names = [self.name("a variable name")]
        while self.accept(","):
            names.append(self.name("a variable name"))
        self.expect("]", "']'")

        if len(set(names)) != len(names):
            raise DuplicateVariable(f"Variable repeated in insertion [{', '.join(names)}]", start[2])
        return tuple(names)

    def ket(self):
        """Returns (operator or None, events)."""
        if self.is_name(OMEGA):
            self.i += 1
            return None, ()

        if self.current[0] == "name" and self.peek()[0] == "|":
            operator = self.name()
            self.expect("|", "'|'")
            if self.is_name(OMEGA):
                self.i += 1
                return operator, ()
            return operator, tuple(self.evidence())

        return None, self.evidence()

    def evidence(self):
        start = self.current
        events = [self.event()]
        while self.accept(","):
            events.append(self.event())

        names = [e.variable for e in events]
        if len(set(names)) != len(names):
            raise DuplicateVariable(f"Variable repeated in evidence {names}", start[2])
        return events

    def event(self):
        name = self.name("a variable name")

        if self.accept("="):
            return EventSet.point(name, self.name("a state name"))

        if self.is_name("in") and self.peek()[0] == "{":
            self.i += 1
            start = self.expect("{", "'{'")
            states = [self.name("a state name")]
            while self.accept(","):
                states.append(self.name("a state name"))
            self.expect("}", "'}'")
            if len(set(states)) != len(states):
                raise DuplicateVariable(f"State repeated in event on {name}", start[2])
            return EventSet(name, tuple(states))

        self.error(f"Expected '=' or 'in {{...}}' after {name}")


def _check_targets(targets, evidence, offset):
    names = [t.name for t in targets]
    if len(set(names)) != len(names):
        raise DuplicateVariable(f"Variable repeated in targets {names}", offset)

    # bound targets may meet the ket (P(x | x') is a Kronecker delta), free ones may not
    free = {t.name for t in targets if not t.bound}
    overlap = free.intersection(e.variable for e in evidence)
    if overlap:
        raise DuplicateVariable(
            f"Free targets {sorted(overlap)} also appear as evidence", offset
        )


def parse_query(text):
    """Parse query text into a `BracketExpression`.

    Raises:
        QuerySyntaxError: With the byte offset of the problem.
        DuplicateVariable: If a variable is bound twice.

    """
    if not isinstance(text, str):
        raise QuerySyntaxError(f"Query must be text, got {type(text).__name__}", 0)
    return _Parser(text).query()


def _event_text(event):
    if event.is_point:
        return f"{event.variable}={event.states[0]}"
    return f"{event.variable} in {{{', '.join(event.states)}}}"


def to_text(expr):
    """Canonical text of expr; parse_query(to_text(e)) == e."""
    evidence = ", ".join(_event_text(e) for e in expr.evidence)

    if expr.kind == EXPECTATION:
        ket = f" | {evidence}" if evidence else ""
        return f"E[{expr.operator}{ket}]"

    bra = ", ".join(str(t) for t in expr.targets) or OMEGA
    insertions = "".join(f" | [{', '.join(block)}]" for block in expr.insertions)

    if expr.kind == OPERATOR:
        ket = f" | {expr.operator} | {evidence or OMEGA}"
    elif evidence:
        ket = f" | {evidence}"
    elif insertions:
        ket = f" | {OMEGA}"
    else:
        ket = ""

    return f"P({bra}{insertions}{ket})"
