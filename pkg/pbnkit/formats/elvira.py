"""Reading and writing a subset of the Elvira network format.

```
// comments run to the end of the line, /* or span lines */
bnet "student" {

node D (finite-states) {
states = ("d0" "d1");
}

link I G;        // parent, then child

relation G {
values = table (0.3 0.4 0.3 ...);
}

}
```

Relation values are listed row by row: parents vary in the order their
links were declared (the first slowest), and the states of the node
itself vary fastest. Names may be bare words or quoted strings.
Cosmetic entries (titles, comments, coordinates, ...) are skipped with
a warning. A `relation` header may repeat the parents after the node
name, as Elvira writes them; they must then match the declared links.

Any problem raises `FormatError` with the line and column and, where it
concerns a node, the node name. Rows that are off by at most
`renormalize_tolerance` are renormalised with a warning, since files
written with fixed-point values cannot sum to one exactly.

"""

import math
import re

import numpy as np

from pbnkit import logger
from pbnkit.exceptions import FormatError, SchemaError
from pbnkit.network import BayesianNetwork, find_cycle

renormalize_tolerance = 1e-6
decimals = 6

cosmetic = {
    "title",
    "comment",
    "author",
    "whochanged",
    "version",
    "visualprecision",
    "precision",
    "kind-of-node",
    "type-of-variable",
    "kind-of-relation",
    "deterministic",
    "pos_x",
    "pos_y",
    "font",
    "relevance",
    "purpose",
}

_patterns = [
    ("space", r"[ \t\r\n]+"),
    ("line_comment", r"//[^\n]*"),
    ("block_comment", r"/\*.*?\*/"),
    ("string", r'"[^"\n]*"'),
    ("number", r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"),
    ("name", r"[A-Za-z_][A-Za-z0-9_\-]*"),
    ("symbol", r"[{}()=;,]"),
]
_token = re.compile("|".join(f"(?P<{k}>{p})" for k, p in _patterns), re.DOTALL)
_bare = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    @property
    def value(self):
        if self.kind == "string":
            return self.text[1:-1]
        return self.text

    def __repr__(self):
        return "end of file" if self.kind == "end" else repr(self.text)


def _tokenize(text):
    tokens = []
    position, line, line_start = 0, 1, 0

    while position < len(text):
        match = _token.match(text, position)
        column = position - line_start + 1

        if match is None:
            if text.startswith("/*", position):
                raise FormatError("Unterminated comment", line, column)
            if text[position] == '"':
                raise FormatError("Unterminated string", line, column)
            raise FormatError(f"Unexpected character {text[position]!r}", line, column)

        kind = match.lastgroup
        chunk = match.group()
        if kind not in ("space", "line_comment", "block_comment"):
            tokens.append(_Token(kind, chunk, line, column))

        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = position + chunk.rindex("\n") + 1
        position = match.end()

    tokens.append(_Token("end", "", line, position - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

        self.name = None
        self.nodes = {}  # name -> (states, token)
        self.links = []  # (parent, child, token)
        self.relations = {}  # name -> (values, token, parents or None)

    @property
    def current(self):
        return self.tokens[self.i]

    def error(self, message, token=None, node=None):
        token = token or self.current
        raise FormatError(f"{message}, found {token!r}", token.line, token.column, node)

    def next(self):
        token = self.current
        if token.kind != "end":
            self.i += 1
        return token

    def symbol(self, s, node=None):
        if not (self.current.kind == "symbol" and self.current.text == s):
            self.error(f"Expected {s!r}", node=node)
        return self.next()

    def accept_symbol(self, s):
        if self.current.kind == "symbol" and self.current.text == s:
            self.i += 1
            return True
        return False

    def keyword(self, word, node=None):
        if not (self.current.kind == "name" and self.current.text == word):
            self.error(f"Expected {word!r}", node=node)
        return self.next()

    def identifier(self, what="a name", node=None):
        if self.current.kind not in ("name", "string"):
            self.error(f"Expected {what}", node=node)
        token = self.next()
        if token.value == "":
            self.error(f"Empty {what}", token, node)
        return token

    def at_cosmetic(self):
        token = self.current
        return token.kind == "name" and (token.text in cosmetic or token.text == "default")

    def skip_cosmetic(self, where):
        token = self.next()
        key = token.text
        while key.startswith("default") and self.current.kind == "name":
            key += " " + self.next().text

        self.symbol("=")
        while not self.accept_symbol(";"):
            if self.current.kind == "end":
                self.error(f"Unterminated entry {key!r}")
            self.next()

        logger.warning(f"Elvira: skipping {key!r} of {where} (line {token.line}).")

    # productions

    def document(self):
        self.keyword("bnet")
        self.name = self.identifier("a network name").value
        self.symbol("{")

        while not self.accept_symbol("}"):
            token = self.current
            if token.kind == "name" and token.text == "node":
                self.node()
            elif token.kind == "name" and token.text == "link":
                self.link()
            elif token.kind == "name" and token.text == "relation":
                self.relation()
            elif self.at_cosmetic():
                self.skip_cosmetic(f"network {self.name}")
            else:
                self.error("Expected 'node', 'link' or 'relation'")

        if self.current.kind != "end":
            self.error("Expected end of file after the network")

    def node(self):
        self.next()
        token = self.identifier("a node name")
        name = token.value
        if name in self.nodes:
            raise FormatError(f"Node {name} declared twice", token.line, token.column, name)

        self.symbol("(", name)
        kind = self.identifier("a node kind", name)
        if kind.value != "finite-states":
            raise FormatError(
                f"Node {name} is {kind.value}, only finite-states nodes are supported",
                kind.line,
                kind.column,
                name,
            )
        self.symbol(")", name)
        self.symbol("{", name)

        states = None
        while not self.accept_symbol("}"):
            if self.current.kind == "name" and self.current.text == "states":
                self.next()
                self.symbol("=", name)
                self.symbol("(", name)
                states = []
                while not self.accept_symbol(")"):
                    if self.accept_symbol(","):
                        continue
                    if self.current.kind not in ("name", "string", "number"):
                        self.error("Expected a state name", node=name)
                    states.append(self.next().value)
                self.symbol(";", name)
            elif self.at_cosmetic():
                self.skip_cosmetic(f"node {name}")
            else:
                self.error("Expected 'states'", node=name)

        if not states:
            raise FormatError(f"Node {name} has no states", token.line, token.column, name)
        if len(set(states)) != len(states):
            raise FormatError(f"Node {name} has duplicate states", token.line, token.column, name)

        self.nodes[name] = (states, token)

    def link(self):
        token = self.next()
        parent = self.identifier("a parent node").value
        child = self.identifier("a child node").value
        self.symbol(";")
        self.links.append((parent, child, token))

    def relation(self):
        self.next()
        token = self.identifier("a node name")
        name = token.value
        if name in self.relations:
            raise FormatError(f"Relation for {name} given twice", token.line, token.column, name)

        parents = []
        while self.current.kind in ("name", "string"):
            parents.append(self.next().value)

        self.symbol("{", name)
        values = None
        while not self.accept_symbol("}"):
            if self.current.kind == "name" and self.current.text == "values":
                self.next()
                self.symbol("=", name)
                self.keyword("table", name)
                self.symbol("(", name)
                values = []
                while not self.accept_symbol(")"):
                    if self.accept_symbol(","):
                        continue
                    if self.current.kind != "number":
                        self.error("Expected a number", node=name)
                    values.append(float(self.next().text))
                self.symbol(";", name)
            elif self.at_cosmetic():
                self.skip_cosmetic(f"relation {name}")
            else:
                self.error("Expected 'values'", node=name)

        if values is None:
            raise FormatError(f"Relation for {name} has no values", token.line, token.column, name)

        self.relations[name] = (values, token, parents or None)

    # semantics

    def network(self):
        parents = {n: [] for n in self.nodes}
        edges = []
        for parent, child, token in self.links:
            for end in (parent, child):
                if end not in self.nodes:
                    raise FormatError(f"Link to undeclared node {end}", token.line, token.column, end)
            if parent == child or (parent, child) in edges:
                raise FormatError(
                    f"Invalid link {parent} -> {child}", token.line, token.column, child
                )
            parents[child].append(parent)
            edges.append((parent, child))

        for name, (_, token, _) in self.relations.items():
            if name not in self.nodes:
                raise FormatError(f"Relation for undeclared node {name}", token.line, token.column, name)

        cpts = {}
        for name, (states, token) in self.nodes.items():
            if name not in self.relations:
                raise FormatError(f"Node {name} has no relation", token.line, token.column, name)
            cpts[name] = self.cpt(name, states, parents[name])

        try:
            net = BayesianNetwork(
                nodes=[{"name": n, "states": s} for n, (s, _) in self.nodes.items()],
                edges=edges,
                cpts=cpts,
                name=self.name,
            )
        except SchemaError as e:
            node = e.path[1] if len(e.path) > 1 and isinstance(e.path[1], str) else None
            raise FormatError(str(e), node=node) from None

        cycle = find_cycle(net)
        if cycle is not None:
            raise FormatError("Links form a cycle: " + " -> ".join(cycle), node=cycle[0])

        return net

    def cpt(self, name, states, parents):
        values, token, listed = self.relations[name]
        where = (token.line, token.column, name)

        if listed is not None and listed != parents:
            raise FormatError(
                f"Relation for {name} lists parents {listed}, links declare {parents}", *where
            )

        expected = math.prod(len(self.nodes[p][0]) for p in parents) * len(states)
        if len(values) != expected:
            raise FormatError(
                f"Relation for {name} has {len(values)} values, expected {expected}", *where
            )

        rows = np.array(values, dtype=float).reshape(-1, len(states))
        if not np.all(np.isfinite(rows)) or np.any(rows < 0):
            raise FormatError(f"Relation for {name} has invalid probabilities", *where)

        defect = np.abs(rows.sum(axis=1) - 1.0)
        worst = float(defect.max())
        if worst > renormalize_tolerance:
            row = int(defect.argmax())
            raise FormatError(
                f"Row {row} of relation for {name} sums to {rows[row].sum():.9g}", *where
            )
        if worst > 1e-12:
            logger.warning(f"Elvira: renormalising relation for {name} (defect {worst:.2e}).")
            rows = rows / rows.sum(axis=1, keepdims=True)

        return rows.ravel().tolist()


def parse_elvira(text):
    """Build a network from Elvira text.

    Args:
        text: str, or utf-8 encoded bytes.

    Raises:
        FormatError: For any syntax or semantic problem.

    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"Input is not valid utf-8 (byte {e.start})", 1, 1) from None

    parser = _Parser(text)
    parser.document()
    return parser.network()


def _string(name):
    if '"' in name or "\n" in name:
        raise FormatError(f"Name {name!r} cannot be written to an Elvira file", node=name)
    return f'"{name}"'


def _quote(name):
    """Bare word if possible, else a quoted string."""
    if _bare.match(name):
        return name
    return _string(name)


def fixed_point_rows(values, card):
    """Rows rounded to `decimals`; the residual goes to the largest entry of each row."""
    scale = 10 ** decimals
    rows = np.asarray(values, dtype=float).reshape(-1, card)

    units = np.rint(rows * scale).astype(np.int64)
    for row, target in zip(units, rows):
        row[int(np.argmax(target))] += scale - row.sum()

    return units


def write_elvira(net):
    """Elvira text of net: declaration order, fixed-point values."""
    lines = [f"// {net.name}, written by pbnkit", f"bnet {_quote(net.name)} {{", ""]

    for v in net.variables:
        states = " ".join(_string(s) for s in v.states)
        lines += [f"node {_quote(v.name)} (finite-states) {{", f"states = ({states});", "}", ""]

    for parent, child in net.edges:
        lines.append(f"link {_quote(parent)} {_quote(child)};")
    if net.edges:
        lines.append("")

    for v in net.variables:
        units = fixed_point_rows(net.cpts[v.name].flat, v.cardinality)
        values = " ".join(f"{u // 10 ** decimals}.{u % 10 ** decimals:0{decimals}d}" for u in units.ravel())
        lines += [f"relation {_quote(v.name)} {{", f"values = table ({values});", "}", ""]

    lines.append("}")
    return "\n".join(lines) + "\n"
