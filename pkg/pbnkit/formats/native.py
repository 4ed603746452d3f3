"""The native interchange format.

A native document is the config of a `BayesianNetwork`:

```
name: student
nodes:
- name: D
  states: [d0, d1]
...
edges: [[I, G], [D, G], ...]
cpts:
  D: [0.6, 0.4]
  ...
```

It is written as yaml. Floats are written with their shortest
round-trip representation, so reading a written network gives back
bit-identical tables. Since json is a subset of yaml, `.json` files can
be read as well; `write_native(net, style="json")` produces one.

"""

import json

import yaml

from pbnkit.engine import dump_yaml, load_yaml
from pbnkit.exceptions import FormatError, SchemaError
from pbnkit.network import BayesianNetwork

fields = ("name", "nodes", "edges", "cpts")


def parse_native(text):
    """Build a network from a native document.

    Both the bare document and the config form `{bayesian_network: {...}}`
    are accepted.

    Raises:
        FormatError: If the text is not yaml/json.
        SchemaError: If the document does not describe a network.

    """
    try:
        d = load_yaml(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise FormatError(f"Malformed document: {e.problem}", mark.line + 1, mark.column + 1)
        raise FormatError(f"Malformed document: {e}") from None

    if isinstance(d, dict) and list(d.keys()) == [BayesianNetwork.kind]:
        d = d[BayesianNetwork.kind]

    if not isinstance(d, dict):
        raise SchemaError("Document must be a mapping.")

    unknown = [k for k in d if k not in fields]
    if unknown:
        raise SchemaError(f"Unknown field {unknown[0]!r}.", path=[unknown[0]])
    for key in ("nodes", "cpts"):
        if key not in d:
            raise SchemaError(f"Missing field {key!r}.", path=[key])

    return BayesianNetwork(
        nodes=_list(d, "nodes"),
        edges=_list(d, "edges") if "edges" in d else [],
        cpts=d["cpts"],
        name=d.get("name", "network"),
    )


def _list(d, key):
    if not isinstance(d[key], list):
        raise SchemaError(f"Field {key!r} must be a list.", path=[key])
    return d[key]


def write_native(net, style="yaml"):
    """Native document of net as yaml (default) or json text."""
    d = net.get_config()[net.kind]
    if style == "json":
        return json.dumps(d, indent=2) + "\n"
    return dump_yaml(d)
