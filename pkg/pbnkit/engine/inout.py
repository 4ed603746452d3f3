"""I/o: yaml documents and plain text files.

Lists of scalars (states, CPT values, edges) are written inline, lists
of mappings (nodes) one entry per line, so network documents stay
readable.

"""

import numpy as np
import yaml
from pathlib import Path


# representers have to be registered at module level


def sequence_representer(dumper, data):
    inline = not any(isinstance(x, dict) for x in data)
    return dumper.represent_sequence(u"tag:yaml.org,2002:seq", data, flow_style=inline)


# numpy scalars are written as plain numbers
def float_representer(dumper, data):
    return dumper.represent_float(float(data))


def int_representer(dumper, data):
    return dumper.represent_int(int(data))


# register
yaml.add_representer(tuple, sequence_representer)
yaml.add_representer(list, sequence_representer)
yaml.add_representer(np.float64, float_representer)
yaml.add_representer(np.int64, int_representer)


def normalize_extension(path, extension):
    """If the path doesn't have the extension, add it."""
    p = Path(path)
    if p.suffix in (".yml", ".yaml", ".json") and extension == ".yml":
        return p
    return p.with_suffix(extension)


def makedir(p):
    """Create directory at path and its parents.

    Args:
        p: Path-like object
    """
    path = Path(p)
    path.mkdir(exist_ok=True, parents=True)


def dump_yaml(d):
    """Render a dict as yaml text.

    Dicts are NOT expressed in flowstyle, i.e. newlines for dictionary
    keys, but tuples and lists are done in flowstyle, i.e. inline,
    unless they contain dicts.
    Keys keep their insertion order.
    """
    return yaml.dump(d, default_flow_style=False, sort_keys=False)


def load_yaml(text):
    """Parse yaml (or json) text."""
    return yaml.safe_load(text)


def save_yaml(filename, d):
    """Save a dict as yaml.

    Args:
        filename: Path to file. (Extension not required.)
        d: Dict to save.

    """

    with open(normalize_extension(filename, ".yml"), "w") as outfile:
        outfile.write(dump_yaml(d))


def read_yaml(filename):
    """Read yaml dictionary from filename."""

    with open(normalize_extension(filename, ".yml"), "r") as stream:
        d = yaml.safe_load(stream)

    return d


def save_text(filename, text):
    with open(filename, "w") as outfile:
        outfile.write(text)


def read_text(filename):
    with open(filename, "r") as stream:
        return stream.read()


def read_bytes(filename):
    with open(filename, "rb") as stream:
        return stream.read()
