"""Network files: a subset of Elvira, and the native yaml/json document."""

from pathlib import Path

from pbnkit import logger
from pbnkit.engine import read_bytes, save_text
from pbnkit.exceptions import UsageError
from .elvira import parse_elvira, write_elvira
from .native import parse_native, write_native

extensions = {".elv": "elvira", ".yml": "native", ".yaml": "native", ".json": "native"}


def format_of(path):
    suffix = Path(path).suffix.lower()
    if suffix not in extensions:
        raise UsageError(
            f"Cannot tell the format of {path}; use one of {', '.join(sorted(extensions))}."
        )
    return extensions[suffix]


def read_network(path):
    """Read a network, choosing the format by extension."""
    text = read_bytes(path)
    if format_of(path) == "elvira":
        net = parse_elvira(text)
    else:
        net = parse_native(text)

    logger.debug(f"Read {net} from {path}.")
    return net


def write_network(net, path, format=None):
    """Write net to path, in the given format or the one matching the extension.

    Args:
        format: "elvira" or "native"; None chooses by extension.

    """
    format = format or format_of(path)

    if format == "elvira":
        text = write_elvira(net)
    elif format == "native":
        style = "json" if Path(path).suffix.lower() == ".json" else "yaml"
        text = write_native(net, style=style)
    else:
        raise UsageError(f"Unknown network format {format!r}; use elvira or native.")

    save_text(path, text)
    logger.debug(f"Wrote {net} to {path} ({format}).")
