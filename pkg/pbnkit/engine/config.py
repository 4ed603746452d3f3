"""Configs: plain-dict descriptions of pbnkit objects.

A config has exactly one key, the *kind*, mapping to the *inner
config*, the arguments needed to build the object:

```
{"bayesian_network": {"name": "student", "nodes": [...], ...}}
{"variable_elimination": {"order": None}}
```

The registry of kinds lives in the global `__init__.py` and is passed
in explicitly, so the functions here work with any registry.

"""

from collections.abc import Mapping

from .inout import read_yaml
from .hashing import compute_hash, short_hash


def is_config(config):
    """True for a dict with a single string key mapping to a dict."""
    if not isinstance(config, Mapping) or len(config) != 1:
        return False
    kind, inner = next(iter(config.items()))
    return isinstance(kind, str) and isinstance(inner, Mapping)


def parse_config(config, shortcut_ok=False):
    """Split a config into (kind, inner).

    With shortcut_ok, a bare string is read as a kind with empty inner
    config, so "enumeration" means {"enumeration": {}}.
    """
    if shortcut_ok and isinstance(config, str):
        return config, {}

    if not is_config(config):
        raise ValueError(f"Not a config of the form {{kind: {{...}}}}: {config!r}")

    kind, inner = next(iter(config.items()))
    return kind, dict(inner)


def _from_yaml(path, classes={}, **kwargs):
    config = read_yaml(path)
    return _from_config(config, classes=classes, **kwargs)


def _from_config(config, classes={}, **kwargs):
    if isinstance(config, Configurable):
        # did we accidentally pass an already instantiated object?
        return config
    else:
        kind, inner = parse_config(config, shortcut_ok=True)
        if kind in classes:
            return classes[kind].from_config(inner, **kwargs)
        else:
            raise ValueError(f"Cannot find class with name {kind} in registry.")


def to_config(configurable):
    """Turn into config, if possible."""
    if isinstance(configurable, Configurable):
        return configurable.get_config()
    elif is_config(configurable):
        return configurable
    else:
        raise ValueError(f"Can't turn {configurable} into config.")


class Configurable:
    """Mixin for objects that can be written down as a config.

    Subclasses set `kind` and implement `_get_config`, returning the
    inner config; by default `from_config` calls `__init__(**inner)`.
    Keyword arguments that are not part of the description (such as a
    component's `context`) are passed through `from_config`.

    """

    @classmethod
    def from_config(cls, config, **kwargs):
        """Instantiate from an inner config."""
        return cls._from_config(config, **kwargs)

    @classmethod
    def _from_config(cls, config, **kwargs):
        return cls(**config, **kwargs)

    def get_config(self):
        return {self.get_kind(): self._get_config()}

    def get_kind(self):
        # explicit `kind`, else the lowercase class name
        return getattr(self.__class__, "kind", self.__class__.__name__.lower())

    def _get_config(self):
        raise NotImplementedError(f"{self.__class__.__name__} must implement _get_config.")

    def get_config_hash(self):
        return compute_hash(self.get_config())

    def get_hid(self):
        """Human readable id, kind@short hash of the config."""
        return f"{self.get_kind()}@{short_hash(self.get_config())}"
