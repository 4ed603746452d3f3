"""The backend on which pbnkit is built: configs, components, hashing and i/o."""

from .hashing import compute_hash, short_hash
from .inout import *
from .config import is_config, parse_config, _from_config, _from_yaml, to_config, Configurable
from .component import Component
