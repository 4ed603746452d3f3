"""Stable hashes.

Objects are identified by the hash of their config, so two networks
with the same nodes, edges and tables hash alike, whichever instance
they are. joblib hashes nested dicts, lists and numpy arrays the same
way across sessions.

"""

import joblib


def compute_hash(*args, **kwargs):
    return joblib.hash({"args": args, "kwargs": kwargs})


def short_hash(*args, length=8, **kwargs):
    """Prefix of `compute_hash`, for ids meant to be read by people."""
    return compute_hash(*args, **kwargs)[:length]
