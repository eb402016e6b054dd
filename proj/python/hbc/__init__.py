"""Closed 3-groups with harmonically balanced capitulation and the cyclic
cubic fields they govern.

Every function returns the report as a dict with the keys ``command``,
``provenance`` and ``result``. Functions that also render Graphviz return
``(report, dot)``.
"""

import json

from . import _hbc
from ._hbc import BudgetExceeded, InputError

__version__ = _hbc.__version__


def classify(c):
    return json.loads(_hbc.classify(c))


def scan(max_c, threads=0):
    return json.loads(_hbc.scan(max_c, threads))


def lattice(q1, q2, q3, normalization=None):
    text, dot = _hbc.lattice(q1, q2, q3, normalization)
    return json.loads(text), dot


def predict(c, normalization=None, tower=False):
    return json.loads(_hbc.predict(c, normalization, tower))


def census(scenario=None, seed=20240917):
    return json.loads(_hbc.census(scenario, seed))


def polynomial(c):
    return json.loads(_hbc.polynomial(c))


def validate_fixtures(dir=None):
    return json.loads(_hbc.validate_fixtures(dir))


def pattern(pc3, second_order=True):
    """Artin pattern of a group given as .pc3 text."""
    return json.loads(_hbc.pattern(pc3, second_order))


def hbc_search(max_log_order=8, threads=0, seed=20240917):
    text, dot = _hbc.hbc_search(max_log_order, threads, seed)
    return json.loads(text), dot


def tree(root="3", max_log_order=6, all_descendants=False, prune=False, fingerprints=False, threads=0):
    """Descendant tree; root is 2 or 3 (elementary abelian) or .pc3 text."""
    text, dot = _hbc.tree(str(root), max_log_order, all_descendants, prune, fingerprints, threads)
    return json.loads(text), dot


__all__ = [
    "BudgetExceeded",
    "InputError",
    "census",
    "classify",
    "hbc_search",
    "lattice",
    "pattern",
    "polynomial",
    "predict",
    "scan",
    "tree",
    "validate_fixtures",
]
