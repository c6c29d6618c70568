"""Homotopy 2-category computations on chain complexes and finite model categories.

Complexes, maps and tabular fixtures are plain dicts in the JSON layout used
by the command line tool.
"""

import json

from . import _hocat
from ._hocat import InvalidInput, NoLift, PreconditionFailed

__all__ = [
    "InvalidInput",
    "NoLift",
    "PreconditionFailed",
    "classify",
    "factorize",
    "homology",
    "null_homotopy",
    "pi0_count",
    "split_we",
    "tabular_pi0_count",
    "tabular_replace",
    "validate_tabular",
]


def _dump(value):
    return json.dumps(value)


def validate_tabular(table):
    return json.loads(_hocat.validate_tabular(_dump(table)))


def homology(complex_):
    return json.loads(_hocat.homology(_dump(complex_)))


def classify(chain_map):
    return json.loads(_hocat.classify(_dump(chain_map)))


def factorize(chain_map, system="cof-trivfib"):
    return json.loads(_hocat.factorize(_dump(chain_map), system))


def split_we(chain_map):
    return json.loads(_hocat.split_we(_dump(chain_map)))


def null_homotopy(f, g):
    return json.loads(_hocat.null_homotopy(_dump(f), _dump(g)))


def pi0_count(source, target):
    return _hocat.pi0_count(_dump(source), _dump(target))


def tabular_pi0_count(table, source, target):
    return _hocat.tabular_pi0_count(_dump(table), source, target)


def tabular_replace(table, obj):
    return json.loads(_hocat.tabular_replace(_dump(table), obj))
