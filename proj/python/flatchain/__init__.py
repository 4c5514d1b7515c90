"""Python access to the flatchain library.

Chains, groups and elements are passed in the same JSON encodings the
command-line tool reads; dicts are serialized for you.
"""

import json

from . import _flatchain
from ._flatchain import (
    DescriptorMismatch,
    DimensionMismatch,
    FlatchainError,
    InputError,
    InvariantViolation,
    TransversalityError,
    Unsupported,
)

__all__ = [
    "mass", "boundary", "flat_size", "flat_bracket", "flat_distance", "norm",
    "classify_group", "run_cli",
    "FlatchainError", "InputError", "DescriptorMismatch", "DimensionMismatch",
    "InvariantViolation", "TransversalityError", "Unsupported",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def mass(chain):
    return _flatchain.mass(_text(chain))


def boundary(chain):
    return json.loads(_flatchain.boundary(_text(chain)))


def flat_size(chain):
    return _flatchain.flat_size(_text(chain))


def flat_bracket(chain):
    """Certified lower and upper bounds on the flat norm, with the witness."""
    return json.loads(_flatchain.flat_bracket(_text(chain)))


def flat_distance(a, b):
    return json.loads(_flatchain.flat_distance(_text(a), _text(b)))


def norm(group, element):
    return _flatchain.norm(_text(group), _text(element))


def classify_group(group):
    rectifiable, rationale = _flatchain.classify_group(_text(group))
    return {"rectifiable": rectifiable, "rationale": rationale}


def run_cli(*args):
    """Runs a tool subcommand in-process; returns (exit code, stdout, stderr)."""
    return _flatchain.run_cli([str(a) for a in args])
