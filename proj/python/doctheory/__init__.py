"""Document theories: chase engine, static analysis and reductions."""

import json

from ._doctheory import (
    Theory,
    encode_tm,
    exp_theory,
    expected_counts,
    normalize_value,
    run,
)
from . import _doctheory

__all__ = ["Theory", "analyze", "encode_tm", "exp_theory", "expected_counts", "normalize_value", "run"]


def analyze(theory, queue="", model=""):
    """Verdict record as a dict; bounds appear when a queue is given."""
    return json.loads(_doctheory._analyze(theory, queue, model))
