"""Python front end for the dbar C++ core.

Reports cross the boundary as JSON text and are decoded here.
"""

import json

from ._dbar import (
    NearBoundaryError,
    NotClosedError,
    Problem,
    SpecError,
    harmonic_number,
    verify_case_names,
)
from . import _dbar

__all__ = [
    "NearBoundaryError",
    "NotClosedError",
    "Problem",
    "SpecError",
    "counterexample",
    "harmonic_number",
    "load_problem",
    "verify",
    "verify_case_names",
]


def load_problem(path, boundary_quad=256):
    with open(path, encoding="utf-8") as fh:
        return Problem(fh.read(), boundary_quad)


def verify(name, n=2, trials=10, points=10, seed=42, threads=1, negative_control=False):
    return json.loads(_dbar.verify_json(name, n, trials, points, seed, threads, negative_control))


def counterexample(n, I, K, threads=1):
    """Returns (csv_text, report_dict); I holds 1-based coordinates."""
    csv_text, report = _dbar.counterexample(n, list(I), K, threads)
    return csv_text, json.loads(report)
