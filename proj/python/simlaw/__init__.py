"""Similarity-law residual checks, fits and classification."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import Error, _run, __version__


def run(command, config, out_dir=".", tol=None, seed=None, grid=None, base_dir="."):
    """Run a CLI command from a config dict; returns (status, report dict)."""
    status, report = _run(command, _json.dumps(config), out_dir, tol, seed, grid, base_dir)
    return status, _json.loads(report)
