"""Python bindings for the hallforge engines."""

import json

from ._hallforge import Quiver, QuiverError, RunResult, dt_invariants, ori_invariants, run

__all__ = ["Quiver", "QuiverError", "RunResult", "dt_invariants", "ori_invariants", "run", "run_json"]


def run_json(command, **options):
    """Run a subcommand with JSON output and return (status, parsed document)."""
    result = run(command, format="json", **options)
    return result.status, json.loads(result.document)
