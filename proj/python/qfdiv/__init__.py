"""Quantum f-relative entropies, randomized property checks and capacity estimates."""

import json

from ._qfdiv import *  # noqa: F401,F403
from ._qfdiv import Error, __version__, run as _run


def run(config=None):
    """Run a config (dict or JSON string). Returns (report dict, exit code)."""
    if config is None:
        config = {}
    text = config if isinstance(config, str) else json.dumps(config)
    report, code = _run(text)
    return json.loads(report), code
