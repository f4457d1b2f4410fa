"""p-Laplacian eigenvalue ratio toolkit."""

import json

from ._core import *  # noqa: F401,F403
from ._core import audit_json


def audit(domain, p, grid=128, tol=1e-8, max_iter=20000):
    """Audit report for a named domain as a dict."""
    return json.loads(audit_json(domain, p, grid, tol, max_iter))
