"""Backend selection for the numeric hot paths.

The compiled extension (textaug._speedups, built from Cython) is used when
it imported cleanly; otherwise the numpy implementation takes over. Set
TEXTAUG_PURE_PYTHON=1 to force the numpy backend regardless.

Both backends expose the same two entry points:

- logreg_fit(data, indices, indptr, n_cols, Y, lr, l2, epochs) -> (W, b, losses)
- bertscore_scores(ref, gen, eps) -> (precision, recall, f1)

logreg_loss_grad is served by the numpy module unconditionally; it exists
for gradient checking, not speed.
"""

from __future__ import annotations

import os

from . import _speedups_py
from ._speedups_py import logreg_loss_grad

if os.environ.get("TEXTAUG_PURE_PYTHON"):
    _impl = _speedups_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _speedups_py

BACKEND = _impl.BACKEND_NAME
logreg_fit = _impl.logreg_fit
bertscore_scores = _impl.bertscore_scores


def available_backends() -> list[str]:
    """Names of the backends importable in this environment."""
    names = []
    try:
        from . import _speedups  # noqa: F401
        names.append("compiled")
    except ImportError:
        pass
    names.append("python")
    return names


__all__ = [
    "BACKEND",
    "available_backends",
    "bertscore_scores",
    "logreg_fit",
    "logreg_loss_grad",
]
