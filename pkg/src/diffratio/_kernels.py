"""Kernel backend selection.

Imports the compiled kernels when available, otherwise the pure-Python
mirror. Set ``DIFFRATIO_BACKEND=pure`` (or ``fast``) to force a choice;
forcing ``fast`` raises if the extension is missing.
"""

from __future__ import annotations

import os

_choice = os.environ.get("DIFFRATIO_BACKEND", "").strip().lower()

if _choice == "pure":
    from . import _purekern as _impl
elif _choice == "fast":
    from . import _fastkern as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _fastkern as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _purekern as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND

pairwise_diff = _impl.pairwise_diff
pointwise_div = _impl.pointwise_div
find_small = _impl.find_small
sign_list = _impl.sign_list
cumsum = _impl.cumsum
build_from_slopes = _impl.build_from_slopes
conv_head = _impl.conv_head
conv_tail = _impl.conv_tail
dot_slice = _impl.dot_slice
identity_rows = _impl.identity_rows
minmax = _impl.minmax
