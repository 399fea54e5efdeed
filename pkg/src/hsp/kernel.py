"""Selects the compiled kernel when it is built, else the pure-Python one.

Set HSP_PURE_PYTHON=1 to force the fallback.
"""

import os

if os.environ.get("HSP_PURE_PYTHON"):
    from hsp import _kernel as _impl
else:
    try:
        from hsp import _ckernel as _impl
    except ImportError:
        from hsp import _kernel as _impl

apply_bindings = _impl.apply_bindings
unify = _impl.unify
match = _impl.match
lpo_gt = _impl.lpo_gt
COMPILED = _impl.__name__.endswith("_ckernel")
