"""Python front end for the Hilbert C*-module verification workbench.

The heavy lifting lives in the compiled extension ``_core``. Installed wheels
place it inside this package; development builds leave it next to the build
tree, so fall back to a top-level import when the relative one is missing.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc, __version__
except ImportError:
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc, __version__

__doc__ = _core_doc

__all__ = [
    "sqrt_psd",
    "inv_sqrt_pd",
    "eig_hermitian",
    "loewner_slack",
    "random_unitary",
    "run",
    "run_report_json",
    "witness",
    "module_axioms",
    "__version__",
]
