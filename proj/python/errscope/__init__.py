"""Per-instance error analysis for comparing regression models."""

from ._core import *  # noqa: F401,F403
from ._core import ErrscopeError, __version__  # noqa: F401
