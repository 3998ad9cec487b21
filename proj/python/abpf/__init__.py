"""Adaptively blocked particle filtering for dynamic random fields on graphs."""

from ._abpf import *  # noqa: F401,F403
from ._abpf import __doc__  # noqa: F401
