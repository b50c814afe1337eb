"""Kernel support-vector machines: soft-margin classification,
epsilon-insensitive regression and one-against-one multiclass."""

from svmkit._core import *  # noqa: F401,F403

__version__ = "0.1.0"
