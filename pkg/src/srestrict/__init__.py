"""Exact computation of S-restricted Stirling, Bell, Fubini, lonesum and
poly-Bernoulli numbers, each through several independent routes."""

from srestrict.blockset import BlockSizeSet, parse_set
from srestrict.series import EGF, EGF2

__all__ = ["BlockSizeSet", "parse_set", "EGF", "EGF2"]
__version__ = "0.1.0"
