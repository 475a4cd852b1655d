"""Algebraic program logic over interpretation monoids."""

__version__ = "0.1.0"
