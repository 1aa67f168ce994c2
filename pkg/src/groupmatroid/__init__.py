"""Exact polymatroid computations for subgroups of finite group products."""
__version__ = "0.1.0"
