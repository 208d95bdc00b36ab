"""Bipartite zero-divisor/unit graphs of finite commutative rings."""

__version__ = "0.1.0"
