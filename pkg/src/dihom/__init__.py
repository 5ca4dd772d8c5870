"""Directed homology of finite simplicially enriched categories."""

__version__ = "0.1.0"
