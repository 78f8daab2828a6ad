"""
Graph Manifold API modules.

Each module contains tool functions for one group of operations.
"""

from graphmanifold_mcp.api import census, certificates, classify

__all__ = ["classify", "certificates", "census"]
