"""
Graph Manifold MCP Server

Decides, from the labelled JSJ graph of a closed graph manifold, which of
seven surface, fibering and curvature properties the manifold has, and
cross-checks the deciders against explicit certificates.
"""

__version__ = "0.1.0"
