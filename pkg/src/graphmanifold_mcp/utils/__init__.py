"""
Utility modules for the Graph Manifold MCP Server.
"""
