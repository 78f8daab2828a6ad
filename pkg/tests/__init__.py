"""Tests for the Graph Manifold MCP Server."""
