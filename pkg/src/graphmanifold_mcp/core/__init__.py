"""
Exact decision engine: labelled graphs, rational linear algebra, matrix
criteria, certificate oracle and census.
"""
