"""
Custom JMESPath functions for filtering census reports.

This module provides:
- nvl(): Provide a default value when an expression is null (like Oracle NVL)
- frac(): Turn an exact rational rendered as "p/q" into a number

Rationals appear in census rows as strings ("-1/2", "3"), so numeric
comparisons on charges need frac():

    [?length(graph.vertices[?frac(charge) < `0`]) > `0`]

CRITICAL: JMESPath Literal Syntax
---------------------------------
Number, array and object literals need backticks, strings single quotes:

    CORRECT: nvl(caveat, '')          nvl(witness, `{}`)
    WRONG:   nvl(witness, {})         ← {} without backticks is invalid syntax
"""

from fractions import Fraction
from typing import Any

import jmespath
from jmespath import functions


class CustomFunctions(functions.Functions):
    """Custom JMESPath functions for the Graph Manifold MCP server."""

    @functions.signature({'types': ['string', 'number', 'null']})
    def _func_frac(self, value: str | int | float | None) -> float | None:
        """
        Convert an exact rational to a float.

        Examples:
            frac('-1/2') → -0.5
            frac('3') → 3.0
            frac(2) → 2.0
            frac('x') → null
        """
        if value is None or isinstance(value, bool):
            return None
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError, TypeError):
            return None

    @functions.signature(
        {'types': ['string', 'number', 'boolean', 'array', 'object', 'null']},
        {'types': ['string', 'number', 'boolean', 'array', 'object']}
    )
    def _func_nvl(self, value: Any, default: Any) -> Any:
        """
        Return default value if value is null.

        Examples:
            nvl(null, 'N/A') → 'N/A'
            nvl(frac(charge), `0`) → 0 if charge is not a rational
        """
        if value is None:
            return default
        return value


_custom_options = jmespath.Options(custom_functions=CustomFunctions())


def search_with_custom_functions(expression: str, data: Any) -> Any:
    """
    Execute a JMESPath query with frac() and nvl() enabled.

    Examples:
        >>> search_with_custom_functions("frac(k)", {"k": "1/4"})
        0.25
    """
    return jmespath.search(expression, data, options=_custom_options)
