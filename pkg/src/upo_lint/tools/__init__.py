"""
Tool-server tools.
"""

from .analysis import register_analysis_tools_lazy

__all__ = [
    "register_analysis_tools_lazy",
]
