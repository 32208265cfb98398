"""
MonoidKit source modules
"""

__version__ = "0.1.0"

__all__ = [
    "intlin",
    "cones",
    "monoid",
    "pushout",
    "oracle",
    "logpoint",
    "documents",
    "config",
    "errors",
    "sampling",
    "sweep",
]
