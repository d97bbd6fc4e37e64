"""Exact invariants of piecewise monotonic interval maps.

Thin wrapper over the C++ core: map specs go in as dicts (numbers written as
exact strings like "3/2" or "0.75"), reports come back as dicts with every
exact quantity rendered as a string literal.
"""

try:
    from ._dgim import (
        ContextMismatch,
        DgimError,
        UnsupportedClass,
        analyze,
        compare,
        decompose,
        dimension,
        entropy,
        markov,
        pf,
    )
except ImportError:  # extension built next to the package, not inside it
    from _dgim import (
        ContextMismatch,
        DgimError,
        UnsupportedClass,
        analyze,
        compare,
        decompose,
        dimension,
        entropy,
        markov,
        pf,
    )

__version__ = "0.1.0"


def tent(s):
    """Map spec for the restricted tent map with slope magnitude ``s``."""
    return {"type": "tent", "s": s}


def beta(b):
    """Map spec for the beta-transformation x -> b*x mod 1."""
    return {"type": "beta", "beta": b}


GOLDEN = {"minpoly": [-1, -1, 1], "interval": ["1", "2"], "value": ["0", "1"]}
SQRT2 = {"minpoly": [-2, 0, 1], "interval": ["1", "2"], "value": ["0", "1"]}

__all__ = [
    "DgimError",
    "ContextMismatch",
    "UnsupportedClass",
    "analyze",
    "beta",
    "compare",
    "decompose",
    "dimension",
    "entropy",
    "markov",
    "pf",
    "tent",
    "GOLDEN",
    "SQRT2",
]
