"""Makar-Limanov invariants of affine toric varieties given by affine monoids."""

from ._mltoric import (
    AffineMonoid,
    ClosureError,
    InputError,
    MltoricError,
    UnsupportedMonoid,
    __version__,
    analyze,
    check,
    derive,
    descends,
    report_text,
    roots,
)

__all__ = [
    "AffineMonoid",
    "ClosureError",
    "InputError",
    "MltoricError",
    "UnsupportedMonoid",
    "analyze",
    "check",
    "derive",
    "descends",
    "report_text",
    "roots",
]
