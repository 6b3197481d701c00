"""Extended real line R U {+inf, -inf}.

Values are plain IEEE floats underneath; the wrapper enforces the
semantics the transforms rely on: a total order, saturating addition
that refuses +inf + (-inf), and positive scaling that keeps infinities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

import numpy as np

from glft.utils.exceptions import ExtendedArithmeticError

Number = Union[int, float, np.floating]


@total_ordering
@dataclass(frozen=True)
class ExtendedReal:
    """A value of the extended real line."""

    value: float

    def __post_init__(self) -> None:
        raw = float(self.value)
        if math.isnan(raw):
            raise ExtendedArithmeticError("NaN is not an extended real")
        object.__setattr__(self, 'value', raw)

    @classmethod
    def coerce(cls, other: Union['ExtendedReal', Number]) -> 'ExtendedReal':
        return other if isinstance(other, ExtendedReal) else cls(float(other))

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @property
    def is_pos_inf(self) -> bool:
        return self.value == math.inf

    @property
    def is_neg_inf(self) -> bool:
        return self.value == -math.inf

    def __float__(self) -> float:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (ExtendedReal, int, float, np.floating)):
            return self.value == float(ExtendedReal.coerce(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other: Union['ExtendedReal', Number]) -> bool:
        return self.value < ExtendedReal.coerce(other).value

    def __add__(self, other: Union['ExtendedReal', Number]) -> 'ExtendedReal':
        return ExtendedReal(ext_add(self.value, ExtendedReal.coerce(other).value))

    __radd__ = __add__

    def __neg__(self) -> 'ExtendedReal':
        return ExtendedReal(-self.value)

    def __sub__(self, other: Union['ExtendedReal', Number]) -> 'ExtendedReal':
        return self + (-ExtendedReal.coerce(other))

    def scale(self, factor: float) -> 'ExtendedReal':
        """Multiply by a strictly positive factor (infinities keep their sign)."""
        return ExtendedReal(ext_scale(self.value, factor))

    def __str__(self) -> str:
        return format_extended(self.value)


PosInf = ExtendedReal(math.inf)
NegInf = ExtendedReal(-math.inf)


def ext_add(a: float, b: float) -> float:
    """Saturating addition on floats; +inf + (-inf) is an error."""
    if (a == math.inf and b == -math.inf) or (a == -math.inf and b == math.inf):
        raise ExtendedArithmeticError("+inf + (-inf) is undefined")
    return a + b


def ext_scale(value: float, factor: float) -> float:
    if not factor > 0:
        raise ExtendedArithmeticError(f"scaling factor must be > 0, got {factor}")
    return value * factor


def ext_add_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise saturating addition of float arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    clash = (np.isposinf(a) & np.isneginf(b)) | (np.isneginf(a) & np.isposinf(b))
    if np.any(clash):
        raise ExtendedArithmeticError("+inf + (-inf) is undefined")
    return a + b


def format_extended(value: float) -> str:
    """Serialize with the literals `inf` / `-inf` for the infinities."""
    if value == math.inf:
        return "inf"
    if value == -math.inf:
        return "-inf"
    return repr(float(value))


def parse_extended(text: str) -> ExtendedReal:
    """Inverse of format_extended; accepts any float literal."""
    try:
        return ExtendedReal(float(text.strip()))
    except ValueError as e:
        raise ExtendedArithmeticError(f"not an extended real: {text!r}") from e
