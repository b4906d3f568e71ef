"""Exact values of the form ``2**(-m/2) * exp(i pi k / 4)`` (or zero).

Every amplitude, overlap and expectation value of a Majorana stabilizer state
has this shape, so results are kept symbolic and only turned into floats at
the edges.
"""
import math
from dataclasses import dataclass

_R = math.sqrt(0.5)
# exp(i pi k / 4) with exact zeros on the axes
_UNIT = (1, complex(_R, _R), 1j, complex(-_R, _R), -1, complex(-_R, -_R), -1j, complex(_R, -_R))


@dataclass(frozen=True)
class Exact:
    k: int = 0
    m: int = 0
    zero: bool = False

    def __post_init__(self):
        if self.zero:
            object.__setattr__(self, "k", 0)
            object.__setattr__(self, "m", 0)
        else:
            if self.m < 0:
                raise ValueError("magnitude exponent must be non-negative")
            object.__setattr__(self, "k", self.k % 8)

    def __complex__(self):
        if self.zero:
            return 0j
        return complex(_UNIT[self.k]) * 2.0 ** (-self.m / 2)

    def __abs__(self):
        return 0.0 if self.zero else 2.0 ** (-self.m / 2)

    def __bool__(self):
        return not self.zero

    def __mul__(self, other):
        if not isinstance(other, Exact):
            return complex(self) * other
        if self.zero or other.zero:
            return ZERO
        return Exact(self.k + other.k, self.m + other.m)

    __rmul__ = __mul__

    def conjugate(self):
        return self if self.zero else Exact(-self.k, self.m)

    def __str__(self):
        if self.zero:
            return "0"
        parts = []
        if self.m:
            parts.append(f"2^{{-{self.m // 2}}}" if self.m % 2 == 0 else f"2^{{-{self.m}/2}}")
        if self.k:
            parts.append(f"e^{{i*{self.k}*pi/4}}")
        return " * ".join(parts) or "1"


ZERO = Exact(zero=True)
ONE = Exact()


def phase(k):
    """``exp(i pi k / 4)``."""
    return Exact(k)


def format_complex(value, digits=12):
    """``a+bi`` with ``digits`` significant digits, negative zero folded to zero."""
    z = complex(value)
    re = 0.0 if abs(z.real) < 10.0 ** -(digits + 2) else z.real
    im = 0.0 if abs(z.imag) < 10.0 ** -(digits + 2) else z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{re:.{digits}g}{sign}{abs(im):.{digits}g}i"
