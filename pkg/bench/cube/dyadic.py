"""
Exact dyadic rationals num / 2^log_den.

Every measure, influence and gap on the discrete cube is dyadic, so the core
never touches floats. Values are kept reduced (num odd, or num == 0 with
log_den == 0), which makes equality structural and hashing consistent with
int and Fraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .exceptions import CubeError

_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*2\^(\d+))?\s*$")
_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$")


@total_ordering
@dataclass(frozen=True, eq=False)
class Dyadic:
    num: int
    log_den: int = 0

    def __post_init__(self):
        if self.log_den < 0:
            raise CubeError(f"negative log-denominator {self.log_den}")
        num, log_den = self.num, self.log_den
        if num == 0:
            log_den = 0
        else:
            # strip common factors of two
            shift = min((num & -num).bit_length() - 1, log_den)
            num >>= shift
            log_den -= shift
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log_den", log_den)

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, value) -> "Dyadic":
        """Coerce an int, Fraction, Dyadic or "num/2^k" string."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            raise CubeError("booleans are not dyadic values")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise CubeError(f"{value} is not a dyadic rational")
            return cls(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            return cls.parse(value)
        raise CubeError(f"cannot interpret {value!r} as a dyadic rational")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        match = _DYADIC_RE.match(text)
        if match:
            return cls(int(match.group(1)), int(match.group(2) or 0))
        match = _FRACTION_RE.match(text)
        if match:
            return cls.of(Fraction(int(match.group(1)), int(match.group(2))))
        raise CubeError(f"malformed dyadic literal {text!r}")

    @classmethod
    def ratio(cls, count: int, log_den: int) -> "Dyadic":
        return cls(count, log_den)

    # -- views ---------------------------------------------------------------

    @property
    def denominator(self) -> int:
        return 1 << self.log_den

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.denominator)

    def scaled(self, log_den: int) -> int:
        """Numerator over 2^log_den; the value must be representable there."""
        if log_den < self.log_den:
            raise CubeError(f"{self} is not a multiple of 1/2^{log_den}")
        return self.num << (log_den - self.log_den)

    def __str__(self):
        if self.log_den == 0:
            return str(self.num)
        return f"{self.num}/2^{self.log_den}"

    def __repr__(self):
        return f"Dyadic({self})"

    def __float__(self):
        return self.num / self.denominator

    def __bool__(self):
        return self.num != 0

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Dyadic(other, 0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        k = max(self.log_den, other.log_den)
        return Dyadic(self.scaled(k) + other.scaled(k), k)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.log_den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Dyadic(self.num * other.num, self.log_den + other.log_den)

    __rmul__ = __mul__

    def __abs__(self):
        return Dyadic(abs(self.num), self.log_den)

    def halve(self, times: int = 1) -> "Dyadic":
        return Dyadic(self.num, self.log_den + times)

    def double(self, times: int = 1) -> "Dyadic":
        shift = min(times, self.log_den)
        return Dyadic(self.num << (times - shift), self.log_den - shift)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.log_den == other.log_den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            k = max(self.log_den, other.log_den)
            return self.scaled(k) < other.scaled(k)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def format_exact(value) -> str:
    """Serialize an exact value: "num/2^k" when dyadic, "p/q" otherwise."""
    if isinstance(value, Dyadic):
        return str(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, Fraction):
        den = value.denominator
        if den & (den - 1) == 0:
            return str(Dyadic.of(value))
        return f"{value.numerator}/{den}"
    raise CubeError(f"{value!r} is not an exact value")


def parse_exact(text) -> Fraction:
    """Parse an int, "p/q" or "num/2^k" into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, Dyadic):
        return text.to_fraction()
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, str):
        match = _FRACTION_RE.match(text)
        if match and "^" not in text:
            if int(match.group(2)) == 0:
                raise CubeError(f"zero denominator in {text!r}")
            return Fraction(int(match.group(1)), int(match.group(2)))
        return Dyadic.parse(text).to_fraction()
    raise CubeError(f"cannot interpret {text!r} as an exact constant")
