"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Values are a + b*sqrt(d) with exact rational a, b and a fixed square-free
positive integer d.  Order comparisons are exact (sign analysis with
squaring), so genuinely irrational rotation angles can be handled with no
floating point anywhere.
"""

import math
from fractions import Fraction
from functools import total_ordering

from .complexes import format_fraction, parse_fraction


def _is_square_free(d):
    if d <= 0:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


@total_ordering
class QuadReal:
    """a + b*sqrt(d) with exact rational a, b; d square-free positive."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=5):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", int(d))
        if not _is_square_free(self.d):
            raise ValueError("d must be a square-free positive integer, got %d" % self.d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadReal is immutable")

    # -- helpers --------------------------------------------------------------

    def _match(self, other):
        """Coerce other into a common field; returns (self', other') or None."""
        if isinstance(other, (int, Fraction)):
            other = QuadReal(other, 0, self.d)
        if not isinstance(other, QuadReal):
            return None
        if self.b and other.b and self.d != other.d:
            raise ValueError("mixed quadratic fields: sqrt(%d) vs sqrt(%d)"
                             % (self.d, other.d))
        d = self.d if self.b else (other.d if other.b else self.d)
        return QuadReal(self.a, self.b, d), QuadReal(other.a, other.b, d)

    def sign(self):
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        lhs, rhs = a * a, b * b * d
        if a > 0:
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        pair = self._match(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadReal(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._match(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadReal(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._match(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadReal(s.a * o.a + s.b * o.b * s.d,
                        s.a * o.b + s.b * o.a, s.d)

    __rmul__ = __mul__

    def __eq__(self, other):
        pair = self._match(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).is_zero()

    def __lt__(self, other):
        pair = self._match(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return (s - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- floor and reduction mod 1 ----------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self):
        est = math.floor(float(self))
        while (self - (est + 1)).sign() >= 0:
            est += 1
        while (self - est).sign() < 0:
            est -= 1
        return est

    def mod1(self):
        return self - self.floor()

    def __repr__(self):
        if self.b == 0:
            return "QuadReal(%s)" % (self.a,)
        return "QuadReal(%s + %s*sqrt(%d))" % (self.a, self.b, self.d)

    def to_dict(self):
        return {"a": format_fraction(self.a), "b": format_fraction(self.b), "d": self.d}

    @classmethod
    def from_dict(cls, data):
        return cls(parse_fraction(data["a"]), parse_fraction(data["b"]), data["d"])


def golden_rotation(d=5):
    """(sqrt(5) - 1) / 2, the golden-mean rotation angle."""
    if d != 5:
        raise ValueError("the golden rotation lives in Q(sqrt(5))")
    return QuadReal(Fraction(-1, 2), Fraction(1, 2), 5)
