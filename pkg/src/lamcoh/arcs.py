"""Exact arc-set algebra on the circle R/Z with quadratic-field endpoints.

Arc sets are finite disjoint unions of half-open arcs [lo, hi); endpoints
live in a fixed Q(sqrt(d)).  Rotation, Boolean algebra, and lengths are
all exact, which is what makes the irrational-rotation statements
decidable at desk scale: an indicator identity either holds on the nose
or a witness point of the symmetric difference exists.
"""

from fractions import Fraction
from math import gcd

from .quadfield import QuadReal


def _q(x, d=5):
    if isinstance(x, QuadReal):
        return x
    return QuadReal(Fraction(x), 0, d)


class ArcSet:
    """Sorted disjoint half-open arcs [lo, hi) inside [0, 1)."""

    __slots__ = ("arcs", "d")

    def __init__(self, arcs, d=5):
        pieces = []
        for lo, hi in arcs:
            lo, hi = _q(lo, d), _q(hi, d)
            if (hi - lo).sign() <= 0:
                continue
            pieces.append((lo, hi))
        pieces.sort()
        merged = []
        for lo, hi in pieces:
            if (lo - QuadReal(0, 0, d)).sign() < 0 or (hi - 1).sign() > 0:
                raise ValueError("arcs must be normalized inside [0, 1]")
            if merged and (merged[-1][1] - lo).sign() >= 0:
                plo, phi = merged[-1]
                merged[-1] = (plo, hi if (hi - phi).sign() > 0 else phi)
            else:
                merged.append((lo, hi))
        object.__setattr__(self, "arcs", tuple(merged))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("ArcSet is immutable")

    @classmethod
    def empty(cls, d=5):
        return cls([], d)

    @classmethod
    def full(cls, d=5):
        return cls([(0, 1)], d)

    @classmethod
    def from_unreduced(cls, pairs, d=5):
        """Arcs given by arbitrary real pairs (lo, lo + len), reduced mod 1."""
        out = []
        for lo, hi in pairs:
            lo, hi = _q(lo, d), _q(hi, d)
            ln = hi - lo
            if ln.sign() <= 0:
                continue
            if (ln - 1).sign() >= 0:
                return cls.full(d)
            lo = lo.mod1()
            end = lo + ln
            if (end - 1).sign() <= 0:
                out.append((lo, end))
            else:
                out.append((lo, QuadReal(1, 0, d)))
                out.append((QuadReal(0, 0, d), end - 1))
        return cls(out, d)

    # -- basic queries ---------------------------------------------------------

    def contains(self, point):
        p = _q(point, self.d).mod1()
        for lo, hi in self.arcs:
            if (p - lo).sign() >= 0 and (p - hi).sign() < 0:
                return True
        return False

    def length(self):
        total = QuadReal(0, 0, self.d)
        for lo, hi in self.arcs:
            total = total + (hi - lo)
        return total

    def is_empty(self):
        return not self.arcs

    def __eq__(self, other):
        return (isinstance(other, ArcSet) and self.d == other.d
                and len(self.arcs) == len(other.arcs)
                and all(a == c and b == e
                        for (a, b), (c, e) in zip(self.arcs, other.arcs)))

    def __hash__(self):
        return hash(tuple((lo.a, lo.b, hi.a, hi.b) for lo, hi in self.arcs))

    def __repr__(self):
        return "ArcSet(%d arcs, length %s)" % (len(self.arcs), float(self.length()))

    # -- set algebra -------------------------------------------------------------

    def _endpoints(self, other=None):
        pts = {QuadReal(0, 0, self.d), QuadReal(1, 0, self.d)}
        for lo, hi in self.arcs:
            pts.add(lo)
            pts.add(hi)
        if other is not None:
            for lo, hi in other.arcs:
                pts.add(lo)
                pts.add(hi)
        return sorted(pts)

    def _sweep(self, other, keep):
        pts = self._endpoints(other)
        out = []
        for p, nxt in zip(pts, pts[1:]):
            if keep(self.contains(p), other.contains(p) if other else False):
                out.append((p, nxt))
        return ArcSet(out, self.d)

    def complement(self):
        return self._sweep(None, lambda a, b: not a)

    def union(self, other):
        return self._sweep(other, lambda a, b: a or b)

    def intersection(self, other):
        return self._sweep(other, lambda a, b: a and b)

    def xor(self, other):
        return self._sweep(other, lambda a, b: a != b)

    def difference(self, other):
        return self._sweep(other, lambda a, b: a and not b)

    # -- rotation ---------------------------------------------------------------

    def rotate(self, theta):
        """Pointwise translation mod 1; preserves length exactly."""
        theta = _q(theta, self.d)
        out = []
        one = QuadReal(1, 0, self.d)
        for lo, hi in self.arcs:
            ln = hi - lo
            nlo = (lo + theta).mod1()
            end = nlo + ln
            if (end - one).sign() <= 0:
                out.append((nlo, end))
            else:
                out.append((nlo, one))
                out.append((QuadReal(0, 0, self.d), end - 1))
        return ArcSet(out, self.d)

    def to_list(self):
        return [[lo.to_dict(), hi.to_dict()] for lo, hi in self.arcs]

    @classmethod
    def from_list(cls, data, d=5):
        return cls([(QuadReal.from_dict(lo), QuadReal.from_dict(hi))
                    for lo, hi in data], d)


def rotate(A, theta):
    return A.rotate(theta)


def boolean(A, B, op):
    """Exact set algebra; op is one of xor, and, or, not."""
    if op == "xor":
        return A.xor(B)
    if op == "and":
        return A.intersection(B)
    if op == "or":
        return A.union(B)
    if op == "not":
        return A.complement()
    raise ValueError("unknown boolean op %r" % (op,))


def indicator_coboundary(B, alpha):
    """The set where chi_B(x + alpha) + chi_B(x) is odd: (R_-alpha B) xor B."""
    return B.rotate(-_q(alpha, B.d)).xor(B)


def zero_set(Bs, alphas):
    """Points where the mod-2 sum of the indicator coboundaries vanishes."""
    if len(Bs) != len(alphas):
        raise ValueError("need one angle per arc set")
    if not Bs:
        raise ValueError("need at least one arc set")
    d = Bs[0].d
    acc = ArcSet.empty(d)
    for B, a in zip(Bs, alphas):
        acc = acc.xor(indicator_coboundary(B, a))
    return acc.complement()


def is_rotation_invariant(A, theta):
    """(invariant?, witness point in the symmetric difference if not)."""
    rotated = A.rotate(theta)
    if rotated == A:
        return True, None
    diff = rotated.xor(A)
    return False, diff.arcs[0][0]


def one_is_coboundary(q, p=1):
    """Is the constant-1 Z2 cochain a coboundary on the q-cycle rotation?

    Solves f(t+p) - f(t) = 1 mod 2 along the single orbit; solvable
    exactly when q is even, with the alternating witness f, otherwise the
    parity obstruction (the orbit sum of any coboundary is 0, but the sum
    of 1 over the orbit is q mod 2 = 1).
    """
    q = int(q)
    p = int(p) % q
    if q <= 0:
        raise ValueError("q must be positive")
    if gcd(p, q) != 1:
        raise ValueError("gcd(p, q) must be 1; decompose per orbit otherwise")
    if q % 2 == 0:
        f = [0] * q
        t = 0
        for j in range(q):
            f[t] = j % 2
            t = (t + p) % q
        return True, tuple(f)
    return False, {"parity_obstruction": q % 2}
