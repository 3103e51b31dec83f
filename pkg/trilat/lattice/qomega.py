"""
Exact arithmetic in Q(omega), omega = exp(2 pi i / 3).

An element is a + b*omega with rational a, b and omega^2 = -1 - omega.
Eisenstein integers Z[omega] are the elements with integral a and b.
"""
import numbers
from fractions import Fraction
from math import gcd


class QOmega(object):
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def coerce(x):
        if isinstance(x, QOmega):
            return x
        if isinstance(x, (numbers.Rational, int)):
            return QOmega(x, 0)
        return None

    def __add__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return QOmega(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QOmega(-self.a, -self.b)

    def __sub__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return QOmega(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        # (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w
        a, b, c, d = self.a, self.b, o.a, o.b
        return QOmega(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conj(self):
        # conj(omega) = omega^2 = -1 - omega
        return QOmega(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(omega)")
        c = self.conj()
        return QOmega(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QOmega(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = QOmega.coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.a, self.b))

    def real(self) -> Fraction:
        """Real part of a + b*omega, i.e. a - b/2."""
        return self.a - self.b / 2

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def in_theta_ideal(self):
        """Membership in theta*Z[omega]: integral with a + b = 0 mod 3."""
        return self.is_integral() and (self.a + self.b) % 3 == 0

    def round(self):
        """Nearest Eisenstein integer by coordinate rounding (remainder norm <= 3/4)."""
        return QOmega(round(self.a), round(self.b))

    def key(self):
        return (self.a, self.b)

    def triple(self):
        """(a, b, den) strings with self == (a + b*omega) / den."""
        den = self.a.denominator * self.b.denominator // gcd(self.a.denominator, self.b.denominator)
        return [str(int(self.a * den)), str(int(self.b * den)), str(den)]

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "%s*w" % self.b
        return "(%s%+s*w)" % (self.a, self.b)


ZERO = QOmega(0)
ONE = QOmega(1)
OMEGA = QOmega(0, 1)
OMEGA_BAR = OMEGA.conj()
THETA = QOmega(1, 2)  # omega - omega^2 = i sqrt(3)
THETA_BAR = THETA.conj()
ZETA = QOmega(1, 1)  # exp(i pi / 3) = 1 + omega = -omega^2
UNITS = tuple(ZETA ** k for k in range(6))


def zeta_power(k) -> QOmega:
    return UNITS[k % 6]
