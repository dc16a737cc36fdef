"""Exact scalars: rationals, Gaussian rationals and rational quaternions.

Rationals are plain :class:`fractions.Fraction`.  :class:`Gauss` and
:class:`Quat` keep integer numerators over one shared positive denominator,
which keeps products cheap (a single gcd per result instead of one per
component).

A quaternion ``a + bi + cj + dk`` is also viewed as ``u + v j`` with complex
``u = a + bi`` and ``v = c + di``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import (
    DivisionByZero,
    ExactFrameUnavailable,
    NotInvolutive,
    ParseError,
)

Rat = Fraction

_RATIONAL_TYPES = (int, Fraction)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Gauss) and not x._y:
        return x.re
    if isinstance(x, Quat) and not (x._n[1] or x._n[2] or x._n[3]):
        return x.a
    raise TypeError(f"cannot convert {x!r} to a rational")


class Gauss:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("_x", "_y", "_d")

    def __init__(self, re=0, im=0):
        fr, fi = Fraction(re), Fraction(im)
        d = lcm(fr.denominator, fi.denominator)
        self._x = fr.numerator * (d // fr.denominator)
        self._y = fi.numerator * (d // fi.denominator)
        self._d = d

    @classmethod
    def _make(cls, x, y, d):
        g = gcd(x, y, d)
        self = object.__new__(cls)
        if g != 1:
            x //= g
            y //= g
            d //= g
        self._x, self._y, self._d = x, y, d
        return self

    @classmethod
    def coerce(cls, v):
        if isinstance(v, Gauss):
            return v
        if isinstance(v, _RATIONAL_TYPES):
            f = Fraction(v)
            return cls._make(f.numerator, 0, f.denominator)
        if isinstance(v, Quat):
            if v._n[2] or v._n[3]:
                raise TypeError(f"{v} is not a complex number")
            return cls._make(v._n[0], v._n[1], v._d)
        raise TypeError(f"cannot convert {v!r} to a Gaussian rational")

    @property
    def re(self):
        return Fraction(self._x, self._d)

    @property
    def im(self):
        return Fraction(self._y, self._d)

    def is_real(self):
        return self._y == 0

    def conj(self):
        return Gauss._make(self._x, -self._y, self._d)

    def norm2(self):
        return Fraction(self._x * self._x + self._y * self._y, self._d * self._d)

    def inverse(self):
        n = self._x * self._x + self._y * self._y
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return Gauss._make(self._x * self._d, -self._y * self._d, n)

    def __bool__(self):
        return bool(self._x or self._y)

    def __neg__(self):
        return Gauss._make(-self._x, -self._y, self._d)

    def __add__(self, other):
        if not isinstance(other, Gauss):
            if isinstance(other, _RATIONAL_TYPES):
                other = Gauss.coerce(other)
            else:
                return NotImplemented
        if self._d == other._d:
            return Gauss._make(self._x + other._x, self._y + other._y, self._d)
        d1, d2 = self._d, other._d
        return Gauss._make(self._x * d2 + other._x * d1,
                           self._y * d2 + other._y * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Gauss):
            if isinstance(other, _RATIONAL_TYPES):
                other = Gauss.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Gauss):
            if isinstance(other, _RATIONAL_TYPES):
                other = Gauss.coerce(other)
            else:
                return NotImplemented
        x1, y1, x2, y2 = self._x, self._y, other._x, other._y
        return Gauss._make(x1 * x2 - y1 * y2, x1 * y2 + y1 * x2,
                           self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            other = Gauss.coerce(other)
        if not isinstance(other, Gauss):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Gauss.coerce(other) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        out = Gauss(1)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, Gauss):
            return (self._x == other._x and self._y == other._y
                    and self._d == other._d)
        if isinstance(other, _RATIONAL_TYPES):
            return self._y == 0 and Fraction(self._x, self._d) == other
        if isinstance(other, Quat):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._y == 0:
            return hash(Fraction(self._x, self._d))
        return hash((self._x, self._y, self._d))

    def __repr__(self):
        return f"Gauss({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


class Quat:
    """Rational quaternion ``a + b i + c j + d k``."""

    __slots__ = ("_n", "_d")

    def __init__(self, a=0, b=0, c=0, d=0):
        fs = [Fraction(v) for v in (a, b, c, d)]
        den = lcm(*(f.denominator for f in fs))
        self._n = tuple(f.numerator * (den // f.denominator) for f in fs)
        self._d = den

    @classmethod
    def _make(cls, a, b, c, d, den):
        g = gcd(a, b, c, d, den)
        self = object.__new__(cls)
        if g != 1:
            a //= g
            b //= g
            c //= g
            d //= g
            den //= g
        self._n = (a, b, c, d)
        self._d = den
        return self

    @classmethod
    def coerce(cls, v):
        if isinstance(v, Quat):
            return v
        if isinstance(v, Gauss):
            return cls._make(v._x, v._y, 0, 0, v._d)
        if isinstance(v, _RATIONAL_TYPES):
            f = Fraction(v)
            return cls._make(f.numerator, 0, 0, 0, f.denominator)
        raise TypeError(f"cannot convert {v!r} to a quaternion")

    @classmethod
    def from_split(cls, u, v):
        """Build ``u + v j`` from complex ``u`` and ``v``."""
        u, v = Gauss.coerce(u), Gauss.coerce(v)
        d = u._d * v._d // gcd(u._d, v._d)
        fu, fv = d // u._d, d // v._d
        return cls._make(u._x * fu, u._y * fu, v._x * fv, v._y * fv, d)

    @property
    def a(self):
        return Fraction(self._n[0], self._d)

    @property
    def b(self):
        return Fraction(self._n[1], self._d)

    @property
    def c(self):
        return Fraction(self._n[2], self._d)

    @property
    def d(self):
        return Fraction(self._n[3], self._d)

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    def split(self):
        """Return ``(u, v)`` with ``self == u + v j``."""
        a, b, c, d = self._n
        return Gauss._make(a, b, self._d), Gauss._make(c, d, self._d)

    def real_part(self):
        return self.a

    def pure_part(self):
        _, b, c, d = self._n
        return Quat._make(0, b, c, d, self._d)

    def is_real(self):
        return not (self._n[1] or self._n[2] or self._n[3])

    def is_complex(self):
        return not (self._n[2] or self._n[3])

    def is_pure(self):
        return self._n[0] == 0

    def conj(self):
        a, b, c, d = self._n
        return Quat._make(a, -b, -c, -d, self._d)

    def norm2(self):
        return Fraction(sum(x * x for x in self._n), self._d * self._d)

    def inverse(self):
        n = sum(x * x for x in self._n)
        if n == 0:
            raise DivisionByZero("inverse of the zero quaternion")
        a, b, c, d = self._n
        den = self._d
        return Quat._make(a * den, -b * den, -c * den, -d * den, n)

    def hat(self):
        """The i-automorphism ``h -> -i h i``: negates the j and k parts."""
        a, b, c, d = self._n
        return Quat._make(a, b, -c, -d, self._d)

    def __bool__(self):
        return any(self._n)

    def __neg__(self):
        a, b, c, d = self._n
        return Quat._make(-a, -b, -c, -d, self._d)

    def __add__(self, other):
        if not isinstance(other, Quat):
            try:
                other = Quat.coerce(other)
            except TypeError:
                return NotImplemented
        n1, n2 = self._n, other._n
        d1, d2 = self._d, other._d
        if d1 == d2:
            return Quat._make(n1[0] + n2[0], n1[1] + n2[1], n1[2] + n2[2],
                              n1[3] + n2[3], d1)
        return Quat._make(n1[0] * d2 + n2[0] * d1, n1[1] * d2 + n2[1] * d1,
                          n1[2] * d2 + n2[2] * d1, n1[3] * d2 + n2[3] * d1,
                          d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Quat):
            try:
                other = Quat.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Quat):
            try:
                other = Quat.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, c1, d1 = self._n
        a2, b2, c2, d2 = other._n
        return Quat._make(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            self._d * other._d,
        )

    def __rmul__(self, other):
        try:
            other = Quat.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        # Only division by a central (rational) scalar is unambiguous.
        try:
            f = _as_fraction(other)
        except TypeError:
            raise TypeError("quaternion division is one-sided; use inverse()") from None
        if f == 0:
            raise DivisionByZero("division by zero")
        return self * Quat.coerce(1 / f)

    def __eq__(self, other):
        if isinstance(other, Quat):
            return self._n == other._n and self._d == other._d
        try:
            other = Quat.coerce(other)
        except TypeError:
            return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self.is_complex():
            return hash(Gauss._make(self._n[0], self._n[1], self._d))
        return hash((self._n, self._d))

    def __repr__(self):
        return f"Quat({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Quat()
ONE = Quat(1)
I = Quat(0, 1)
J = Quat(0, 0, 1)
K = Quat(0, 0, 0, 1)


def quat_product(x, y):
    return Quat.coerce(x) * Quat.coerce(y)


def quat_inverse(x):
    return Quat.coerce(x).inverse()


def inverse(x):
    """Two-sided inverse of any scalar in the tower."""
    if isinstance(x, (Gauss, Quat)):
        return x.inverse()
    if not x:
        raise DivisionByZero("inverse of zero")
    return 1 / Fraction(x)


# -- involutive automorphisms ----------------------------------------------

class Sigma(enum.Enum):
    """The two normal forms of an involutive automorphism: ``1`` and ``i``."""

    ONE = "1"
    I = "i"

    @property
    def square(self):
        return 1 if self is Sigma.ONE else -1

    def __str__(self):
        return self.value


def apply_hat(x, sigma):
    """``x -> sigma^-1 x sigma`` for ``sigma`` in {1, i}."""
    x = Quat.coerce(x)
    if sigma is Sigma.ONE:
        return x
    return x.hat()


@dataclass(frozen=True)
class Automorphism:
    """Identity (``tau is None``) or conjugation ``q -> tau^-1 q tau``.

    ``tau`` is a nonzero pure quaternion; positive rescaling of ``tau`` does
    not change the map.
    """

    tau: Quat | None = None

    def __post_init__(self):
        if self.tau is not None:
            tau = Quat.coerce(self.tau)
            if not tau:
                raise NotInvolutive("tau must be nonzero")
            if not tau.is_pure():
                raise NotInvolutive(
                    f"conjugation by {tau} is not involutive: tau must be pure")
            object.__setattr__(self, "tau", tau)

    @classmethod
    def identity(cls):
        return cls(None)

    @classmethod
    def by_unit(cls, tau):
        return cls(Quat.coerce(tau))

    @classmethod
    def from_quat(cls, q):
        """Interpret any nonzero quaternion as a conjugating element.

        Nonzero reals give the identity; pure quaternions give an involution;
        anything else is rejected.
        """
        q = Quat.coerce(q)
        if not q:
            raise NotInvolutive("the zero quaternion does not define an automorphism")
        if q.is_real():
            return cls(None)
        if not q.is_pure():
            raise NotInvolutive(
                f"conjugation by {q} is not involutive (its square is not real)")
        return cls(q)

    @property
    def is_identity(self):
        return self.tau is None

    def __call__(self, x):
        return apply_automorphism(x, self)


def apply_automorphism(x, spec):
    x = Quat.coerce(x)
    if spec.tau is None:
        return x
    return spec.tau.inverse() * x * spec.tau


def _dot(u, v):
    return -(u * v).a


def _cross(u, v):
    return (u * v).pure_part()


def _rational_sqrt(f):
    f = Fraction(f)
    if f < 0:
        return None
    p, q = f.numerator, f.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


@dataclass(frozen=True)
class Frame:
    """An orthonormal, right-handed choice of imaginary units."""

    i1: Quat
    j1: Quat
    k1: Quat

    @classmethod
    def standard(cls):
        return cls(I, J, K)

    @property
    def is_standard(self):
        return (self.i1, self.j1, self.k1) == (I, J, K)

    def violations(self):
        """List the frame invariants that fail (empty when the frame is valid)."""
        bad = []
        units = {"i1": self.i1, "j1": self.j1, "k1": self.k1}
        for name, u in units.items():
            if not u.is_pure():
                bad.append(f"{name} not pure")
            if u * u != -ONE:
                bad.append(f"{name}^2 != -1")
        if self.i1 * self.j1 != self.k1:
            bad.append("i1*j1 != k1")
        for (n1, u), (n2, v) in (
                (("i1", self.i1), ("j1", self.j1)),
                (("i1", self.i1), ("k1", self.k1)),
                (("j1", self.j1), ("k1", self.k1))):
            if _dot(u, v) != 0:
                bad.append(f"({n1},{n2}) != 0")
        return bad

    def to_frame(self, h):
        """Coordinates of ``h`` in this frame, returned as a quaternion."""
        h = Quat.coerce(h)
        p = h.pure_part()
        return Quat(h.a, _dot(p, self.i1), _dot(p, self.j1), _dot(p, self.k1))

    def from_frame(self, h):
        """Inverse of :meth:`to_frame`."""
        h = Quat.coerce(h)
        return h.a + self.i1 * h.b + self.j1 * h.c + self.k1 * h.d

    def __str__(self):
        return f"i1={self.i1} j1={self.j1} k1={self.k1}"


_BASIS = (I, J, K)


def _householder_completion(u):
    # Reflection taking i onto the unit vector u; it is rational, so the
    # images of j and k complete u to a rational orthonormal frame.
    w = I - u
    ww = _dot(w, w)
    if ww == 0:
        return J
    # H x = x - 2 w (w.x)/(w.w)
    return J - w * (2 * _dot(w, J) / ww)


def reduce_automorphism(spec):
    """Return ``(sigma, frame)`` so that ``spec`` becomes the sigma map in ``frame``.

    In frame coordinates the automorphism acts as ``apply_hat(., sigma)``.
    """
    if spec.tau is None:
        return Sigma.ONE, Frame.standard()
    tau = spec.tau
    length = _rational_sqrt(tau.norm2())
    if length is None:
        raise ExactFrameUnavailable(
            f"|{tau}|^2 = {tau.norm2()} is not a rational square")
    i1 = tau / length
    if i1 == I:
        return Sigma.I, Frame.standard()
    j1 = None
    for e in _BASIS:
        w = _cross(e, i1)
        if w:
            wl = _rational_sqrt(w.norm2())
            if wl is not None:
                j1 = w / wl
            break
    if j1 is None:
        j1 = _householder_completion(i1)
    frame = Frame(i1, j1, i1 * j1)
    assert not frame.violations(), frame.violations()
    return Sigma.I, frame


# -- text form -------------------------------------------------------------

def _fmt_rat(f):
    f = Fraction(f)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x):
    """Render a scalar in the quaternion literal grammar."""
    if isinstance(x, Quat):
        coeffs = x.coefficients
    elif isinstance(x, Gauss):
        coeffs = (x.re, x.im, 0, 0)
    else:
        coeffs = (Fraction(x), 0, 0, 0)
    parts = []
    for coef, unit in zip(coeffs, ("", "i", "j", "k")):
        if coef == 0:
            continue
        if unit and abs(coef) == 1:
            body = unit
        else:
            body = _fmt_rat(abs(coef)) + unit
        sign = "-" if coef < 0 else "+"
        if not parts and sign == "+":
            parts.append(body)
        else:
            parts.append(sign + body)
    return "".join(parts) if parts else "0"


_TERM = re.compile(r"([+-])?(\d+)?(?:/(\d+))?([ijk])?")


def parse_quat(text, line=None, col0=1):
    """Parse a quaternion literal such as ``3/2+1i-2/5j+0k`` or ``-k``.

    ``line``/``col0`` only affect error positions.
    """
    if not text:
        raise ParseError("empty quaternion literal", line, col0)
    coeffs = [Fraction(0)] * 4
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, num, den, unit = m.groups()
        col = col0 + pos
        if den is not None and num is None:
            raise ParseError("denominator without numerator", line, col + len(sign or ""))
        if num is None and unit is None:
            bad = m.end()
            what = repr(text[bad]) if bad < len(text) else "end of literal"
            raise ParseError(f"unexpected {what}", line, col0 + bad)
        if sign is None and not first:
            raise ParseError("missing '+' or '-' between terms", line, col)
        if den is not None and int(den) == 0:
            raise ParseError("zero denominator", line, col + len(sign or "") + len(num) + 1)
        if num is None:
            value = Fraction(1)
        else:
            value = Fraction(int(num), int(den) if den is not None else 1)
        if sign == "-":
            value = -value
        coeffs["_ijk".index(unit) if unit else 0] += value
        pos = m.end()
        first = False
    return Quat(*coeffs)
