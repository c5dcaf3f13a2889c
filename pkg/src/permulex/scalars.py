"""Exact and certified real numbers.

Three kinds of scalar flow through the library:

* :class:`fractions.Fraction` for rationals,
* :class:`Quadratic` for elements ``a + b*sqrt(d)`` of a real quadratic field,
* :class:`Ball` for an outward-rounded interval ``[lo, hi]`` of binary floats.

Exact kinds compare decidably. A :class:`Ball` comparison raises
:class:`~permulex.errors.UnresolvableComparison` when the enclosures overlap;
callers refine the precision and retry.
"""

from __future__ import annotations

import ast
import math
import re
import sys
from fractions import Fraction
from numbers import Rational
from typing import Union

from mpmath import libmp

from .errors import ParseError, UnresolvableComparison, ValidationError

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096

_EPS = sys.float_info.epsilon


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    s, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    d *= m
    return s, d


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class Quadratic:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d > 1``."""

    __slots__ = ("a", "b", "d", "_approx")

    def __init__(self, a, b=0, d: int = 5):
        if d < 2 or squarefree_split(d)[0] != 1:
            raise ValidationError(f"radicand must be squarefree and > 1, got {d}")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d
        self._approx = None

    @classmethod
    def sqrt(cls, n):
        """Exact square root of a nonnegative rational; a Fraction when it is rational."""
        n = _frac(n)
        if n < 0:
            raise ValidationError("square root of a negative number")
        if n == 0:
            return Fraction(0)
        s, d = squarefree_split(n.numerator * n.denominator)
        if d == 1:
            return Fraction(s, n.denominator)
        return cls(0, Fraction(s, n.denominator), d)

    # -- coercion -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Quadratic):
            if other.d != self.d:
                if other.b == 0:
                    return other.a, Fraction(0)
                if self.b == 0:
                    return None
                raise ValidationError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def _with(self, other):
        """Pair up operands, adopting ``other``'s radicand when ``self`` is rational."""
        c = self._coerce(other)
        if c is None:
            return (self.a, self.b), (other.a, other.b), other.d
        return (self.a, self.b), c, self.d

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Ball):
            return NotImplemented
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        (a, b), (c, e), d = self._with(other)
        return Quadratic(a + c, b + e, d)

    __radd__ = __add__

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Ball):
            return NotImplemented
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        (a, b), (c, e), d = self._with(other)
        return Quadratic(a - c, b - e, d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Ball):
            return NotImplemented
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        (a, b), (c, e), d = self._with(other)
        return Quadratic(a * c + b * e * d, a * e + b * c, d)

    __rmul__ = __mul__

    def conjugate(self) -> "Quadratic":
        return Quadratic(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "Quadratic":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return Quadratic(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Ball):
            return NotImplemented
        if isinstance(other, Quadratic):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Quadratic(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Quadratic(1, 0, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- ordering -------------------------------------------------------

    def approx(self) -> tuple[float, float]:
        """``(value, err)`` with the true value within ``err`` of the float ``value``."""
        if self._approx is None:
            fa, fb = float(self.a), float(self.b)
            r = math.sqrt(self.d)
            err = 8 * _EPS * (abs(fa) + abs(fb) * r) + 1e-300
            self._approx = (fa + fb * r, err)
        return self._approx

    def __float__(self) -> float:
        return self.approx()[0]

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(d)``."""
        v, err = self.approx()
        if abs(v) > err:
            return 1 if v > 0 else -1
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def _cmp(self, other) -> int:
        if isinstance(other, Ball):
            return -other._cmp(self)
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return (self - other).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        if isinstance(other, Quadratic):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __floor__(self):
        return self.floor()

    def __repr__(self):
        return f"Quadratic({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def _mpf_from_fraction(x: Fraction, prec: int, rnd: str):
    return libmp.from_rational(x.numerator, x.denominator, prec, rnd)


def _min_max(values):
    lo = values[0]
    hi = values[0]
    for v in values[1:]:
        if libmp.mpf_lt(v, lo):
            lo = v
        if libmp.mpf_gt(v, hi):
            hi = v
    return lo, hi


class Ball:
    """Closed interval ``[lo, hi]`` of binary floats at ``prec`` bits.

    Every operation rounds outward, so the true value stays enclosed.
    Precision is carried per value; mixed operations use the larger one.
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PRECISION):
        self.lo = lo
        self.hi = lo if hi is None else hi
        self.prec = prec

    @classmethod
    def from_value(cls, x, prec: int = DEFAULT_PRECISION) -> "Ball":
        if isinstance(x, Ball):
            return x if x.prec >= prec else cls(x.lo, x.hi, prec)
        if isinstance(x, Quadratic):
            r = Ball.sqrt_of(x.d, prec + 16)
            return cls.from_value(x.a, prec + 16) + cls.from_value(x.b, prec + 16) * r
        if isinstance(x, (int, Rational)):
            f = Fraction(x)
            return cls(_mpf_from_fraction(f, prec, "f"), _mpf_from_fraction(f, prec, "c"), prec)
        if isinstance(x, float):
            v = libmp.from_float(x)
            return cls(v, v, prec)
        raise TypeError(f"cannot convert {type(x).__name__} to Ball")

    @classmethod
    def from_bounds(cls, lo: Fraction, hi: Fraction, prec: int = DEFAULT_PRECISION) -> "Ball":
        return cls(_mpf_from_fraction(Fraction(lo), prec, "f"),
                   _mpf_from_fraction(Fraction(hi), prec, "c"), prec)

    @classmethod
    def sqrt_of(cls, n: int, prec: int = DEFAULT_PRECISION) -> "Ball":
        v = libmp.from_int(n)
        return cls(libmp.mpf_sqrt(v, prec, "f"), libmp.mpf_sqrt(v, prec, "c"), prec)

    def _other(self, other):
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Rational, Quadratic)):
            return Ball.from_value(other, self.prec)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        p = max(self.prec, o.prec)
        return Ball(libmp.mpf_add(self.lo, o.lo, p, "f"), libmp.mpf_add(self.hi, o.hi, p, "c"), p)

    __radd__ = __add__

    def __neg__(self):
        return Ball(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), self.prec)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        p = max(self.prec, o.prec)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo, _ = _min_max([libmp.mpf_mul(x, y, p, "f") for x, y in pairs])
        _, hi = _min_max([libmp.mpf_mul(x, y, p, "c") for x, y in pairs])
        return Ball(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not (libmp.mpf_gt(o.lo, libmp.fzero) or libmp.mpf_lt(o.hi, libmp.fzero)):
            raise UnresolvableComparison("divisor ball contains zero")
        p = max(self.prec, o.prec)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo, _ = _min_max([libmp.mpf_div(x, y, p, "f") for x, y in pairs])
        _, hi = _min_max([libmp.mpf_div(x, y, p, "c") for x, y in pairs])
        return Ball(lo, hi, p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Ball.from_value(1, self.prec)
        for _ in range(k):
            result = result * self
        return result

    # -- ordering -------------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._other(other)
        if o is None:
            return NotImplemented
        if libmp.mpf_lt(self.hi, o.lo):
            return -1
        if libmp.mpf_gt(self.lo, o.hi):
            return 1
        if (self.lo == self.hi == o.lo == o.hi):
            return 0
        raise UnresolvableComparison(
            f"balls overlap at {max(self.prec, o.prec)} bits: {self} vs {o}")

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __eq__(self, other):
        if isinstance(other, Ball):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    __hash__ = None

    def contains(self, x) -> bool:
        o = Ball.from_value(x, self.prec)
        return libmp.mpf_le(self.lo, o.lo) and libmp.mpf_ge(self.hi, o.hi)

    def overlaps(self, other) -> bool:
        o = Ball.from_value(other, self.prec)
        return not (libmp.mpf_lt(self.hi, o.lo) or libmp.mpf_gt(self.lo, o.hi))

    @property
    def mid(self):
        return libmp.mpf_shift(libmp.mpf_add(self.lo, self.hi, self.prec + 8, "n"), -1)

    @property
    def radius(self) -> float:
        return libmp.to_float(libmp.mpf_sub(self.hi, self.lo, 53, "c")) / 2

    def __float__(self):
        return libmp.to_float(self.mid)

    def floor(self) -> int:
        lo = int(libmp.to_int(libmp.mpf_floor(self.lo)))
        hi = int(libmp.to_int(libmp.mpf_floor(self.hi)))
        if lo != hi:
            raise UnresolvableComparison(f"cannot decide floor of {self}")
        return lo

    def __floor__(self):
        return self.floor()

    def __repr__(self):
        return f"Ball({format_scalar(self)!r}, prec={self.prec})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Quadratic, Ball]


def as_scalar(x) -> Scalar:
    if isinstance(x, (Quadratic, Ball, Fraction)):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


def _approx_of(x):
    if isinstance(x, Quadratic):
        return x.approx()
    if isinstance(x, int):
        return float(x), 0.0 if abs(x) < 2 ** 53 else abs(x) * _EPS
    f = float(x)
    return f, abs(f) * _EPS + 1e-300


def compare(x, y) -> int:
    """Three-way comparison; raises UnresolvableComparison on overlapping balls."""
    if isinstance(x, Ball):
        return x._cmp(y)
    if isinstance(y, Ball):
        return -y._cmp(x)
    if isinstance(x, Quadratic) or isinstance(y, Quadratic):
        fx, ex = _approx_of(x)
        fy, ey = _approx_of(y)
        if abs(fx - fy) > 2 * (ex + ey):
            return 1 if fx > fy else -1
        if isinstance(x, Quadratic):
            return x._cmp(y)
        return -y._cmp(x)
    return (x > y) - (x < y)


def is_exact(x) -> bool:
    return not isinstance(x, Ball)


def frac_part(x):
    """Fractional part ``x - floor(x)``, exact for exact inputs."""
    return x - math.floor(x)


# -- text form --------------------------------------------------------------

def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_quadratic(x: Quadratic) -> str:
    if x.b == 0:
        return _fmt_fraction(x.a)
    den = math.lcm(x.a.denominator, x.b.denominator)
    A = int(x.a * den)
    B = int(x.b * den)
    root = f"sqrt({x.d})" if abs(B) == 1 else f"{abs(B)}*sqrt({x.d})"
    if A == 0:
        num = ("-" if B < 0 else "") + root
        single = True
    elif A < 0 < B:
        num = f"{root}-{-A}"
        single = False
    else:
        num = f"{A}{'-' if B < 0 else '+'}{root}"
        single = False
    if den == 1:
        return num
    return f"{num}/{den}" if single else f"({num})/{den}"


def _fmt_ball(x: Ball) -> str:
    digits = max(17, int(x.prec * 0.30103) + 3)
    mid_s = libmp.to_str(x.mid, digits)
    m = libmp.from_str(mid_s, x.prec + 64, "n")
    rad = libmp.mpf_sub(x.hi, m, 64, "c")
    rad2 = libmp.mpf_sub(m, x.lo, 64, "c")
    if libmp.mpf_gt(rad2, rad):
        rad = rad2
    bump = libmp.mpf_mul(rad, libmp.from_rational(1025, 1024, 64, "c"), 64, "c")
    if bump == libmp.fzero:
        bump = libmp.mpf_shift(libmp.fone, -x.prec)
    return f"{mid_s} +/- {libmp.to_str(bump, 5)}"


def format_scalar(x) -> str:
    """Locale-independent, round-trippable text for a scalar."""
    if isinstance(x, Ball):
        return _fmt_ball(x)
    if isinstance(x, Quadratic):
        return _fmt_quadratic(x)
    if isinstance(x, (int, Rational)):
        return _fmt_fraction(Fraction(x))
    raise TypeError(f"not a scalar: {x!r}")


def decimal_string(x, digits: int = 17) -> str:
    """Decimal approximation with ``digits`` significant digits."""
    b = Ball.from_value(x, 4 * digits + 128)
    return libmp.to_str(b.mid, digits)


_BALL_RE = re.compile(r"^\s*([^\s]+)\s*\+/-\s*([^\s]+)\s*$")


def _eval_node(node, text):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, text)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool):
            raise ParseError(f"unexpected literal in {text!r}")
        if isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node.value, float):
            return Fraction(ast.get_source_segment(text, node))
        raise ParseError(f"unexpected literal in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow) and isinstance(right, Fraction) and right.denominator == 1:
            return left ** int(right)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
        arg = _eval_node(node.args[0], text)
        if not isinstance(arg, Fraction):
            raise ParseError(f"sqrt argument must be rational in {text!r}")
        return Quadratic.sqrt(arg)
    raise ParseError(f"unsupported expression {text!r}")


def parse_scalar(text: str, prec: int | None = None) -> Scalar:
    """Parse ``"p/q"``, ``"(a+b*sqrt(d))/c"`` or ``"mid +/- rad"``."""
    m = _BALL_RE.match(text)
    if m:
        mid_s, rad_s = m.groups()
        digits = len(re.sub(r"[^0-9]", "", mid_s.split("e")[0].split("E")[0]))
        p = prec or max(DEFAULT_PRECISION, int(digits / 0.30103) + 8)
        try:
            lo_m = libmp.from_str(mid_s, p, "f")
            hi_m = libmp.from_str(mid_s, p, "c")
            r = libmp.from_str(rad_s, p, "c")
        except ValueError as exc:
            raise ParseError(f"bad ball literal {text!r}") from exc
        return Ball(libmp.mpf_sub(lo_m, r, p, "f"), libmp.mpf_add(hi_m, r, p, "c"), p)
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad scalar literal {text!r}") from exc
    try:
        return _eval_node(tree, text.strip())
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
