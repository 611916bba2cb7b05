"""Exact scalar tower: rationals, one quadratic extension, certified intervals.

Arithmetic stays at the lowest level that is closed under the requested
operations.  Square roots of positive rationals land in ``QuadExt`` when the
radicand is not a perfect square; a second independent radical (or a root of
a quadratic-extension element that does not denest) escalates to directed
interval arithmetic at a configurable bit precision.

Comparisons between intervals are only decided when the intervals are
disjoint; otherwise :class:`UndecidableComparison` is raised so the caller
can retry the whole computation at a higher precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import mpmath
from mpmath.ctx_iv import MPIntervalContext

DEFAULT_PREC = 192
MAX_PREC = 4096

Rat = Fraction
Scalar = Union[Fraction, "QuadExt", "IntervalScalar"]


class UndecidableComparison(Exception):
    """Interval comparison could not be decided at the current precision."""


class PrecisionExhausted(Exception):
    """Escalation reached the precision ceiling without deciding."""


def _isqrt_frac(q: Fraction):
    """Exact square root of a nonnegative Fraction, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s^2 * d with d squarefree-ish (trial division up to a bound)."""
    s, d = 1, 1
    p = 2
    m = n
    while p * p <= m and p < 100000:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    # leftover m > 1 is prime or a product of large primes; keep as-is unless square
    r = math.isqrt(m)
    if r * r == m:
        s *= r
    else:
        d *= m
    return s, d


class QuadExt:
    """Element p + q*sqrt(d) of a real quadratic extension of Q, d > 1 squarefree."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.d = int(d)

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def of_sqrt(q: Fraction) -> "QuadExt | Fraction":
        """sqrt of a positive rational, normalized to an integer squarefree d."""
        if q < 0:
            raise ValueError("square root of negative rational")
        exact = _isqrt_frac(q)
        if exact is not None:
            return exact
        # sqrt(n/m) = sqrt(n*m)/m
        n, m = q.numerator, q.denominator
        s, d = _squarefree_split(n * m)
        return QuadExt(0, Fraction(s, m), d)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                if other.q == 0:
                    return QuadExt(other.p, 0, self.d)
                if self.q == 0:
                    return None
                return None
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def reduce(self) -> "QuadExt | Fraction":
        return self.p if self.q == 0 else self

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.p + o.p, self.q + o.q, self.d).reduce()

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.p - o.p, self.q - o.q, self.d).reduce()

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.p * o.p + self.q * o.q * self.d,
            self.p * o.q + self.q * o.p,
            self.d,
        ).reduce()

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt | Fraction":
        nrm = self.p * self.p - self.q * self.q * self.d
        if nrm == 0:
            raise ZeroDivisionError("zero quadratic-extension element")
        return QuadExt(self.p / nrm, -self.q / nrm, self.d).reduce()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        inv = o.inverse() if isinstance(o, QuadExt) else Fraction(1) / o
        return self * inv

    def __rtruediv__(self, other):
        inv = self.inverse()
        if isinstance(inv, Fraction):
            return other * inv
        return inv * other

    def __pow__(self, k: int):
        if k < 0:
            base = self.inverse()
            k = -k
        else:
            base = self
        out: Scalar = Fraction(1)
        for _ in range(k):
            out = out * base if isinstance(out, QuadExt) else base * out
        return out

    # -- predicates ----------------------------------------------------------

    def sign(self) -> int:
        # sign of p + q*sqrt(d), exact
        if self.q == 0:
            return -1 if self.p < 0 else (1 if self.p > 0 else 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # opposite signs: compare p^2 with q^2 d
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if self.p > 0:  # q < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadExt):
            if self.d == other.d:
                return self.p == other.p and self.q == other.q
            return self.q == 0 and other.q == 0 and self.p == other.p
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __repr__(self):
        return f"({self.p}+{self.q}*sqrt({self.d}))"

    def sqrt(self):
        """Square root, denesting into the same field when possible."""
        sg = self.sign()
        if sg < 0:
            raise ValueError("square root of negative value")
        if sg == 0:
            return Fraction(0)
        # try sqrt(p + q sqrt d) = u + v sqrt d with u,v rational
        disc = self.p * self.p - self.q * self.q * self.d
        r = _isqrt_frac(disc) if disc >= 0 else None
        if r is not None:
            for u2 in ((self.p + r) / 2, (self.p - r) / 2):
                u = _isqrt_frac(u2)
                if u is None or u == 0:
                    continue
                v = self.q / (2 * u)
                cand = QuadExt(u, v, self.d)
                if cand.sign() > 0 and cand * cand == self:
                    return cand.reduce()
        return None


class IntervalScalar:
    """Directed-rounding interval wrapper (mpmath.iv) with its own precision."""

    __slots__ = ("iv", "ctx")

    _ctx_cache: dict[int, MPIntervalContext] = {}

    @classmethod
    def context(cls, prec: int) -> MPIntervalContext:
        ctx = cls._ctx_cache.get(prec)
        if ctx is None:
            ctx = MPIntervalContext()
            ctx.prec = prec
            cls._ctx_cache[prec] = ctx
        return ctx

    def __init__(self, iv, ctx):
        self.iv = iv
        self.ctx = ctx

    @classmethod
    def from_exact(cls, x: Scalar, prec: int = DEFAULT_PREC) -> "IntervalScalar":
        ctx = cls.context(prec)
        if isinstance(x, IntervalScalar):
            return x if x.ctx.prec == prec else cls(ctx.mpf(x.iv), ctx)
        if isinstance(x, QuadExt):
            v = (ctx.mpf(x.p.numerator) / x.p.denominator
                 + (ctx.mpf(x.q.numerator) / x.q.denominator) * ctx.sqrt(ctx.mpf(x.d)))
            return cls(v, ctx)
        f = Fraction(x)
        return cls(ctx.mpf(f.numerator) / f.denominator, ctx)

    def _lift(self, other):
        if isinstance(other, IntervalScalar):
            if other.ctx is self.ctx:
                return other
            prec = min(self.ctx.prec, other.ctx.prec)
            ctx = self.context(prec)
            return IntervalScalar(ctx.mpf(other.iv), ctx)
        return IntervalScalar.from_exact(other, self.ctx.prec)

    def __add__(self, other):
        o = self._lift(other)
        ctx = self.context(min(self.ctx.prec, o.ctx.prec))
        return IntervalScalar(ctx.mpf(self.iv) + ctx.mpf(o.iv), ctx)

    __radd__ = __add__

    def __neg__(self):
        return IntervalScalar(-self.iv, self.ctx)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        ctx = self.context(min(self.ctx.prec, o.ctx.prec))
        return IntervalScalar(ctx.mpf(self.iv) * ctx.mpf(o.iv), ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        ctx = self.context(min(self.ctx.prec, o.ctx.prec))
        return IntervalScalar(ctx.mpf(self.iv) / ctx.mpf(o.iv), ctx)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        out = IntervalScalar.from_exact(1, self.ctx.prec)
        b = self
        if k < 0:
            b, k = IntervalScalar.from_exact(1, self.ctx.prec) / self, -k
        for _ in range(k):
            out = out * b
        return out

    def sqrt(self) -> "IntervalScalar":
        return IntervalScalar(self.ctx.sqrt(self.iv), self.ctx)

    def sign(self) -> int:
        if self.iv.a > 0:
            return 1
        if self.iv.b < 0:
            return -1
        if self.iv.a == 0 and self.iv.b == 0:
            return 0
        raise UndecidableComparison(
            f"interval {self.iv} straddles zero at prec={self.ctx.prec}")

    def width(self) -> Fraction:
        return mpf_to_fraction(self.iv.delta)

    def midpoint(self):
        return self.iv.mid

    def contains_zero(self) -> bool:
        return self.iv.a <= 0 <= self.iv.b

    def __repr__(self):
        return f"iv[{mpmath.nstr(self.iv, 12)}]@{self.ctx.prec}"


def mpf_to_fraction(x) -> Fraction:
    m, e = x.man_exp if hasattr(x, "man_exp") else mpmath.mpf(x).man_exp
    return Fraction(int(m)) * (Fraction(2) ** int(e))


# -- tower-level operations ----------------------------------------------


def is_exact(x: Scalar) -> bool:
    return not isinstance(x, IntervalScalar)


def to_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadExt) and x.q == 0:
        return x.p
    raise TypeError(f"not an exact rational: {x!r}")


def add(a, b):
    r = _binop(a, b, lambda x, y: x + y)
    return r


def sub(a, b):
    return _binop(a, b, lambda x, y: x - y)


def mul(a, b):
    return _binop(a, b, lambda x, y: x * y)


def div(a, b):
    return _binop(a, b, lambda x, y: x / y)


def _binop(a, b, op):
    a = Fraction(a) if isinstance(a, int) else a
    b = Fraction(b) if isinstance(b, int) else b
    if isinstance(a, IntervalScalar) or isinstance(b, IntervalScalar):
        prec = min(x.ctx.prec for x in (a, b) if isinstance(x, IntervalScalar))
        ai = IntervalScalar.from_exact(a, prec)
        bi = IntervalScalar.from_exact(b, prec)
        return op(ai, bi)
    if isinstance(a, QuadExt) or isinstance(b, QuadExt):
        qa = a if isinstance(a, QuadExt) else None
        qb = b if isinstance(b, QuadExt) else None
        if qa is not None and qb is not None and qa.d != qb.d and qa.q != 0 and qb.q != 0:
            # incompatible radicals: escalate
            prec = DEFAULT_PREC
            return op(IntervalScalar.from_exact(a, prec), IntervalScalar.from_exact(b, prec))
        r = op(a, b)
        if r is NotImplemented:
            prec = DEFAULT_PREC
            return op(IntervalScalar.from_exact(a, prec), IntervalScalar.from_exact(b, prec))
        return r
    return op(a, b)


def sqrt(x: Scalar, prec: int = DEFAULT_PREC) -> Scalar:
    """Positive square root within the tower."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("square root of negative rational")
        return QuadExt.of_sqrt(x)
    if isinstance(x, QuadExt):
        r = x.sqrt()
        if r is not None:
            return r
        return IntervalScalar.from_exact(x, prec).sqrt()
    return x.sqrt()


def sign(x: Scalar) -> int:
    if isinstance(x, int):
        return (x > 0) - (x < 0)
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    return x.sign()


def is_positive(x: Scalar) -> bool:
    return sign(x) > 0


def eq_exact(a: Scalar, b: Scalar) -> bool:
    """Exact equality; only valid when both operands are exact."""
    d = sub(a, b)
    if isinstance(d, IntervalScalar):
        raise UndecidableComparison("exact comparison on interval scalars")
    return sign(d) == 0


def certify_equal(a: Scalar, b: Scalar, rel_width: Fraction = Fraction(1, 2 ** 128)) -> str:
    """Equality certificate: 'exact', or 'interval' when both enclosures agree.

    Raises UndecidableComparison when the difference interval excludes zero
    or is wider than the requested relative width.
    """
    if is_exact(a) and is_exact(b):
        if not eq_exact(a, b):
            raise UndecidableComparison(f"exact values differ: {a!r} != {b!r}")
        return "exact"
    d = sub(a, b)
    assert isinstance(d, IntervalScalar)
    if not d.contains_zero():
        raise UndecidableComparison(f"difference excludes zero: {d!r}")
    scale = max(abs(mpf_to_fraction(IntervalScalar.from_exact(a, d.ctx.prec).iv.b)), Fraction(1))
    if d.width() > rel_width * 2 * scale:
        raise UndecidableComparison(f"difference too wide: {d!r}")
    return "interval"
