"""Exact arithmetic in 1/2 Z[sqrt(a)] and 2x2 matrices over it.

An element is stored as a pair of integer numerators ``(u, v)`` over the
fixed denominator 2, i.e. the value ``(u + v*sqrt(a)) / 2``.  Integers embed
as ``(2n, 0)``.  Python integers are unbounded, so long generator words never
overflow.

The set 1/2 Z[sqrt(a)] is closed under addition but not under
multiplication; a product that needs denominator 4 raises
:class:`DomainError`.  Matrix products of group elements always land back in
the set, and the matrix routines only reduce the denominator after summing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _halve(n: int) -> int:
    if n & 1:
        raise DomainError("result leaves 1/2 Z[sqrt(a)] (denominator 4 needed)")
    return n >> 1


@dataclass(frozen=True, slots=True)
class QuadHalfInt:
    """The number ``(u + v*sqrt(a)) / 2``."""

    u: int
    v: int
    a: int

    @classmethod
    def from_int(cls, n: int, a: int) -> QuadHalfInt:
        return cls(2 * n, 0, a)

    @classmethod
    def from_ints(cls, x: int, y: int, a: int) -> QuadHalfInt:
        """The element ``x + y*sqrt(a)`` of Z[sqrt(a)]."""
        return cls(2 * x, 2 * y, a)

    def _check(self, other: QuadHalfInt) -> None:
        if self.a != other.a:
            raise DomainError(f"radicand mismatch: {self.a} vs {other.a}")

    def __add__(self, other: QuadHalfInt) -> QuadHalfInt:
        self._check(other)
        return QuadHalfInt(self.u + other.u, self.v + other.v, self.a)

    def __sub__(self, other: QuadHalfInt) -> QuadHalfInt:
        self._check(other)
        return QuadHalfInt(self.u - other.u, self.v - other.v, self.a)

    def __neg__(self) -> QuadHalfInt:
        return QuadHalfInt(-self.u, -self.v, self.a)

    def __mul__(self, other: QuadHalfInt) -> QuadHalfInt:
        self._check(other)
        a = self.a
        # (u1 + v1 r)(u2 + v2 r) / 4
        p = self.u * other.u + a * self.v * other.v
        q = self.u * other.v + self.v * other.u
        return QuadHalfInt(_halve(p), _halve(q), a)

    def conj(self) -> QuadHalfInt:
        return QuadHalfInt(self.u, -self.v, self.a)

    def norm(self) -> Fraction:
        return Fraction(self.u * self.u - self.a * self.v * self.v, 4)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_integral(self) -> bool:
        """True when the value lies in Z[sqrt(a)]."""
        return self.u % 2 == 0 and self.v % 2 == 0

    def __float__(self) -> float:
        u, v, a = self.u, self.v, self.a
        if (u > 0 > v) or (v > 0 > u):
            # opposite signs cancel; divide the exact norm by the conjugate instead
            return (u * u - a * v * v) / (2.0 * (u - v * math.sqrt(a)))
        return u * 0.5 + v * 0.5 * math.sqrt(a)

    def __str__(self) -> str:
        if self.v == 0:
            return str(Fraction(self.u, 2))
        if self.u == 0:
            head = ""
        else:
            head = f"{Fraction(self.u, 2)}"
        coef = Fraction(abs(self.v), 2)
        sign = "-" if self.v < 0 else ("+" if head else "")
        c = "" if coef == 1 else f"{coef}*"
        return f"{head}{sign}{c}sqrt({self.a})"


def quad_add(x: QuadHalfInt, y: QuadHalfInt) -> QuadHalfInt:
    return x + y


def quad_mul(x: QuadHalfInt, y: QuadHalfInt) -> QuadHalfInt:
    return x * y


def quad_conj(x: QuadHalfInt) -> QuadHalfInt:
    return x.conj()


def quad_norm(x: QuadHalfInt) -> Fraction:
    return x.norm()


@dataclass(frozen=True, slots=True)
class QuadMatrix:
    e11: QuadHalfInt
    e12: QuadHalfInt
    e21: QuadHalfInt
    e22: QuadHalfInt

    def __post_init__(self) -> None:
        a = self.e11.a
        if not (self.e12.a == self.e21.a == self.e22.a == a):
            raise DomainError("matrix entries must share one radicand")
        if not is_squarefree(a):
            raise DomainError(f"radicand {a} is not a positive square-free integer")

    @property
    def a(self) -> int:
        return self.e11.a

    @classmethod
    def identity(cls, a: int) -> QuadMatrix:
        one, zero = QuadHalfInt(2, 0, a), QuadHalfInt(0, 0, a)
        return cls(one, zero, zero, one)

    @classmethod
    def from_halves(cls, a: int, entries) -> QuadMatrix:
        """Build from four ``(u, v)`` numerator pairs over 2."""
        return cls(*(QuadHalfInt(u, v, a) for u, v in entries))

    def entries(self) -> tuple[QuadHalfInt, QuadHalfInt, QuadHalfInt, QuadHalfInt]:
        return (self.e11, self.e12, self.e21, self.e22)

    def coords(self) -> tuple[int, ...]:
        """The eight integer numerators, row-major."""
        return tuple(c for e in self.entries() for c in (e.u, e.v))

    def __matmul__(self, other: QuadMatrix) -> QuadMatrix:
        return mat_mul(self, other)

    def __neg__(self) -> QuadMatrix:
        return QuadMatrix(-self.e11, -self.e12, -self.e21, -self.e22)

    def trace(self) -> QuadHalfInt:
        return self.e11 + self.e22

    def is_identity(self) -> bool:
        return self == QuadMatrix.identity(self.a)


def _dot2(x1: QuadHalfInt, y1: QuadHalfInt, x2: QuadHalfInt, y2: QuadHalfInt,
          a: int) -> QuadHalfInt:
    """x1*y1 + x2*y2, reducing the denominator only once at the end."""
    p = x1.u * y1.u + a * x1.v * y1.v + x2.u * y2.u + a * x2.v * y2.v
    q = x1.u * y1.v + x1.v * y1.u + x2.u * y2.v + x2.v * y2.u
    return QuadHalfInt(_halve(p), _halve(q), a)


def mat_mul(A: QuadMatrix, B: QuadMatrix) -> QuadMatrix:
    a = A.a
    if B.a != a:
        raise DomainError(f"radicand mismatch: {a} vs {B.a}")
    return QuadMatrix(
        _dot2(A.e11, B.e11, A.e12, B.e21, a),
        _dot2(A.e11, B.e12, A.e12, B.e22, a),
        _dot2(A.e21, B.e11, A.e22, B.e21, a),
        _dot2(A.e21, B.e12, A.e22, B.e22, a),
    )


def mat_det(A: QuadMatrix) -> QuadHalfInt:
    return _dot2(A.e11, A.e22, -A.e12, A.e21, A.a)


def mat_inv(A: QuadMatrix) -> QuadMatrix:
    """Adjugate inverse; only defined for determinant exactly 1."""
    if mat_det(A) != QuadHalfInt(2, 0, A.a):
        raise DomainError("mat_inv requires det = 1")
    return QuadMatrix(A.e22, -A.e12, -A.e21, A.e11)


def sign_key(A: QuadMatrix) -> tuple[int, ...]:
    """Canonical encoding of ``A`` modulo sign: first nonzero coordinate positive."""
    c = A.coords()
    for x in c:
        if x:
            if x < 0:
                c = tuple(-y for y in c)
            break
    return (A.a,) + c


def mat_eq_up_to_sign(A: QuadMatrix, B: QuadMatrix) -> bool:
    return sign_key(A) == sign_key(B)


def to_complex(A: QuadMatrix) -> tuple[float, float, float, float]:
    return tuple(float(e) for e in A.entries())
