"""Norm-one quaternion units without a list of group generators.

For the algebras (p, -1) with p = 3 mod 4 prime, units come from the
fundamental unit eps of Z[sqrt p]: with eps^m = a_m + b_m sqrt p,

    x + y sqrt p = a_m eps^k1,    z + t sqrt p = sqrt p b_m eps^k2

gives x^2 - p y^2 + z^2 - p t^2 = 1.  For a general indefinite algebra
(a, b), an embedded real quadratic field Q(sqrt q) gives the units
(x_q + y_q w)^m, where w is a pure quaternion with w^2 = q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapError, DomainError, NotInImage
from .exact import QuadHalfInt, QuadMatrix, mat_det, mat_mul

PELL_CAP = 10_000

# Fundamental units eps = x + y sqrt p as published, p = 3 mod 4, p < 50.
PUBLISHED_UNITS: dict[int, tuple[int, int]] = {
    3: (2, 1), 7: (8, 3), 11: (10, 3), 19: (170, 39),
    23: (24, 2), 31: (1520, 237), 43: (3482, 531), 47: (48, 7),
}

# Published images of phi_p at (m, k1, k2).
PUBLISHED_PHI: dict[tuple[int, int, int, int], tuple[int, int, int, int]] = {
    (3, 1, 0, 1): (2, 0, 3, 2), (3, 2, 0, 1): (7, 0, 12, 8), (3, 2, 1, 1): (14, 7, 12, 8),
    (7, 1, 0, 1): (8, 0, 63, 24), (7, 2, 0, 1): (127, 0, 1008, 384),
    (7, 2, 1, 1): (1016, 381, 1008, 384),
    (11, 1, 0, 1): (10, 0, 99, 30), (11, 2, 0, 1): (199, 0, 1980, 600),
    (11, 2, 1, 1): (1990, 597, 1980, 600),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class UnitTuple:
    x: int
    y: int
    z: int
    t: int
    a: int
    b: int

    @property
    def norm(self) -> int:
        a, b = self.a, self.b
        return self.x ** 2 - a * self.y ** 2 - b * self.z ** 2 + a * b * self.t ** 2

    def coords(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.t)


class ParamTriple(NamedTuple):
    m: int
    k1: int
    k2: int


# --- quadratic integers as (x, y) = x + y sqrt p ---------------------------------

def _qmul(u: tuple[int, int], v: tuple[int, int], p: int) -> tuple[int, int]:
    return (u[0] * v[0] + p * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _qpow(u: tuple[int, int], n: int, p: int) -> tuple[int, int]:
    out = (1, 0)
    for _ in range(n):
        out = _qmul(out, u, p)
    return out


def fundamental_unit(p: int, cap: int = PELL_CAP) -> tuple[int, int]:
    """Smallest solution y > 0 of x^2 - p y^2 = 1, from the continued fraction of sqrt p."""
    if p >= cap:
        raise CapError(f"p={p} is beyond the search cap {cap}")
    if not is_prime(p) or p % 4 != 3:
        raise DomainError("fundamental_unit expects a prime p = 3 mod 4")
    a0 = math.isqrt(p)
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - p * k * k != 1:
        m = d * a - m
        d = (p - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


def pell_norm(x: int, y: int, p: int) -> int:
    return x * x - p * y * y


def check_published_units() -> list[tuple[int, tuple[int, int], tuple[int, int], int, bool]]:
    """Rows (p, published, computed, norm of published, agree)."""
    rows = []
    for p, pub in PUBLISHED_UNITS.items():
        comp = fundamental_unit(p)
        rows.append((p, pub, comp, pell_norm(*pub, p), pub == comp))
    return rows


def phi_p(p: int, m: int, k1: int, k2: int) -> UnitTuple:
    if m < 1 or k1 < 0 or k2 < 0:
        raise DomainError("phi_p needs m >= 1 and k1, k2 >= 0")
    eps = fundamental_unit(p)
    am, bm = _qpow(eps, m, p)
    x, y = _qmul((am, 0), _qpow(eps, k1, p), p)
    z, t = _qmul((0, bm), _qpow(eps, k2, p), p)
    return UnitTuple(x, y, z, t, p, -1)


def tuple_to_matrix(a: int, b: int, u: UnitTuple | tuple[int, int, int, int]) -> QuadMatrix:
    """x + yI + zJ + tK  ->  [[x + y sqrt a, z + t sqrt a], [b (z - t sqrt a), x - y sqrt a]]."""
    x, y, z, t = u.coords() if isinstance(u, UnitTuple) else u
    if x * x - a * y * y - b * z * z + a * b * t * t != 1:
        raise DomainError(f"({x},{y},{z},{t}) does not have reduced norm 1 in ({a},{b})")
    q = lambda s, r: QuadHalfInt.from_ints(s, r, a)  # noqa: E731
    return QuadMatrix(q(x, y), q(z, t), q(b * z, -b * t), q(x, -y))


def in_gamma_2p(A: QuadMatrix, p: int) -> bool:
    """Membership in Gamma(2p,1): A = (1/2)[[al, be], [-be', al']] with det 1 and
    al = be = al sqrt p (mod 2) in Z[sqrt p]."""
    if A.a != p:
        return False
    al, be = (A.e11.u, A.e11.v), (A.e12.u, A.e12.v)
    if (A.e22.u, A.e22.v) != (al[0], -al[1]) or (A.e21.u, A.e21.v) != (-be[0], be[1]):
        return False
    if mat_det(A) != QuadHalfInt(2, 0, p):
        return False
    al_sqrt = (p * al[1], al[0])
    return all((s - r) % 2 == 0 for s, r in zip(al, be)) and \
        all((s - r) % 2 == 0 for s, r in zip(al, al_sqrt))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise DomainError("legendre needs an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker(a: int, p: int) -> int:
    """Kronecker symbol (a/p) for a prime p, including p = 2."""
    if p == 2:
        if a % 2 == 0:
            return 0
        return 1 if a % 8 in (1, 7) else -1
    return legendre(a, p)


def embeds(q: int, p1: int, p2: int) -> bool:
    """Whether Q(sqrt q), q = 3 mod 4 prime, embeds in the algebra of discriminant p1 p2."""
    if q % 4 != 3 or not is_prime(q):
        raise DomainError("embeds expects a prime q = 3 mod 4")
    return kronecker(4 * q, p1) != 1 and kronecker(4 * q, p2) != 1


def admissible_primes(p1: int, p2: int, limit: int) -> list[int]:
    return [q for q in range(3, limit, 4) if is_prime(q) and embeds(q, p1, p2)]


def psi_q(q: int, unit: tuple[int, int], pure: tuple[int, int, int], m: int,
          a: int = 3, b: int = -1) -> QuadMatrix:
    """Matrix of (x_q + y_q w)^m with w = xI + yJ + zK and w^2 = q in (a, b)."""
    xq, yq = unit
    x, y, z = pure
    if a * x * x + b * y * y - a * b * z * z != q:
        raise DomainError(f"{pure} does not solve a x^2 + b y^2 - a b z^2 = {q}")
    if xq * xq - q * yq * yq != 1:
        raise DomainError(f"{unit} is not a unit of norm 1 in Z[sqrt {q}]")
    if m < 0:
        raise DomainError("m must be nonnegative")
    base = tuple_to_matrix(a, b, (xq, yq * x, yq * y, yq * z))
    out = QuadMatrix.identity(a)
    for _ in range(m):
        out = mat_mul(out, base)
    return out


def triple_encode(tr: ParamTriple | tuple[int, int, int], p: int) -> tuple[int, QuadMatrix]:
    """(m, k1, k2) -> (sign of m, matrix of phi_p(|m|, k1, k2))."""
    m, k1, k2 = tr
    if m == 0:
        raise DomainError("m must be nonzero")
    sign = 1 if m > 0 else -1
    return sign, tuple_to_matrix(p, -1, phi_p(p, abs(m), k1, k2))


def _log_eps(value: tuple[int, int], base: tuple[int, int], eps: tuple[int, int], p: int) -> int:
    """k >= 0 with base * eps^k == value, or NotInImage."""
    k, cur = 0, base
    while cur[0] <= value[0]:
        if cur == value:
            return k
        cur = _qmul(cur, eps, p)
        k += 1
    raise NotInImage(f"{value} is not {base} times a power of the fundamental unit")


def triple_decode(sign: int, u: UnitTuple | tuple[int, int, int, int], p: int) -> ParamTriple:
    """Inverse of :func:`triple_encode` on the tuple side."""
    x, y, z, t = u.coords() if isinstance(u, UnitTuple) else u
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if min(x, y, z, t) < 0:
        raise NotInImage("phi_p images have nonnegative coordinates")
    eps = fundamental_unit(p)
    n = pell_norm(x, y, p)
    am = math.isqrt(n) if n > 0 else -1
    if am * am != n:
        raise NotInImage("x^2 - p y^2 is not a square")
    m, cur = 1, eps
    while cur[0] < am:
        cur = _qmul(cur, eps, p)
        m += 1
    if cur[0] != am:
        raise NotInImage(f"{am} is not the rational part of a power of the fundamental unit")
    bm = cur[1]
    k1 = _log_eps((x, y), (am, 0), eps, p)
    if bm == 0:
        raise NotInImage("degenerate unit")
    k2 = _log_eps((z, t), (0, bm), eps, p)
    return ParamTriple(sign * m, k1, k2)
