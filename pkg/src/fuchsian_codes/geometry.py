"""Floating-point Mobius action and generalized circles in the complex plane."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericError

# Mobius maps are passed around as (a11, a12, a21, a22) float tuples.
Float4 = tuple[float, float, float, float]

_POLE_EPS = 1e-300


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)

    def point(self, theta: float) -> complex:
        return self.center + self.radius * complex(math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class Line:
    """The line through ``point`` with direction ``direction``."""

    point: complex
    direction: complex

    @classmethod
    def vertical(cls, x0: float) -> Line:
        return cls(complex(x0, 0.0), 1j)

    def distance(self, z: complex) -> float:
        d = self.direction
        return abs(((z - self.point) * d.conjugate()).imag) / abs(d)

    def point_at(self, s: float) -> complex:
        return self.point + s * self.direction


def mobius_f(m: Float4, z: complex) -> complex:
    a11, a12, a21, a22 = m
    den = a21 * z + a22
    if abs(den) < _POLE_EPS:
        raise NumericError("point is at the pole of the Mobius map")
    return (a11 * z + a12) / den


def _reflect_in_circle(p: complex, c: Circle) -> complex | None:
    d = p - c.center
    if abs(d) <= 1e-14 * c.radius:
        return None  # reflection of the center is infinity
    return c.center + c.radius ** 2 / d.conjugate()


def _reflect_in_line(p: complex, ln: Line) -> complex:
    u = ln.direction / abs(ln.direction)
    w = (p - ln.point) / u
    return ln.point + w.conjugate() * u


def _image_of_infinity(m: Float4) -> complex | None:
    a11, _, a21, _ = m
    return None if a21 == 0 else complex(a11 / a21)


def circle_image(m: Float4, shape: Circle | Line) -> Circle | Line:
    """Image of a circle or line under the Mobius map ``m``.

    Symmetric points go to symmetric points, so the image center is the image
    of the reflection of the pole ``-a22/a21`` in the source shape.
    """
    a11, a12, a21, a22 = m
    pole = None if a21 == 0 else complex(-a22 / a21)
    if isinstance(shape, Circle):
        on_shape = pole is not None and abs(abs(pole - shape.center) - shape.radius) <= 1e-12 * max(1.0, shape.radius)
        samples = [shape.point(t) for t in (0.3, 2.4, 4.5)]
    else:
        on_shape = pole is None or shape.distance(pole) <= 1e-12
        samples = [shape.point_at(s) for s in (-1.0, 0.5, 2.0)]
    images = []
    for s in samples:
        try:
            images.append(mobius_f(m, s))
        except NumericError:
            continue
    if on_shape:
        p, q = images[0], images[1]
        return Line(p, q - p)
    if pole is None:
        # affine map z -> (a11 z + a12)/a22
        if isinstance(shape, Circle):
            return Circle(mobius_f(m, shape.center), shape.radius * abs(a11 / a22))
        return Line(mobius_f(m, shape.point), shape.direction * (a11 / a22))
    if isinstance(shape, Circle):
        star = _reflect_in_circle(pole, shape)
        center = _image_of_infinity(m) if star is None else mobius_f(m, star)
    else:
        center = mobius_f(m, _reflect_in_line(pole, shape))
    return Circle(center, abs(images[0] - center))


def hyperbolic_excess(z: complex, shape: Circle | Line, inside: bool) -> float:
    """sinh of the hyperbolic distance by which ``z`` lies on the wrong side.

    ``shape`` is a geodesic (circle centered on the real axis or vertical
    line).  For a circle, ``inside=True`` means the allowed region is the
    disc interior; for a vertical line it means ``Re z <= x0``.  Positive
    values signal a violation.
    """
    y = z.imag
    if isinstance(shape, Circle):
        c = shape.center.real
        r = shape.radius
        d2 = (z.real - c) ** 2 + y * y
        s = (d2 - r * r) / (2.0 * r * y)
        return s if inside else -s
    x0 = shape.point.real
    s = (z.real - x0) / y
    return s if inside else -s


def euclidean_excess(z: complex, shape: Circle | Line, inside: bool) -> float:
    """Signed Euclidean distance by which ``z`` lies on the wrong side."""
    if isinstance(shape, Circle):
        s = abs(z - shape.center) - shape.radius
        return s if inside else -s
    s = z.real - shape.point.real
    return s if inside else -s
