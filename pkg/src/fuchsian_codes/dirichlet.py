"""Dirichlet fundamental domains centered at a point of the upper half-plane.

Used for groups whose side pairings are not tabulated.  The domain centered
at ``tau`` is the intersection of the half-planes ``d(z, tau) <= d(z, g tau)``;
in the Klein model each of these is a Euclidean half-plane, so the polygon is
obtained by straightforward convex clipping of a finite ball of the group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domain import Side
from .errors import DomainError
from .geometry import Circle, Line
from .groups import GroupElement


def word_sort_key(element: GroupElement) -> tuple:
    return (len(element.word), element.word)


def ball(generators: Sequence[GroupElement], radius: int) -> list[GroupElement]:
    """Distinct elements (mod +-Id) of word length <= radius, in shortlex order."""
    letters = []
    for g in generators:
        letters += [g, g.inverse()]
    ident = GroupElement.identity(generators[0].matrix.a)
    seen = {ident.key}
    out = [ident]
    frontier = [ident]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g in letters:
                y = x * g
                if y.key not in seen:
                    seen.add(y.key)
                    nxt.append(y)
                    out.append(y)
        frontier = nxt
    return out


def _to_disc(z: complex, tau: complex) -> complex:
    return (z - tau) / (z - tau.conjugate())


def _klein_to_upper(k: complex, tau: complex) -> complex:
    w = k / (1.0 + math.sqrt(max(0.0, 1.0 - abs(k) ** 2)))
    return (tau - tau.conjugate() * w) / (1.0 - w)


def bisector(tau: complex, w: complex) -> tuple[Circle | Line, bool]:
    """Geodesic equidistant from ``tau`` and ``w`` and the side ``tau`` is on.

    Returns the boundary and the ``inside`` flag of :class:`Side`.
    """
    p, q = tau.imag, w.imag
    A = q - p
    c0 = q * tau.real - p * w.real
    B = q * abs(tau) ** 2 - p * abs(w) ** 2
    if abs(A) > 1e-14 * max(p, q):
        c = c0 / A
        r2 = c * c - B / A
        return Circle(complex(c, 0.0), math.sqrt(r2)), A > 0
    return Line.vertical(B / (2.0 * c0)), c0 < 0


def _clip(poly: list[complex], u: complex, r: float) -> list[complex]:
    out = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        fa = (a * u.conjugate()).real - r
        fb = (b * u.conjugate()).real - r
        if fa <= 0:
            out.append(a)
        if fa * fb < 0:
            out.append(a + fa / (fa - fb) * (b - a))
    return out


@dataclass(frozen=True)
class DirichletDomain:
    tau: complex
    sides: tuple[Side, ...]
    vertices: tuple[complex, ...]  # upper half-plane, counterclockwise in the disc
    area: float


def dirichlet_domain(generators: Sequence[GroupElement], tau: complex,
                     radius: int = 5) -> DirichletDomain:
    """Dirichlet domain at ``tau`` from the ball of the given word radius.

    Side elements are ordered shortlex by their generator word.  Raises
    :class:`DomainError` if the clipped polygon is not compact (radius too
    small) or if the sides are not closed under inversion.
    """
    halfplanes = []
    for g in ball(generators, radius)[1:]:
        w = g(tau)
        d = _to_disc(w, tau)
        rho = abs(d)
        if rho < 1e-12:
            raise DomainError(f"tau is fixed by {g.label}")
        dist = 2.0 * math.atanh(rho)
        halfplanes.append((g, d / rho, math.tanh(dist / 2.0)))
    poly = [complex(1.5, 1.5), complex(-1.5, 1.5), complex(-1.5, -1.5), complex(1.5, -1.5)]
    for _, u, r in halfplanes:
        poly = _clip(poly, u, r)
    if not poly or max(abs(p) for p in poly) >= 1.0 - 1e-9:
        raise DomainError("domain not compact at this radius")
    # Label each polygon edge by the half-plane whose chord carries it.
    edges = []
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        if abs(b - a) < 1e-10:
            continue
        mid = (a + b) / 2
        owner = min(halfplanes, key=lambda h: abs((mid * h[1].conjugate()).real - h[2]))
        if edges and edges[-1][0] is owner[0]:
            continue
        edges.append((owner[0], a))
    if len(edges) > 1 and edges[0][0] is edges[-1][0]:
        edges.pop()
    owners = [g for g, _ in edges]
    keys = {g.key for g in owners}
    if any(g.inverse().key not in keys for g in owners):
        raise DomainError("side pairing not closed under inversion")
    vertices = [_klein_to_upper(v, tau) for _, v in edges]
    sides = []
    for g in owners:
        boundary, inside = bisector(tau, g(tau))
        # crossing the bisector of (tau, g tau) is undone by g^-1
        sides.append(Side(g.inverse(), boundary, inside))
    area = polygon_area(vertices, sides_in_order=[s for s in sides])
    sides.sort(key=lambda s: word_sort_key(s.element))
    return DirichletDomain(tau, tuple(sides), tuple(vertices), area)


def _outward_normal(side: Side, z: complex) -> complex:
    b = side.boundary
    if isinstance(b, Circle):
        n = z - b.center
        return n if side.inside else -n
    return complex(1.0 if side.inside else -1.0, 0.0)


def polygon_area(vertices: Sequence[complex], sides_in_order: Sequence[Side]) -> float:
    """Gauss-Bonnet area of a compact geodesic polygon.

    ``vertices[i]`` is where side ``i-1`` ends and side ``i`` starts.
    """
    n = len(vertices)
    total = 0.0
    for i in range(n):
        n1 = _outward_normal(sides_in_order[i - 1], vertices[i])
        n2 = _outward_normal(sides_in_order[i], vertices[i])
        between = abs(np.angle(n1 / n2))
        total += math.pi - between
    return (n - 2) * math.pi - total

