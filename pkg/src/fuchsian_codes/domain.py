"""Sides of a fundamental domain and the point-membership test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Circle, Line, euclidean_excess, hyperbolic_excess
from .groups import GroupElement

# A point within this Euclidean distance of a side counts as on it (F is closed).
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class Side:
    """One boundary geodesic of F and the element applied when it is crossed.

    ``inside`` tells on which side of ``boundary`` the domain lies: inside the
    disc (``G_int``) or outside it (``G_ext``).  For a vertical line it means
    the domain is to the left.
    """

    element: GroupElement
    boundary: Circle | Line
    inside: bool

    @property
    def label(self) -> str:
        return self.element.label

    def excess(self, z: complex) -> float:
        return euclidean_excess(z, self.boundary, self.inside)

    def violated(self, z: complex, tol: float = BOUNDARY_TOL) -> bool:
        return self.excess(z) > tol

    def depth_beyond(self, z: complex) -> float:
        return hyperbolic_excess(z, self.boundary, self.inside)


def first_violator(z: complex, sides: Sequence[Side], tol: float = BOUNDARY_TOL) -> int | None:
    for k, side in enumerate(sides):
        if side.violated(z, tol):
            return k
    return None


def strictly_interior(z: complex, sides: Sequence[Side], margin: float = 1e-9) -> bool:
    return z.imag > 0 and all(side.excess(z) < -margin for side in sides)
