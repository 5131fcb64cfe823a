"""Point reduction: move a point of the upper half-plane into F.

Each pass scans the sides of F, then a reduction step applies the chosen
side element to the point (floating point) and to the accumulator (exact).
Operation counts: 5 per side check, 19 per reduction step and 7 for the
final evaluation of the decoded word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .domain import BOUNDARY_TOL, Side
from .errors import DomainError, NonTermination
from .geometry import mobius_f
from .groups import GroupElement

CHECK_OPS = 5
STEP_OPS = 19
FINAL_OPS = 7

RULES = ("deepest", "first")
DEFAULT_RULE = "deepest"


@dataclass
class OpCounter:
    circle_checks: int = 0
    step3_count: int = 0
    final_ops: int = 0

    @property
    def total_ops(self) -> int:
        return CHECK_OPS * self.circle_checks + STEP_OPS * self.step3_count + self.final_ops


class Reduction(NamedTuple):
    z0: complex
    t: GroupElement
    counter: OpCounter
    path: tuple[int, ...]


def select_side(z: complex, sides: Sequence[Side], rule: str, skip: int | None,
                tol: float = BOUNDARY_TOL) -> tuple[int | None, int]:
    """Return (index of the side to apply or None, number of sides checked).

    ``deepest`` picks the violated side the point lies hyperbolically
    furthest beyond (ties go to the lower index); ``first`` stops at the first
    violated side in catalog order.  ``skip`` is the side just applied: it is
    moved to the end of the scan and only checked when every other side
    passes, since an elliptic side element may need to be applied again.
    """
    best = None
    best_depth = 0.0
    checks = 0
    for k, side in enumerate(sides):
        if k == skip:
            continue
        checks += 1
        if side.excess(z) > tol:
            if rule == "first":
                return k, checks
            d = side.depth_beyond(z)
            if best is None or d > best_depth:
                best, best_depth = k, d
    if best is None and skip is not None:
        checks += 1
        if sides[skip].excess(z) > tol:
            best = skip
    return best, checks


def reduce_point(z: complex, sides: Sequence[Side], max_iter: int,
                 rule: str = DEFAULT_RULE, skip_last: bool = True,
                 tol: float = BOUNDARY_TOL,
                 final_scan: bool = True) -> tuple[complex, tuple[int, ...], int, bool]:
    """Float-only reduction: (z0, side path, side checks, converged).

    With ``final_scan=False`` the loop stops right after the ``max_iter``-th
    step without scanning again; ``converged`` is then True (unverified).
    """
    if rule not in RULES:
        raise DomainError(f"unknown selection rule {rule!r}")
    path: list[int] = []
    checks = 0
    last = None
    while True:
        if not final_scan and len(path) >= max_iter:
            return z, tuple(path), checks, True
        k, n = select_side(z, sides, rule, last if skip_last else None, tol)
        checks += n
        if k is None:
            return z, tuple(path), checks, True
        if len(path) >= max_iter:
            return z, tuple(path), checks, False
        z = mobius_f(sides[k].element.floats, z)
        path.append(k)
        last = k


def pra_reduce(z: complex, F, max_iter: int = 1000, rule: str = DEFAULT_RULE,
               skip_last: bool = True, tol: float = BOUNDARY_TOL) -> Reduction:
    """Reduce ``z`` into the fundamental domain of ``F``.

    Returns the reduced point, the exact accumulator ``t`` with ``t(z) = z0``,
    the operation counter and the sequence of applied side indices.
    """
    if not z.imag > 0:
        raise DomainError("pra_reduce needs Im(z) > 0")
    sides = F.sides
    z0, path, checks, ok = reduce_point(z, sides, max_iter, rule, skip_last, tol)
    if not ok:
        raise NonTermination(f"no reduction of {z} within {max_iter} iterations")
    t = GroupElement.identity(F.a)
    for k in path:
        t = sides[k].element * t
    return Reduction(z0, t, OpCounter(checks, len(path), 0), path)
