"""Catalog of the arithmetic Fuchsian groups Gamma(6,1), Gamma(10,1), Gamma(15,1).

Each entry bundles the generators, the presentation relations, the center
``tau`` used for codes and the side data of a fundamental domain F.  For
Gamma(6,1) the sides are the five isometric circles of g1, g1^-1, g2, g2^-1
(F outside) and g3 (F inside).  No side data is tabulated for the other two
groups, so their F is the Dirichlet domain centered at ``tau``, derived at
load time and checked against the covolume.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .dirichlet import DirichletDomain, dirichlet_domain, polygon_area
from .domain import BOUNDARY_TOL, Side, first_violator, strictly_interior
from .errors import CapError, DomainError, NoCircle, UnsupportedGroup
from .exact import QuadMatrix
from .geometry import Circle, Line, circle_image as _circle_image, mobius_f
from .groups import GroupElement, Word, evaluate_word, format_word, parse_word
from .pra import DEFAULT_RULE, pra_reduce, reduce_point

SUPPORTED = (6, 10, 15)
DEFAULT_KAPPA_CAP = 8


@dataclass(frozen=True)
class IsometricCircle:
    center: float
    radius: float
    owner: str

    def as_circle(self) -> Circle:
        return Circle(complex(self.center, 0.0), self.radius)


@dataclass(frozen=True, eq=False)
class FuchsianCatalogEntry:
    D: int
    a: int
    generators: tuple[GroupElement, ...]
    relations: tuple[tuple[Word, int], ...]
    tau: complex
    sides: tuple[Side, ...]
    domain: str  # "circles" or "dirichlet"
    published_M: int
    covolume: float
    tabulated: dict[int, tuple[Word, ...]] = field(default_factory=dict)

    @property
    def M(self) -> int:
        return len(self.sides)

    @property
    def G(self) -> tuple[GroupElement, ...]:
        return tuple(s.element for s in self.sides)

    @property
    def G_ext(self) -> tuple[GroupElement, ...]:
        return tuple(s.element for s in self.sides if not s.inside)

    @property
    def G_int(self) -> tuple[GroupElement, ...]:
        return tuple(s.element for s in self.sides if s.inside)

    @property
    def circles(self) -> tuple[IsometricCircle | None, ...]:
        out = []
        for g in self.G:
            try:
                out.append(isometric_circle(g))
            except NoCircle:
                out.append(None)
        return tuple(out)

    def generator(self, n: int) -> GroupElement:
        return self.generators[n - 1]

    def element(self, word: Word | str) -> GroupElement:
        if isinstance(word, str):
            word = parse_word(word)
        gens = {i + 1: g for i, g in enumerate(self.generators)}
        if any(g not in gens for g, _ in word):
            raise DomainError(f"word {format_word(word)} uses an unknown generator")
        return evaluate_word(word, gens)

    def relation_values(self) -> list[GroupElement]:
        return [self.element(w) ** n for w, n in self.relations]


def _gen(a: int, halves, name: int) -> GroupElement:
    return GroupElement(QuadMatrix.from_halves(a, halves), ((name, 1),))


def _covolume(D: int) -> float:
    """Hyperbolic area of Gamma(D,1)\\H: (pi/3) * prod (p - 1) over p | D."""
    prod = 1
    for p in (2, 3, 5, 7, 11, 13):
        if D % p == 0:
            prod *= p - 1
    return math.pi / 3 * prod


_RAW = {
    6: dict(
        a=3,
        gens=[
            [(1, 1), (3, -1), (-3, -1), (1, -1)],
            [(1, 1), (-3, 1), (3, 1), (1, -1)],
            [(0, 0), (2, 0), (-2, 0), (0, 0)],
        ],
        relations=[("g1", 3), ("g2", 3), ("g3", 2), ("g1^-1 g3 g2", 2)],
        tau=0.5j,
        published_M=5,
        tabulated={
            4: ["Id", "g1^-1"],
            8: ["Id", "g1^-1", "g2^-1", "g3"],
            # printed as g2 g3; the printed codewords are those of g2^-1 g3
            16: ["Id", "g1^-1", "g2^-1", "g3", "g1", "g2", "g1^-1 g3", "g2^-1 g3"],
        },
    ),
    10: dict(
        a=2,
        gens=[
            [(1, 1), (-1, 1), (-5, -5), (1, -1)],
            [(1, 1), (1, -1), (5, 5), (1, -1)],
            [(6, 4), (0, 0), (0, 0), (6, -4)],
        ],
        relations=[("g1", 3), ("g2", 3), ("g3^-1 g1", 3), ("g3^-1 g2", 3)],
        tau=0.4j,
        published_M=6,
        tabulated={
            4: ["Id", "g1^-1"],
            8: ["Id", "g1^-1", "g2^-1", "g1"],
            16: ["Id", "g1^-1", "g2^-1", "g1", "g2", "g1 g2^-1", "g2 g1^-1", "g3^-1"],
        },
    ),
    15: dict(
        a=3,
        gens=[
            [(-4, 3), (0, -1), (0, 5), (-4, -3)],
            [(3, 0), (1, 0), (5, 0), (3, 0)],
            [(4, 2), (0, 0), (0, 0), (4, -2)],
        ],
        relations=[("g1 g3", 3), ("g3 g2^-1 g1 g2", 3)],
        tau=0.9j,
        published_M=8,
        tabulated={
            4: ["Id", "g2"],
            8: ["Id", "g2", "g1", "g2^-1"],
            16: ["Id", "g2", "g1", "g2^-1", "g1^-1", "g3^-1", "g2^-1 g1 g2", "g2^-1 g1^-1 g2"],
        },
    ),
}


def _isometric_sides(gens: tuple[GroupElement, ...]) -> tuple[Side, ...]:
    g1, g2, g3 = gens
    out = []
    for g, inside in ((g1, False), (g1.inverse(), False), (g2, False), (g2.inverse(), False), (g3, True)):
        out.append(Side(g, isometric_circle(g).as_circle(), inside))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _dirichlet(D: int) -> DirichletDomain:
    raw = _RAW[D]
    gens = tuple(_gen(raw["a"], h, i + 1) for i, h in enumerate(raw["gens"]))
    return dirichlet_domain(gens, raw["tau"])


@functools.lru_cache(maxsize=None)
def catalog(D: int, domain: str | None = None) -> FuchsianCatalogEntry:
    """Load and validate one catalog group.

    ``domain`` selects the side data: ``"circles"`` (isometric circles, only for
    D = 6) or ``"dirichlet"``.  The default is ``"circles"`` for D = 6 and
    ``"dirichlet"`` otherwise.
    """
    if D not in _RAW:
        raise UnsupportedGroup(f"no catalog entry for Gamma({D},1); choose from {SUPPORTED}")
    raw = _RAW[D]
    domain = domain or ("circles" if D == 6 else "dirichlet")
    a = raw["a"]
    gens = tuple(_gen(a, h, i + 1) for i, h in enumerate(raw["gens"]))
    if domain == "circles":
        if D != 6:
            raise UnsupportedGroup(f"no tabulated side data for Gamma({D},1)")
        sides = _isometric_sides(gens)
    elif domain == "dirichlet":
        dd = _dirichlet(D)
        if abs(dd.area - _covolume(D)) > 1e-6:
            raise DomainError(f"Dirichlet domain area {dd.area} != covolume {_covolume(D)}")
        sides = dd.sides
    else:
        raise DomainError(f"unknown domain kind {domain!r}")
    entry = FuchsianCatalogEntry(
        D=D, a=a, generators=gens,
        relations=tuple((parse_word(w), n) for w, n in raw["relations"]),
        tau=raw["tau"], sides=sides, domain=domain, published_M=raw["published_M"],
        covolume=_covolume(D),
        tabulated={q: tuple(parse_word(w) for w in ws) for q, ws in raw["tabulated"].items()},
    )
    for rel in entry.relation_values():
        if not rel.is_pm_identity():
            raise DomainError(f"relation fails in Gamma({D},1): {rel.label}")
    if not strictly_interior(entry.tau, entry.sides):
        raise DomainError("catalog center is not interior to F")
    return entry


# --- Mobius action and circles -------------------------------------------------

def mobius(g: GroupElement, z: complex) -> complex:
    if not z.imag > 0:
        raise DomainError("mobius expects a point of the upper half-plane")
    return mobius_f(g.floats, z)


def isometric_circle(g: GroupElement) -> IsometricCircle:
    """The circle |a21 z + a22| = 1: center -a22/a21, radius 1/|a21|."""
    _, _, a21, a22 = g.floats
    if g.matrix.e21.is_zero():
        raise NoCircle(f"{g.label} fixes infinity")
    return IsometricCircle(-a22 / a21, 1.0 / abs(a21), g.label)


def circle_image(g: GroupElement, c: IsometricCircle | Circle | Line) -> Circle | Line:
    if isinstance(c, IsometricCircle):
        c = c.as_circle()
    return _circle_image(g.floats, c)


# --- Membership and depth ------------------------------------------------------

def in_fundamental_domain(z: complex, F: FuchsianCatalogEntry,
                          tol: float = BOUNDARY_TOL) -> tuple[bool, int | None]:
    """(True, None) if z is in F; otherwise (False, index of first violated side)."""
    if not z.imag > 0:
        raise DomainError("membership test expects Im(z) > 0")
    k = first_violator(z, F.sides, tol)
    return k is None, k


def depth_of_point(z: complex, F: FuchsianCatalogEntry, rule: str = DEFAULT_RULE,
                   max_iter: int = 1000) -> int:
    return len(pra_reduce(z, F, max_iter=max_iter, rule=rule).path)


def depth(g: GroupElement, F: FuchsianCatalogEntry, probe: complex | None = None,
          rule: str = DEFAULT_RULE) -> int:
    """Number of reduction steps needed to bring g(probe) back into F."""
    p = F.tau if probe is None else probe
    return depth_of_point(g(p), F, rule)


class SkEntry(NamedTuple):
    element: GroupElement
    depth: int
    g_word: tuple[int, ...]  # indices into F.sides


class Sk(NamedTuple):
    entries: list[SkEntry]
    theta: int


_BALLS: dict[tuple, list[list[SkEntry]]] = {}


def _levels(F: FuchsianCatalogEntry, radius: int, rule: str) -> list[list[SkEntry]]:
    """Breadth-first levels of products of side elements, deduplicated mod sign."""
    cache_key = (F.D, F.domain, rule)
    levels = _BALLS.setdefault(cache_key, [])
    if not levels:
        ident = GroupElement.identity(F.a)
        levels.append([SkEntry(ident, 0, ())])
    seen = {e.element.key for lvl in levels for e in lvl}
    sides = F.sides
    while len(levels) <= radius:
        nxt = []
        for entry in levels[-1]:
            for k, side in enumerate(sides):
                y = entry.element * side.element
                if y.key in seen:
                    continue
                seen.add(y.key)
                _, path, _, ok = reduce_point(y(F.tau), sides, 1000, rule)
                d = len(path) if ok else -1
                nxt.append(SkEntry(y, d, entry.g_word + (k,)))
        levels.append(nxt)
    return levels[: radius + 1]


def enumerate_Sk(F: FuchsianCatalogEntry, kappa: int, cap: int = DEFAULT_KAPPA_CAP,
                 rule: str = DEFAULT_RULE) -> Sk:
    """All elements of depth <= kappa (mod +-Id) and their count theta_kappa.

    An element of depth k is a product of k side elements, so the ball of
    radius kappa in the side alphabet contains every candidate.  Entries are
    ordered by depth, then G-word length, then G-word.
    """
    if kappa < 0:
        raise DomainError("kappa must be nonnegative")
    if kappa > cap:
        raise CapError(f"kappa={kappa} exceeds the cap {cap}")
    entries = [e for lvl in _levels(F, kappa, rule) for e in lvl if 0 <= e.depth <= kappa]
    entries.sort(key=lambda e: (e.depth, len(e.g_word), e.g_word))
    return Sk(entries, len(entries))


def theta_table(F: FuchsianCatalogEntry, kappa_max: int, rule: str = DEFAULT_RULE) -> list[int]:
    return [enumerate_Sk(F, k, cap=max(kappa_max, DEFAULT_KAPPA_CAP), rule=rule).theta
            for k in range(kappa_max + 1)]


def fundamental_polygon_area(F: FuchsianCatalogEntry) -> float:
    """Gauss-Bonnet area of F when F is a Dirichlet domain."""
    if F.domain != "dirichlet":
        raise DomainError("area is only tracked for Dirichlet domains")
    dd = _dirichlet(F.D)
    return polygon_area(dd.vertices, _polygon_order(dd))


def _polygon_order(dd: DirichletDomain) -> list[Side]:
    # vertices[i] starts side i in polygon order; recover that order geometrically
    out = []
    n = len(dd.vertices)
    for i in range(n):
        a, b = dd.vertices[i], dd.vertices[(i + 1) % n]
        best = min(dd.sides, key=lambda s: s.boundary.distance(a) + s.boundary.distance(b))
        out.append(best)
    return out
