"""Fuchsian codebooks, reference QAM constellations and design metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CenterError, DomainError, DuplicateError
from .domain import strictly_interior
from .fuchsian import FuchsianCatalogEntry, catalog, depth, enumerate_Sk
from .geometry import circle_image
from .groups import GroupElement, Word, format_word
from .pra import DEFAULT_RULE


class CodeEntry(NamedTuple):
    index: int
    sign: int
    element: GroupElement
    point: complex
    depth: int

    @property
    def word(self) -> str:
        return format_word(self.element.word)


@dataclass(frozen=True, eq=False)
class Codebook:
    """Points ``+g(tau)`` for g in S (indices 0..N-1) followed by their negatives.

    Decoding is tied to the selection ``rule`` the depths were computed with.
    """

    group: FuchsianCatalogEntry
    tau: complex
    entries: tuple[CodeEntry, ...]
    rule: str = DEFAULT_RULE

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def depth(self) -> int:
        return max(e.depth for e in self.entries)

    @property
    def points(self) -> np.ndarray:
        return np.array([e.point for e in self.entries], dtype=complex)

    @property
    def elements(self) -> list[GroupElement]:
        return [e.element for e in self.entries[: self.size // 2]]

    def index_of(self, sign: int, element: GroupElement) -> int | None:
        for e in self.entries:
            if e.sign == sign and e.element.same_up_to_sign(element):
                return e.index
        return None


def _as_element(F: FuchsianCatalogEntry, w) -> GroupElement:
    if isinstance(w, GroupElement):
        return w
    return F.element(w)


def build_code(group: FuchsianCatalogEntry | int, tau: complex | None,
               S: Iterable[GroupElement | Word | str], rule: str = DEFAULT_RULE) -> Codebook:
    """C = {+-g(tau) : g in S}."""
    F = catalog(group) if isinstance(group, int) else group
    tau = F.tau if tau is None else complex(tau)
    if not strictly_interior(tau, F.sides):
        raise CenterError(f"center {tau} is not strictly inside F")
    elems = [_as_element(F, w) for w in S]
    if not elems:
        raise DomainError("S must be non-empty")
    seen = set()
    for g in elems:
        if g.key in seen:
            raise DuplicateError(f"{g.label} repeats an element of S up to sign")
        seen.add(g.key)
    n = len(elems)
    plus, minus = [], []
    for i, g in enumerate(elems):
        z = g(tau)
        d = depth(g, F, probe=tau, rule=rule)
        plus.append(CodeEntry(i, 1, g, z, d))
        minus.append(CodeEntry(n + i, -1, g, -z, d))
    return Codebook(F, tau, tuple(plus + minus), rule)


def tabulated_code(D: int, q: int, rule: str = DEFAULT_RULE) -> Codebook:
    F = catalog(D)
    if q not in F.tabulated:
        raise DomainError(f"no tabulated code of size {q} for Gamma({D},1)")
    return build_code(F, F.tau, F.tabulated[q], rule)


def choose_S(group: FuchsianCatalogEntry | int, N: int, rule: str = DEFAULT_RULE,
             cap: int = 8) -> list[GroupElement]:
    """N elements of smallest depth; ties by G-word length, then G-word."""
    F = catalog(group) if isinstance(group, int) else group
    if N < 1:
        raise DomainError("N must be positive")
    for kappa in range(cap + 1):
        sk = enumerate_Sk(F, kappa, cap=cap, rule=rule)
        if sk.theta >= N:
            return [e.element for e in sk.entries[:N]]
    # enumerate_Sk raises CapError first; kept for type checkers
    raise AssertionError("unreachable")


def construct(D: int, q: int, tau: complex | None = None, rule: str = DEFAULT_RULE,
              tabulated: bool = True) -> Codebook:
    """The q-point code of Gamma(D,1): the tabulated set if there is one."""
    if q < 2 or q % 2:
        raise DomainError("q must be an even integer >= 2")
    F = catalog(D)
    if tabulated and q in F.tabulated and tau is None:
        return tabulated_code(D, q, rule)
    return build_code(F, tau, choose_S(F, q // 2, rule), rule)


@dataclass(frozen=True)
class QamConstellation:
    r: int
    points: np.ndarray


def qam(r: int) -> QamConstellation:
    """{+-a +-b i : a, b odd, 1 <= a, b <= 2^r - 1}, in row-major order."""
    if not 1 <= r <= 8:
        raise DomainError("qam needs 1 <= r <= 8")
    levels = np.arange(-(2 ** r) + 1, 2 ** r, 2)
    pts = np.array([complex(x, y) for y in levels[::-1] for x in levels])
    return QamConstellation(r, pts)


def _pts(points) -> np.ndarray:
    if isinstance(points, (Codebook, QamConstellation)):
        points = points.points
    return np.asarray(points, dtype=complex)


def p_av(points) -> float:
    z = _pts(points)
    return float(np.mean(z.real ** 2 + z.imag ** 2))


def d2_min(points) -> float:
    z = _pts(points)
    if len(z) < 2:
        raise DomainError("need at least two points")
    dz = z[:, None] - z[None, :]
    diff = dz.real ** 2 + dz.imag ** 2
    diff[np.diag_indices(len(z))] = np.inf
    return float(diff.min())


def border_distances(code: Codebook) -> np.ndarray:
    """Per codeword: distance to the nearest image side circle or the real axis."""
    out = []
    for e in code.entries:
        zp = e.point if e.sign > 0 else -e.point
        best = abs(zp.imag)
        for side in code.group.sides:
            shape = circle_image(e.element.floats, side.boundary)
            best = min(best, shape.distance(zp))
        out.append(best)
    return np.array(out)


def bd2_min(code: Codebook) -> float:
    return float(np.min(border_distances(code)) ** 2)


def delta_ml(points) -> float:
    return d2_min(points) / p_av(points)


def delta_pra(code: Codebook) -> float:
    return bd2_min(code) / p_av(code)
