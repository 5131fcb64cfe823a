"""Decoding received points: point reduction with sign handling, and ML.

The point reduction decoder folds a received ``y`` (or ``-y`` when it lies in
the lower half-plane) back into F, accumulating the exact group element t
with ``t(y) = z0``.  The codeword is then the one whose element equals
``t^-1`` modulo sign.  By default the loop is capped at the code depth: a
point that needs more steps cannot come from the tile of any codeword.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .codebook import Codebook
from .domain import BOUNDARY_TOL
from .errors import DomainError
from .geometry import Circle
from .groups import GroupElement
from .pra import CHECK_OPS, FINAL_OPS, RULES, STEP_OPS, OpCounter, pra_reduce, reduce_point

__all__ = [
    "FAILURE", "DecodeResult", "BatchResult", "decode", "decode_batch",
    "ml_decode", "ml_decode_batch", "ml_ops", "pra_reduce",
]

FAILURE = -1


@dataclass(frozen=True)
class DecodeResult:
    index: int
    reduced_point: complex
    t: GroupElement
    sign_branch: int
    counter: OpCounter

    @property
    def ok(self) -> bool:
        return self.index != FAILURE

    @property
    def iterations(self) -> int:
        return self.counter.step3_count


class BatchResult(NamedTuple):
    indices: np.ndarray
    iterations: np.ndarray
    ops: np.ndarray


@functools.lru_cache(maxsize=64)
def _lookup(code: Codebook) -> dict[tuple[int, ...], int]:
    return {e.element.key: e.index for e in code.entries if e.sign > 0}


def _resolve(code: Codebook, t: GroupElement, sign_branch: int) -> int:
    plus = _lookup(code).get(t.inverse().key)
    if plus is None:
        return FAILURE
    return plus if sign_branch > 0 else plus + code.size // 2


def _cap(code: Codebook, max_iter: int | None) -> int:
    return code.depth if max_iter is None else max_iter


def decode(y: complex, code: Codebook, max_iter: int | None = None,
           fallback: bool = False, tol: float = BOUNDARY_TOL) -> DecodeResult:
    """Decode one received sample.

    ``max_iter`` defaults to the code depth.  Unmatched reductions return
    ``FAILURE`` unless ``fallback`` is set, in which case the nearest
    codeword is returned (its ML cost is added to the counter).
    """
    y = complex(y)
    sign_branch = 1 if y.imag >= 0 else -1
    z = y if sign_branch > 0 else -y
    if z.imag == 0:
        z = complex(z.real, np.finfo(float).tiny)
    sides = code.group.sides
    z0, path, checks, _ = reduce_point(z, sides, _cap(code, max_iter), code.rule,
                                       skip_last=True, tol=tol, final_scan=False)
    t = GroupElement.identity(code.group.a)
    for k in path:
        t = sides[k].element * t
    index = _resolve(code, t, sign_branch)
    counter = OpCounter(checks, len(path), FINAL_OPS)
    if index == FAILURE and fallback:
        index, extra = ml_decode(y, code.points)
        counter = OpCounter(checks, len(path), FINAL_OPS + extra)
    return DecodeResult(index, z0, t, sign_branch, counter)


def _side_arrays(sides):
    M = len(sides)
    circ = np.zeros(M, dtype=bool)
    c = np.zeros(M)
    r = np.ones(M)
    x0 = np.zeros(M)
    sgn = np.empty(M)
    coef = np.empty((M, 4))
    for k, s in enumerate(sides):
        if isinstance(s.boundary, Circle):
            circ[k] = True
            c[k] = s.boundary.center.real
            r[k] = s.boundary.radius
        else:
            x0[k] = s.boundary.point.real
        sgn[k] = 1.0 if s.inside else -1.0
        coef[k] = s.element.floats
    return circ, c, r, x0, sgn, coef


def _reduce_batch(z: np.ndarray, sides, cap: int, rule: str, tol: float):
    """Vectorized counterpart of :func:`reduce_point` with ``final_scan=False``."""
    if rule not in RULES:
        raise DomainError(f"unknown selection rule {rule!r}")
    M = len(sides)
    circ, c, r, x0, sgn, coef = _side_arrays(sides)
    n = len(z)
    z = z.astype(complex).copy()
    steps = np.zeros(n, dtype=np.int64)
    checks = np.zeros(n, dtype=np.int64)
    last = np.full(n, -1, dtype=np.int64)
    big = (M + 1) ** cap >= 2 ** 62
    codes = np.zeros(n, dtype=object if big else np.int64)
    active = np.ones(n, dtype=bool)
    while True:
        active &= steps < cap
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zz = z[idx]
        xr, yi = zz.real[:, None], zz.imag[:, None]
        euc = np.where(circ, np.abs(zz[:, None] - c) - r, xr - x0) * sgn
        viol = euc > tol
        lk = last[idx]
        has_skip = lk >= 0
        rows = np.arange(idx.size)
        lk0 = np.where(has_skip, lk, 0)
        other = viol.copy()
        other[rows[has_skip], lk[has_skip]] = False
        any_other = other.any(axis=1)
        if rule == "first":
            choice = np.argmax(other, axis=1)
            scanned = choice + 1 - (has_skip & (lk < choice))
            nchk = np.where(any_other, scanned, M - has_skip)
        else:
            hyp = np.where(circ, ((xr - c) ** 2 + yi * yi - r * r) / (2.0 * r * yi),
                           (xr - x0) / yi) * sgn
            choice = np.argmax(np.where(other, hyp, -np.inf), axis=1)
            nchk = M - has_skip.astype(np.int64)
        deferred = ~any_other & has_skip
        nchk = nchk + deferred
        again = deferred & viol[rows, lk0]
        choice = np.where(any_other, choice, np.where(again, lk0, -1))
        checks[idx] += nchk
        move = choice >= 0
        active[idx[~move]] = False
        mi, ch = idx[move], choice[move]
        a11, a12, a21, a22 = (coef[ch, j] for j in range(4))
        zm = z[mi]
        z[mi] = (a11 * zm + a12) / (a21 * zm + a22)
        steps[mi] += 1
        last[mi] = ch
        codes[mi] = codes[mi] * (M + 1) + (ch + 1)
    return z, codes, steps, checks


def _path_of(code_int: int, M: int) -> tuple[int, ...]:
    out = []
    while code_int:
        code_int, d = divmod(int(code_int), M + 1)
        out.append(d - 1)
    return tuple(reversed(out))


def decode_batch(ys: Sequence[complex] | np.ndarray, code: Codebook,
                 max_iter: int | None = None, tol: float = BOUNDARY_TOL) -> BatchResult:
    """Decode many samples at once; results match :func:`decode` sample by sample."""
    ys = np.asarray(ys, dtype=complex)
    lower = ys.imag < 0
    z = np.where(lower, -ys, ys)
    z = np.where(z.imag == 0, z.real + 1j * np.finfo(float).tiny, z)
    sides = code.group.sides
    M = len(sides)
    _, codes, steps, checks = _reduce_batch(z, sides, _cap(code, max_iter), code.rule, tol)
    lut = _lookup(code)
    half = code.size // 2
    uniq, inv = np.unique(codes, return_inverse=True)
    plus = np.empty(len(uniq), dtype=np.int64)
    for j, cd in enumerate(uniq):
        t = GroupElement.identity(code.group.a)
        for k in _path_of(cd, M):
            t = sides[k].element * t
        plus[j] = lut.get(t.inverse().key, FAILURE)
    idx = plus[np.ravel(inv)]
    idx = np.where((idx != FAILURE) & lower, idx + half, idx)
    ops = CHECK_OPS * checks + STEP_OPS * steps + FINAL_OPS
    return BatchResult(idx, steps, ops)


def ml_ops(size: int) -> int:
    """Operation count of an exhaustive nearest-point search: 5|C| - 1."""
    return 5 * size - 1


def ml_decode(y: complex, points) -> tuple[int, int]:
    """Nearest point (lowest index on ties) and the operation count 5|C| - 1."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise DomainError("empty constellation")
    d = np.abs(complex(y) - pts) ** 2
    return int(np.argmin(d)), ml_ops(len(pts))


def ml_decode_batch(ys, points, chunk: int = 65536) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    ys = np.asarray(ys, dtype=complex)
    out = np.empty(len(ys), dtype=np.int64)
    for s in range(0, len(ys), chunk):
        blk = ys[s:s + chunk, None]
        out[s:s + chunk] = np.argmin(np.abs(blk - pts) ** 2, axis=1)
    return out
