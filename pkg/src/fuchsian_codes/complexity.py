"""Operation-count bounds for point reduction and their comparison with ML."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .decode import ml_ops

# Depth against code size for Gamma(6,1) codes, as published.
PUBLISHED_DEPTHS: dict[int, int] = {4: 1, 8: 1, 16: 2, 32: 3, 64: 3, 128: 4, 256: 5, 512: 5, 1024: 6}

# Published complexity reduction percentages for Gamma(6,1), M = 5, kappa0 = 1.
PUBLISHED_CRP: dict[int, float] = {4: 0.0, 8: 0.0, 16: 0.0, 64: 5.79, 256: 70.40, 512: 83.68, 1024: 91.08}

CRP_NOTE = ("published CRP values are not reproduced by the closed-form bound; "
            "both are listed, the formula column is authoritative")


def pra_bound(ell: int, M: int) -> int:
    """Worst-case operations of one decode: ell (5M + 14) + 5M + 7."""
    if ell < 0 or M < 1:
        raise ValueError("need ell >= 0 and M >= 1")
    return ell * (5 * M + 14) + 5 * M + 7


def depth_bound(size: int, kappa0: float = 1.0) -> float:
    return kappa0 * (math.log2(size + 2) - 2)


def rbar(size: int, M: int, kappa0: float = 1.0) -> float:
    """Operation bound with the depth replaced by its logarithmic bound."""
    return kappa0 * (5 * M + 14) * (math.log2(size + 2) - 2) + 5 * M + 7


def crp_raw(size: int, M: int, kappa0: float = 1.0) -> float:
    ml = ml_ops(size)
    return 100.0 * (ml - rbar(size, M, kappa0)) / ml


def crp(size: int, M: int, kappa0: float = 1.0) -> float:
    """Complexity reduction percentage; 0 when ML is cheaper."""
    return max(0.0, crp_raw(size, M, kappa0))


@dataclass(frozen=True)
class ComplexityRow:
    size: int
    ml_ops: int
    depth_bound: float
    rbar: float
    crp: float
    crp_raw: float
    crp_published: float | None
    depth_published: int | None
    depth_measured: int | None
    bound_measured: int | None


def complexity_table(sizes: Iterable[int], M: int = 5, kappa0: float = 1.0,
                     measured: Mapping[int, int] | None = None) -> list[ComplexityRow]:
    """One row per code size; ``measured`` maps size to an observed code depth."""
    rows = []
    for n in sizes:
        dm = None if measured is None else measured.get(n)
        rows.append(ComplexityRow(
            size=n, ml_ops=ml_ops(n), depth_bound=depth_bound(n, kappa0),
            rbar=rbar(n, M, kappa0), crp=crp(n, M, kappa0), crp_raw=crp_raw(n, M, kappa0),
            crp_published=PUBLISHED_CRP.get(n), depth_published=PUBLISHED_DEPTHS.get(n),
            depth_measured=dm, bound_measured=None if dm is None else pra_bound(dm, M),
        ))
    return rows


def measured_depth(theta: list[int], size: int) -> int:
    """Smallest kappa with theta_kappa >= size / 2 (codes come in +- pairs)."""
    need = (size + 1) // 2
    for k, th in enumerate(theta):
        if th >= need:
            return k
    raise ValueError(f"theta table too short for a code of size {size}")
