"""AWGN channel and Monte Carlo symbol error rates.

Noise convention: for an SNR of s dB the complex noise variance is
sigma^2 = P_av / 10^(s/10), split evenly between real and imaginary parts.

Trials for each SNR are split into fixed-size chunks, and chunk j of SNR
index i draws from its own Philox stream seeded by (seed, i, j).  Totals are
sums over chunks, so the result does not depend on how chunks are spread
over worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codebook import construct, qam
from .decode import decode_batch, ml_decode_batch, ml_ops
from .errors import DomainError, Unsupported
from .pra import DEFAULT_RULE

DECODERS = ("pra", "ml")
CONSTELLATIONS = ("nuf", "qam")


def snr_to_sigma(p_av: float, snr_db: float) -> float:
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return math.sqrt(p_av / 10.0 ** (snr_db / 10.0))


def awgn_sample(sigma: float, rng: np.random.Generator, size: int | None = None):
    """Circular complex Gaussian noise with E|w|^2 = sigma^2."""
    if sigma < 0:
        raise DomainError("sigma must be nonnegative")
    s = sigma / math.sqrt(2.0)
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) * s


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *key])))


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def qpsk_ser(snr_db: float) -> float:
    """Exact SER of 4-QAM with ML detection: 1 - (1 - Q(sqrt(SNR)))^2."""
    p = q_function(math.sqrt(10.0 ** (snr_db / 10.0)))
    return 1.0 - (1.0 - p) ** 2


@dataclass(frozen=True)
class ChannelConfig:
    snr_db_list: tuple[float, ...]
    trials_per_snr: int
    seed: int = 0
    decoder: str = "pra"
    constellation: str = "nuf"
    group: int = 6
    q: int = 4
    tau: complex | None = None
    rule: str = DEFAULT_RULE
    chunk_size: int = 32768
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.snr_db_list:
            raise DomainError("SNR list must not be empty")
        if self.trials_per_snr <= 0:
            raise DomainError("trials must be positive")
        if self.decoder not in DECODERS:
            raise DomainError(f"decoder must be one of {DECODERS}")
        if self.constellation not in CONSTELLATIONS:
            raise DomainError(f"constellation must be one of {CONSTELLATIONS}")
        if self.constellation == "qam" and self.decoder == "pra":
            raise Unsupported("point reduction needs a Fuchsian constellation")
        if self.chunk_size <= 0 or self.workers <= 0:
            raise DomainError("chunk_size and workers must be positive")
        object.__setattr__(self, "snr_db_list", tuple(float(s) for s in self.snr_db_list))


@dataclass(frozen=True)
class SimRecord:
    snr_db: float
    sigma: float
    trials: int
    symbol_errors: int
    ser: float
    mean_ops: float
    max_ops: int
    mean_iters: float
    decoder: str = ""
    constellation: str = ""
    tx_counts: tuple[int, ...] = field(default=(), repr=False, compare=False)


def _constellation(cfg: ChannelConfig):
    """(points, codebook or None)."""
    if cfg.constellation == "qam":
        r = int(round(math.log(cfg.q, 4)))
        if 4 ** r != cfg.q:
            raise DomainError("QAM size must be a power of 4")
        return qam(r).points, None
    code = construct(cfg.group, cfg.q, cfg.tau, cfg.rule)
    return code.points, code


@dataclass
class _Tally:
    errors: int = 0
    ops_sum: int = 0
    ops_max: int = 0
    iters_sum: int = 0
    counts: np.ndarray | None = None

    def merge(self, other: _Tally) -> None:
        self.errors += other.errors
        self.ops_sum += other.ops_sum
        self.ops_max = max(self.ops_max, other.ops_max)
        self.iters_sum += other.iters_sum
        self.counts = other.counts if self.counts is None else self.counts + other.counts


def _run_chunk(cfg: ChannelConfig, snr_idx: int, chunk_idx: int, n: int) -> _Tally:
    points, code = _constellation(cfg)
    sigma = snr_to_sigma(float(np.mean(np.abs(points) ** 2)), cfg.snr_db_list[snr_idx])
    rng = stream(cfg.seed, snr_idx, chunk_idx)
    tx = rng.integers(0, len(points), n)
    y = points[tx] + awgn_sample(sigma, rng, n)
    if cfg.decoder == "ml":
        rx = ml_decode_batch(y, points)
        ops = np.full(n, ml_ops(len(points)), dtype=np.int64)
        iters = np.zeros(n, dtype=np.int64)
    else:
        res = decode_batch(y, code)
        rx, ops, iters = res.indices, res.ops, res.iterations
    return _Tally(int(np.count_nonzero(rx != tx)), int(ops.sum()), int(ops.max()),
                  int(iters.sum()), np.bincount(tx, minlength=len(points)))


def _run_chunk_args(args) -> _Tally:
    return _run_chunk(*args)


def monte_carlo(cfg: ChannelConfig) -> list[SimRecord]:
    """SER and operation statistics per SNR point; deterministic in ``cfg.seed``."""
    points, _ = _constellation(cfg)
    pav = float(np.mean(np.abs(points) ** 2))
    jobs = []
    for i in range(len(cfg.snr_db_list)):
        left, j = cfg.trials_per_snr, 0
        while left > 0:
            n = min(cfg.chunk_size, left)
            jobs.append((cfg, i, j, n))
            left -= n
            j += 1
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            tallies = list(pool.map(_run_chunk_args, jobs))
    else:
        tallies = [_run_chunk_args(job) for job in jobs]
    per_snr = [_Tally() for _ in cfg.snr_db_list]
    for job, t in zip(jobs, tallies):
        per_snr[job[1]].merge(t)
    out = []
    for snr, t in zip(cfg.snr_db_list, per_snr):
        n = cfg.trials_per_snr
        out.append(SimRecord(
            snr_db=snr, sigma=snr_to_sigma(pav, snr), trials=n, symbol_errors=t.errors,
            ser=t.errors / n, mean_ops=t.ops_sum / n, max_ops=t.ops_max,
            mean_iters=t.iters_sum / n, decoder=cfg.decoder,
            constellation=f"{cfg.q}-{cfg.constellation.upper()}",
            tx_counts=tuple(int(c) for c in t.counts),
        ))
    return out


def snr_grid(spec: str | Sequence[float]) -> tuple[float, ...]:
    """Parse ``"0:2:20"`` (start:step:stop, inclusive) or ``"0,5,10"``."""
    if not isinstance(spec, str):
        return tuple(float(s) for s in spec)
    spec = spec.strip()
    if ":" in spec:
        parts = [float(p) for p in spec.split(":")]
        if len(parts) != 3 or parts[1] <= 0:
            raise DomainError(f"bad SNR range {spec!r}; expected start:step:stop")
        start, step, stop = parts
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + k * step, 12) for k in range(n))
    return tuple(float(s) for s in spec.split(",") if s.strip())
