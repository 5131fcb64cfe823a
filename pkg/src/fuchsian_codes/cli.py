"""Command-line interface: construct, decode, sweep, complexity, units, catalog."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import channel, codebook, complexity, fuchsian, unitsgen
from .decode import FAILURE, decode, ml_decode
from .errors import DomainError, FuchsianError, UnsupportedGroup
from .exact import QuadMatrix
from .groups import format_word
from .pra import DEFAULT_RULE, RULES

DEFAULTS = {
    "group": 6, "q": 4, "tau": None, "decoder": "pra", "constellation": "nuf",
    "rule": DEFAULT_RULE, "snr": "0:2:20", "trials": 100000, "seed": 0,
    "workers": 1, "chunk_size": 32768,
}
CONFIG_KEYS = set(DEFAULTS) | {"snr_start", "snr_stop", "snr_step", "out"}


class UsageError(Exception):
    """Bad arguments or configuration (exit status 2)."""


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x + 0.0:.9g}"  # no negative zero
    return str(x)


def parse_tau(text: str | None) -> complex | None:
    if text is None or str(text).strip() == "":
        return None
    s = str(text).strip().replace(" ", "")
    try:
        if "," in s:
            re_, im = s.split(",")
            return complex(float(re_), float(im))
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot parse tau {text!r}") from exc


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


@dataclass
class RunConfig:
    group: int
    q: int
    tau: complex | None
    decoder: str
    constellation: str
    rule: str
    snr: tuple[float, ...]
    trials: int
    seed: int
    workers: int
    chunk_size: int
    out: str | None


def resolve(args: argparse.Namespace) -> RunConfig:
    """Merge flags over the config file over built-in defaults."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}

    def pick(key, conv=str):
        v = getattr(args, key, None)
        if v is None:
            v = cfg.get(key)
        if v is None:
            v = DEFAULTS.get(key)
        if v is None:
            return None
        try:
            return conv(v)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad value for {key}: {v!r}") from exc

    snr = getattr(args, "snr", None)
    if snr is None and "snr" in cfg:
        snr = cfg["snr"]
    if snr is None and {"snr_start", "snr_stop", "snr_step"} <= cfg.keys():
        snr = f"{cfg['snr_start']}:{cfg['snr_step']}:{cfg['snr_stop']}"
    try:
        grid = channel.snr_grid(snr if snr is not None else DEFAULTS["snr"])
    except (FuchsianError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    rc = RunConfig(
        group=pick("group", int), q=pick("q", int), tau=parse_tau(pick("tau")),
        decoder=pick("decoder").lower(), constellation=pick("constellation").lower(),
        rule=pick("rule"), snr=grid, trials=pick("trials", int), seed=pick("seed", int),
        workers=pick("workers", int), chunk_size=pick("chunk_size", int),
        out=getattr(args, "out", None) or cfg.get("out"),
    )
    if rc.group not in fuchsian.SUPPORTED:
        raise UsageError(f"group must be one of {fuchsian.SUPPORTED}")
    if rc.q < 2 or rc.q % 2:
        raise UsageError("q must be an even integer >= 2")
    if rc.rule not in RULES:
        raise UsageError(f"rule must be one of {RULES}")
    if rc.tau is not None and not rc.tau.imag > 0:
        raise UsageError("tau must lie in the upper half-plane")
    return rc


@contextmanager
def output(path: str | None) -> Iterator[io.TextIOBase]:
    if path in (None, "-"):
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        yield fh


def _writer(fh) -> csv.writer:
    return csv.writer(fh, lineterminator="\n")


# --- subcommands ---------------------------------------------------------------

def _build_code(rc: RunConfig) -> codebook.Codebook:
    try:
        return codebook.construct(rc.group, rc.q, rc.tau, rc.rule)
    except FuchsianError as exc:
        if isinstance(exc, (UnsupportedGroup, ValueError)):
            raise UsageError(str(exc)) from exc
        raise


def cmd_construct(args, rc: RunConfig) -> None:
    code = _build_code(rc)
    with output(rc.out) as fh:
        w = _writer(fh)
        w.writerow(["index", "sign", "word", "re", "im", "depth"])
        for e in code.entries:
            w.writerow([e.index, e.sign, e.word, fmt(e.point.real), fmt(e.point.imag), e.depth])


def _read_samples(path: str) -> list[complex]:
    try:
        fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    out = []
    with fh:
        for n, row in enumerate(csv.reader(fh), 1):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                out.append(complex(float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if n == 1:
                    continue  # header
                raise UsageError(f"{path}:{n}: expected 're,im'") from None
    return out


def cmd_decode(args, rc: RunConfig) -> None:
    code = _build_code(rc)
    ys = _read_samples(args.input)
    with output(rc.out) as fh:
        w = _writer(fh)
        w.writerow(["index", "sign", "word", "iterations", "total_ops"])
        for y in ys:
            if rc.decoder == "ml":
                idx, ops = ml_decode(y, code.points)
                iters = 0
            else:
                r = decode(y, code, fallback=args.fallback)
                idx, ops, iters = r.index, r.counter.total_ops, r.iterations
            if idx == FAILURE:
                w.writerow(["FAILURE", "", "", iters, ops])
            else:
                e = code.entries[idx]
                w.writerow([idx, e.sign, e.word, iters, ops])


SWEEP_COLUMNS = ["snr_db", "sigma", "trials", "errors", "ser", "mean_ops", "max_ops",
                 "mean_iters", "decoder", "constellation"]


def cmd_sweep(args, rc: RunConfig) -> None:
    try:
        cfg = channel.ChannelConfig(
            snr_db_list=rc.snr, trials_per_snr=rc.trials, seed=rc.seed, decoder=rc.decoder,
            constellation=rc.constellation, group=rc.group, q=rc.q, tau=rc.tau, rule=rc.rule,
            chunk_size=rc.chunk_size, workers=rc.workers,
        )
    except FuchsianError as exc:
        raise UsageError(str(exc)) from exc
    records = channel.monte_carlo(cfg)
    with output(rc.out) as fh:
        w = _writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for r in records:
            w.writerow([fmt(r.snr_db), fmt(r.sigma), r.trials, r.symbol_errors, fmt(r.ser),
                        fmt(r.mean_ops), r.max_ops, fmt(r.mean_iters), r.decoder, r.constellation])


COMPLEXITY_COLUMNS = ["size", "ml_ops", "depth_bound", "rbar", "crp", "crp_raw",
                      "crp_published", "depth_published", "depth_measured", "bound_measured"]


def cmd_complexity(args, rc: RunConfig) -> None:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --sizes {args.sizes!r}") from exc
    F = fuchsian.catalog(rc.group)
    M = args.M if args.M is not None else F.M
    measured = None
    if args.measure:
        kmax = 0
        theta = fuchsian.theta_table(F, 0, rc.rule)
        while theta[-1] < max(sizes) // 2:
            kmax += 1
            theta = fuchsian.theta_table(F, kmax, rc.rule)
        measured = {n: complexity.measured_depth(theta, n) for n in sizes}
    rows = complexity.complexity_table(sizes, M, args.kappa0, measured)
    with output(rc.out) as fh:
        fh.write(f"# Gamma({rc.group},1) M={M} kappa0={fmt(args.kappa0)}; {complexity.CRP_NOTE}\n")
        w = _writer(fh)
        w.writerow(COMPLEXITY_COLUMNS)
        for r in rows:
            w.writerow([r.size, r.ml_ops, fmt(r.depth_bound), fmt(r.rbar), fmt(r.crp),
                        fmt(r.crp_raw), fmt(r.crp_published), fmt(r.depth_published),
                        fmt(r.depth_measured), fmt(r.bound_measured)])


def _matrix_rows(A: QuadMatrix) -> list[str]:
    return [f"[{A.e11}, {A.e12}]", f"[{A.e21}, {A.e22}]"]


def cmd_units(args, rc: RunConfig) -> None:
    with output(rc.out) as fh:
        if args.units_cmd == "fundamental-unit":
            x, y = unitsgen.fundamental_unit(args.p)
            fh.write(f"p={args.p} eps={x}+{y}*sqrt({args.p}) norm={unitsgen.pell_norm(x, y, args.p)}\n")
            pub = unitsgen.PUBLISHED_UNITS.get(args.p)
            if pub is not None and pub != (x, y):
                fh.write(f"published {pub[0]}+{pub[1]}*sqrt({args.p}) has norm "
                         f"{unitsgen.pell_norm(*pub, args.p)}: table value rejected\n")
        elif args.units_cmd == "table":
            w = _writer(fh)
            w.writerow(["p", "published_x", "published_y", "published_norm", "x", "y", "agree"])
            for p, pub, comp, n, ok in unitsgen.check_published_units():
                w.writerow([p, pub[0], pub[1], n, comp[0], comp[1], int(ok)])
        elif args.units_cmd == "phi":
            u = unitsgen.phi_p(args.p, args.m, args.k1, args.k2)
            A = unitsgen.tuple_to_matrix(args.p, -1, u)
            fh.write(f"tuple=({u.x},{u.y},{u.z},{u.t}) norm={u.norm}\n")
            fh.write("matrix=" + " ".join(_matrix_rows(A)) + "\n")
            fh.write(f"in_gamma_2p={int(unitsgen.in_gamma_2p(A, args.p))}\n")
        elif args.units_cmd == "embeds":
            fh.write(f"{int(unitsgen.embeds(args.qprime, args.p1, args.p2))}\n")
        elif args.units_cmd == "psi":
            A = unitsgen.psi_q(args.qprime, tuple(args.unit), tuple(args.pure), args.m,
                               args.algebra[0], args.algebra[1])
            fh.write("matrix=" + " ".join(_matrix_rows(A)) + "\n")


def catalog_json(F: fuchsian.FuchsianCatalogEntry) -> dict:
    def halves(A: QuadMatrix):
        return [[e.u, e.v] for e in A.entries()]

    sides = []
    for s in F.sides:
        b = s.boundary
        shape = ({"kind": "circle", "center": b.center.real, "radius": b.radius}
                 if isinstance(b, fuchsian.Circle) else {"kind": "line", "x": b.point.real})
        sides.append({"element": s.label, "matrix_halves": halves(s.element.matrix),
                      "inside": s.inside, **shape})
    return {
        "D": F.D, "a": F.a, "domain": F.domain, "tau": [F.tau.real, F.tau.imag],
        "M": F.M, "published_M": F.published_M, "covolume": F.covolume,
        "generators": [{"name": f"g{i + 1}", "matrix_halves": halves(g.matrix),
                        "matrix": list(g.floats)} for i, g in enumerate(F.generators)],
        "relations": [{"word": format_word(w), "exponent": n} for w, n in F.relations],
        "sides": sides,
        "codes": {str(q): [format_word(w) for w in ws] for q, ws in sorted(F.tabulated.items())},
    }


def cmd_catalog(args, rc: RunConfig) -> None:
    F = fuchsian.catalog(rc.group, args.domain)
    with output(rc.out) as fh:
        json.dump(catalog_json(F), fh, indent=2)
        fh.write("\n")


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--config", help="flat key = value config file; flags win")

    code = argparse.ArgumentParser(add_help=False)
    code.add_argument("--group", type=int, help="D in {6, 10, 15} (default 6)")
    code.add_argument("--q", type=int, help="code size, even (default 4)")
    code.add_argument("--tau", help="code center, e.g. 0.5i or 0,0.5 (default per group)")
    code.add_argument("--rule", choices=RULES, help="side selection rule (default deepest)")

    p = argparse.ArgumentParser(prog="fuchsian-codes", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    sub.add_parser("construct", parents=[common, code], help="write a codebook as CSV")

    d = sub.add_parser("decode", parents=[common, code], help="decode samples read as re,im CSV")
    d.add_argument("input", help="CSV file of re,im rows, or - for stdin")
    d.add_argument("--decoder", choices=channel.DECODERS)
    d.add_argument("--fallback", action="store_true",
                   help="return the nearest codeword when reduction finds none")

    s = sub.add_parser("sweep", parents=[common, code],
                       help="Monte Carlo SER sweep; SNR = P_av / sigma^2 with sigma^2 "
                            "the total complex noise variance")
    s.add_argument("--decoder", choices=channel.DECODERS)
    s.add_argument("--constellation", choices=channel.CONSTELLATIONS)
    s.add_argument("--snr", help="start:step:stop or comma list, in dB (default 0:2:20)")
    s.add_argument("--trials", type=int, help="trials per SNR (default 100000)")
    s.add_argument("--workers", type=int, help="worker processes (default 1)")
    s.add_argument("--chunk-size", dest="chunk_size", type=int,
                   help="trials per random stream (default 32768); changes the draws")

    c = sub.add_parser("complexity", parents=[common, code], help="bound and CRP table")
    c.add_argument("--sizes", default="4,8,16,64,256,512,1024")
    c.add_argument("--kappa0", type=float, default=1.0)
    c.add_argument("--M", type=int, help="number of sides (default: the group's)")
    c.add_argument("--measure", action="store_true",
                   help="add the depth of the smallest-depth code of each size")

    u = sub.add_parser("units", parents=[common], help="unit generation without generators")
    us = u.add_subparsers(dest="units_cmd", required=True)
    fu = us.add_parser("fundamental-unit")
    fu.add_argument("p", type=int)
    us.add_parser("table", help="recompute the published fundamental units")
    ph = us.add_parser("phi")
    for name in ("p", "m", "k1", "k2"):
        ph.add_argument(name, type=int)
    em = us.add_parser("embeds")
    em.add_argument("qprime", metavar="q", type=int)
    for name in ("p1", "p2"):
        em.add_argument(name, type=int)
    ps = us.add_parser("psi")
    ps.add_argument("--q", dest="qprime", type=int, required=True)
    ps.add_argument("--unit", type=int, nargs=2, required=True, metavar=("X", "Y"))
    ps.add_argument("--pure", type=int, nargs=3, required=True, metavar=("X", "Y", "Z"))
    ps.add_argument("--m", type=int, required=True)
    ps.add_argument("--algebra", type=int, nargs=2, default=(3, -1), metavar=("A", "B"))

    k = sub.add_parser("catalog", parents=[common], help="dump a group as JSON")
    k.add_argument("--group", type=int)
    k.add_argument("--domain", choices=("circles", "dirichlet"))
    return p


COMMANDS = {
    "construct": cmd_construct, "decode": cmd_decode, "sweep": cmd_sweep,
    "complexity": cmd_complexity, "units": cmd_units, "catalog": cmd_catalog,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = resolve(args)
        COMMANDS[args.cmd](args, rc)
    except (UsageError, DomainError, UnsupportedGroup) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (FuchsianError, OSError) as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
