"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each."""

import csv
import math
import time

import numpy as np
import pytest

from conftest import TABULATED_POINTS
from fuchsian_codes.channel import ChannelConfig, monte_carlo, qpsk_ser, snr_grid
from fuchsian_codes.cli import run
from fuchsian_codes.codebook import bd2_min, choose_S, build_code, d2_min, delta_ml, qam, tabulated_code
from fuchsian_codes.complexity import PUBLISHED_CRP, complexity_table, pra_bound
from fuchsian_codes.decode import decode, ml_ops
from fuchsian_codes.exact import QuadHalfInt, mat_det
from fuchsian_codes.fuchsian import catalog
from fuchsian_codes.unitsgen import PUBLISHED_PHI, check_published_units, phi_p

SWEEP = snr_grid("0:2:20")


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def non_increasing_within_3_sigma(records):
    for a, b in zip(records, records[1:]):
        sd = math.sqrt(a.ser * (1 - a.ser) / a.trials + b.ser * (1 - b.ser) / b.trials)
        if b.ser > a.ser + 3 * sd:
            return False
    return True


@pytest.mark.acceptance(1, "catalog integrity")
def test_catalog_integrity():
    with Timer(1.0):
        catalog.cache_clear()
        for D in (6, 10, 15):
            F = catalog(D)
            one = QuadHalfInt.from_ints(1, 0, F.a)
            for g in F.generators:
                assert mat_det(g.matrix) == one
            for value in F.relation_values():
                assert value.is_pm_identity()
        rel6 = {str(w) for w, _ in catalog(6).relations}
        assert len(rel6) == 4


@pytest.mark.acceptance(2, "tabulated Gamma(6,1) codewords")
def test_tabulated_codewords(capsys):
    with Timer(1.0):
        for q in (4, 8, 16):
            code = tabulated_code(6, q)
            assert code.size == q
            for e in code.entries:
                assert abs(e.point - e.sign * TABULATED_POINTS[e.word]) < 1e-9
        g1inv = tabulated_code(6, 4).entries[1].point
        assert abs(g1inv - (-0.3315011 + 0.1531138j)) < 1e-7


@pytest.mark.acceptance(3, "noiseless round trip and depth pattern")
def test_noiseless_round_trip():
    with Timer(1.0):
        for D in (6, 10, 15):
            for q in (4, 8, 16):
                code = tabulated_code(D, q)
                for e in code.entries:
                    r = decode(e.point, code)
                    assert (r.index, r.sign_branch) == (e.index, e.sign)
                    assert r.iterations == e.depth
        assert [tabulated_code(6, q).depth for q in (4, 8, 16)] == [1, 1, 2]


@pytest.mark.acceptance(4, "operation count within pra_bound(2, 5) = 110")
def test_complexity_bound(acceptance_note):
    with Timer(30.0):
        recs = monte_carlo(ChannelConfig(SWEEP, 100_000, seed=2024, q=16))
    bound = pra_bound(2, 5)
    assert bound == 110
    assert all(r.trials >= 100_000 for r in recs)
    assert max(r.max_ops for r in recs) <= bound
    mean = sum(r.mean_ops for r in recs) / len(recs)
    acceptance_note(f"max {max(r.max_ops for r in recs)}, mean {mean:.2f} ops over 0-20 dB")


@pytest.mark.acceptance(5, "ML cost and CRP formula beside the published table")
def test_crp_table(capsys):
    with Timer(1.0):
        rows = {r.size: r for r in complexity_table([4, 8, 16, 64, 256, 512, 1024], M=5)}
        for n, r in rows.items():
            assert r.ml_ops == ml_ops(n) == 5 * n - 1
        assert rows[1024].rbar == pytest.approx(344.11, abs=0.005)
        assert rows[1024].crp == pytest.approx(93.28, abs=0.005)
        assert rows[1024].crp_published == PUBLISHED_CRP[1024] == 91.08
        assert run(["complexity"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("# ")
        table = list(csv.DictReader(out[1:]))
        last = table[-1]
        assert last["size"] == "1024" and last["crp_published"] == "91.08"
        assert float(last["crp"]) == pytest.approx(93.28, abs=0.005)


@pytest.mark.acceptance(6, "AWGN SER: zero at sigma 0, monotone, QPSK formula")
def test_awgn_statistics(acceptance_note):
    with Timer(120.0):
        cases = [("pra", "nuf"), ("ml", "nuf"), ("ml", "qam")]
        for dec, con in cases:
            (clean,) = monte_carlo(ChannelConfig((math.inf,), 10_000, decoder=dec, constellation=con))
            assert clean.symbol_errors == 0
            recs = monte_carlo(ChannelConfig(SWEEP, 100_000, seed=6, decoder=dec, constellation=con))
            assert non_increasing_within_3_sigma(recs), [r.ser for r in recs]
        qpsk = monte_carlo(ChannelConfig((6.0, 8.0, 10.0), 1_000_000, seed=6, decoder="ml",
                                         constellation="qam"))
        rel = [abs(r.ser - qpsk_ser(r.snr_db)) / qpsk_ser(r.snr_db) for r in qpsk]
        assert max(rel) < 0.10
    acceptance_note("QPSK relative error " + ", ".join(f"{x:.3f}" for x in rel))


@pytest.mark.acceptance(7, "unit generation tables")
def test_unit_tables():
    with Timer(5.0):
        for (p, m, k1, k2), cell in PUBLISHED_PHI.items():
            u = phi_p(p, m, k1, k2)
            assert u.coords() == cell and u.norm == 1
        assert len(PUBLISHED_PHI) == 9
        for p in (3, 7, 11):
            for m in range(1, 4):
                for k1 in range(4):
                    for k2 in range(4):
                        assert phi_p(p, m, k1, k2).norm == 1
        rows = {p: (pub, comp, norm, ok) for p, pub, comp, norm, ok in check_published_units()}
        assert sorted(p for p, r in rows.items() if not r[3]) == [23, 31]
        assert rows[23][1] == (24, 5) and rows[31][1] == (1520, 273)
        assert rows[23][2] != 1 and rows[31][2] != 1
        assert all(r[2] == 1 for p, r in rows.items() if p not in (23, 31))


@pytest.mark.acceptance(8, "metric properties")
def test_metric_properties():
    with Timer(1.0):
        F = catalog(6)
        codes = [tabulated_code(6, q) for q in (4, 8, 16)]
        codes += [build_code(F, None, choose_S(F, n)) for n in (2, 4, 8, 16)]
        for code in codes:
            assert bd2_min(code) <= d2_min(code) / 4
        assert delta_ml(qam(1)) == 2.0
        pts = tabulated_code(6, 4).points
        brute = min(abs(a - b) ** 2 for i, a in enumerate(pts) for b in pts[i + 1:])
        pav = sum(abs(z) ** 2 for z in pts) / len(pts)
        assert abs(delta_ml(pts) - brute / pav) < 1e-12
        assert abs(brute / pav - 1.2011) < 1e-3


@pytest.mark.acceptance(9, "deterministic sweeps")
def test_determinism(tmp_path):
    with Timer(120.0):
        args = ["sweep", "--q", "16", "--snr", "0:4:20", "--trials", "50000", "--seed", "99"]
        a, b, c = (tmp_path / f"{k}.csv" for k in "abc")
        assert run(args + ["--out", str(a)]) == 0
        assert run(args + ["--out", str(b)]) == 0
        assert run(args + ["--out", str(c), "--workers", "3"]) == 0
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()
        cfg = dict(snr_db_list=(0.0, 10.0), trials_per_snr=100_000, seed=5, q=16, chunk_size=8192)
        serial = monte_carlo(ChannelConfig(**cfg))
        parallel = monte_carlo(ChannelConfig(**cfg, workers=4))
        assert [(r.symbol_errors, r.max_ops, r.mean_ops) for r in serial] == \
            [(r.symbol_errors, r.max_ops, r.mean_ops) for r in parallel]
