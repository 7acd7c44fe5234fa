import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import l1, reference_encode, z_reference, z_unit_gap_expectation
from spacefill import (
    build_cell,
    dimred_profile,
    edge_tally,
    loglog_slope,
    make_serpentine_path,
    run_histogram,
    z_decode,
    z_encode,
)
from spacefill.analysis import DimredSeries, z_encode_many
from spacefill.errors import ArgumentError, FitError, SizeError


def brute_tally(cell, nodes, closing=False):
    pts = [reference_encode(u, cell.path.nodes, cell.tables.entry, cell.rotation, cell.side)
           for u in range(nodes + (1 if closing else 0))]
    counts = [0] * cell.rank
    for a, b in zip(pts, pts[1:]):
        assert l1(a, b) == 1
        counts[next(j for j in range(cell.rank) if a[j] != b[j])] += 1
    return tuple(counts)


class TestEdgeTally:
    def test_peano_plain(self, peano):
        assert sorted(edge_tally(peano, 2).counts) == [20, 60]

    def test_peano_offset_precession(self, bundled):
        assert edge_tally(bundled["peano2-precess1"], 2).counts == (40, 40)

    def test_hilbert(self, hilbert):
        assert sorted(edge_tally(hilbert, 2).counts) == [7, 8]
        assert edge_tally(hilbert, 2, closing_edge=True).counts == (8, 8)

    def test_against_brute_force(self, any_cell):
        d, s = any_cell.rank, any_cell.side
        for m in (1, 2):
            if s ** (d * m) > 3000:
                break
            assert edge_tally(any_cell, m).counts == brute_tally(any_cell, s ** (d * m))
            assert edge_tally(any_cell, m, True).counts == brute_tally(any_cell, s ** (d * m), True)

    def test_conservation(self, any_cell):
        d, s = any_cell.rank, any_cell.side
        m = 1
        while s ** (d * (m + 1)) <= 5000:
            m += 1
        t = edge_tally(any_cell, m)
        assert t.total == s ** (d * m) - 1
        assert edge_tally(any_cell, m, True).total == s ** (d * m)

    def test_csv(self, hilbert):
        assert edge_tally(hilbert, 2).to_csv().splitlines() == [
            "nodes,axis,count,percent", "16,0,7,43.8", "16,1,8,50.0"]

    def test_budget(self, hilbert, monkeypatch):
        monkeypatch.setenv("SFC_NODE_BUDGET", "100")
        with pytest.raises(SizeError):
            edge_tally(hilbert, 4)


class TestRunHistogram:
    def test_plain_peano(self, peano):
        runs = run_histogram(peano, 2)
        lengths = sorted([runs.lengths(0), runs.lengths(1)])
        assert lengths == [[1], [2, 5]]

    def test_precessing_peano(self, bundled):
        runs = run_histogram(bundled["peano2-precess"], 2)
        assert runs.lengths(0) == [1, 2, 3]
        assert runs.lengths(1) == [1, 2, 3]

    def test_hilbert_cell(self, hilbert):
        runs = run_histogram(hilbert, 1)
        assert max(max(r) for r in runs.runs if r) <= 2

    def test_edge_conservation(self, any_cell):
        runs = run_histogram(any_cell, 1)
        assert runs.total_edges == any_cell.size - 1

    def test_csv(self, peano):
        lines = run_histogram(peano, 2).to_csv().splitlines()
        assert lines[0] == "axis,length,count"
        assert sum(int(l.split(",")[1]) * int(l.split(",")[2]) for l in lines[1:]) == 80


class TestZCurve:
    def test_value(self):
        assert z_encode(13, 2) == (3, 2)
        assert z_encode(0, 5) == (0,) * 5

    @given(u=st.integers(0, 2**40), d=st.sampled_from([2, 3, 4, 6, 9]))
    @settings(max_examples=300, deadline=None)
    def test_against_string_reference(self, u, d):
        bits = -(-max(u.bit_length(), 1) // d)
        assert z_encode(u, d) == z_reference(u, d, bits)
        assert z_decode(z_encode(u, d), d) == u

    def test_batch(self):
        us = np.arange(5000)
        for d in (2, 3, 9):
            assert [tuple(p) for p in z_encode_many(us, d).tolist()] == [z_encode(int(u), d) for u in us]

    def test_errors(self):
        with pytest.raises(ArgumentError):
            z_encode(1, 1)
        with pytest.raises(ArgumentError):
            z_decode((1, -1))


class TestDimred:
    def test_unit_gap_is_one(self, any_cell):
        series = dimred_profile(any_cell, gaps=range(1, 4), samples=512)
        assert series.means[0] == 1.0
        assert all(m >= 1.0 for m in series.means)

    def test_deterministic_and_order_independent(self, hilbert):
        a = dimred_profile(hilbert, gaps=range(1, 21), samples=256, seed=11)
        b = dimred_profile(hilbert, gaps=range(20, 0, -1), samples=256, seed=11)
        assert dict(zip(a.gaps, a.means)) == dict(zip(b.gaps, b.means))
        c = dimred_profile(hilbert, gaps=[7], samples=256, seed=11)
        assert c.means[0] == dict(zip(a.gaps, a.means))[7]

    def test_z_matches_exact_expectation(self):
        for d in (2, 3, 4):
            series = dimred_profile(rank=d, gaps=[1], samples=1 << 16)
            assert abs(series.means[0] - z_unit_gap_expectation(d)) < 0.02

    def test_z_two_dimensional(self):
        assert dimred_profile(rank=2, gaps=[1]).means[0] > 1.6

    def test_brute_force_mean(self, peano):
        # domain 3**4 with exhaustive comparison of every drawn pair
        series = dimred_profile(peano, gaps=[5], samples=40, domain_levels=2, seed=3)
        from spacefill.analysis import gap_generator
        v1 = gap_generator(3, 5).integers(0, 81 - 5, size=40, dtype=np.int64)
        ref = lambda u: reference_encode(int(u), peano.path.nodes, peano.tables.entry, peano.rotation, 3)
        expected = np.mean([math.dist(ref(v + 5), ref(v)) for v in v1])
        assert series.means[0] == pytest.approx(expected, rel=1e-12)

    def test_domain_too_small(self, hilbert):
        with pytest.raises(ArgumentError):
            dimred_profile(hilbert, gaps=range(1, 101), samples=4096, domain_levels=3)

    def test_csv(self, hilbert):
        series = dimred_profile(hilbert, gaps=range(1, 3), samples=64, seed=5)
        lines = series.to_csv().splitlines()
        assert lines[0] == "curve,d,s,variant,gap,mean_distance,samples,seed"
        assert lines[1] == "hilbert,2,2,adj,1,1,64,5"


class TestSlope:
    def _series(self, means):
        gaps = tuple(range(1, len(means) + 1))
        return DimredSeries("x", 2, 2, "x", 0, 0, gaps, tuple(means), (1,) * len(gaps))

    def test_identity(self):
        assert loglog_slope(self._series([float(g) for g in range(1, 101)])) == pytest.approx(1.0, abs=1e-9)

    def test_square_root(self):
        assert loglog_slope(self._series([g**0.5 for g in range(1, 51)])) == pytest.approx(0.5, abs=1e-9)

    def test_degenerate(self):
        with pytest.raises(FitError):
            loglog_slope(self._series([1.0] * 5))
        with pytest.raises(FitError):
            loglog_slope(self._series([0.0] * 20))

    def test_hilbert_band(self, hilbert):
        assert 0.45 <= loglog_slope(dimred_profile(hilbert)) <= 0.60


def test_precession_tallies_are_permutations():
    for m in (1, 2):
        a = build_cell(make_serpentine_path(3, 3), "precess")
        b = build_cell(make_serpentine_path(3, 3), "precess1")
        assert sorted(edge_tally(a, m).counts) == sorted(edge_tally(b, m).counts)


def test_hilbert3_asymptotic_balance():
    cell = build_cell(make_serpentine_path(3, 2))
    t = edge_tally(cell, 5)
    shares = [100 * c / t.nodes for c in t.counts]
    assert max(shares) - min(shares) < 0.2
