import numpy as np
import pytest

from delayed_oco import (
    DelaySchedule,
    DelayTracker,
    FixedDelay,
    GeometricAlternatingDelay,
    HeavyTailDelay,
    TraceDelay,
    UniformDelay,
    arrivals_at,
    build_schedule,
    decreasing_burst_witness,
    load_schedule,
    missing_at,
    observed_at,
    online_perceived_dmax,
    realized_schedule,
    save_schedule,
    stats,
    truncate,
    unit_delay_witness,
)
from delayed_oco.errors import (
    ArgumentError,
    ConfigurationError,
    DataError,
    ParseError,
    SequencingError,
)


def random_regime(rng, trial):
    kind = trial % 5
    if kind == 0:
        return UniformDelay(0, int(rng.integers(0, 10)), seed=trial)
    if kind == 1:
        return FixedDelay(int(rng.integers(0, 8)), seed=trial)
    if kind == 2:
        return HeavyTailDelay(UniformDelay(0, 5), 0.2, seed=trial)
    if kind == 3:
        return GeometricAlternatingDelay(0.3, 7, UniformDelay(0, 5), seed=trial)
    return TraceDelay(tuple(int(v) for v in rng.integers(0, 6, size=trial % 37 + 1)), seed=trial)


def random_schedule(rng, trial, T=None):
    regime = random_regime(rng, trial)
    if isinstance(regime, TraceDelay):
        T = len(regime.delays)
    elif T is None:
        T = int(rng.integers(1, 60))
    return realized_schedule(regime, T)


class TestBuildSchedule:
    def test_fixed_zero(self):
        s = build_schedule(FixedDelay(0), 5)
        assert s.delays == (0, 0, 0, 0, 0)

    def test_trace_passthrough(self):
        s = build_schedule(TraceDelay((1, 1, 1)), 3)
        assert s.delays == (1, 1, 1)  # truncation is a separate pass

    def test_uniform_seeded_mean(self):
        s = build_schedule(UniformDelay(0, 5, seed=7), 10_000)
        mean = float(np.mean(s.delays))
        assert 2.3 <= mean <= 2.7

    def test_same_seed_same_schedule(self):
        a = build_schedule(HeavyTailDelay(UniformDelay(0, 5), 0.1, seed=3), 500)
        b = build_schedule(HeavyTailDelay(UniformDelay(0, 5), 0.1, seed=3), 500)
        assert a == b

    def test_invalid_parameters_name_field(self):
        with pytest.raises(ConfigurationError, match="lo"):
            UniformDelay(3, 1)
        with pytest.raises(ConfigurationError, match="p"):
            HeavyTailDelay(UniformDelay(0, 5), 1.5)
        with pytest.raises(ConfigurationError, match="d"):
            FixedDelay(-1)
        with pytest.raises(ConfigurationError, match="period"):
            GeometricAlternatingDelay(0.5, 0, UniformDelay(0, 5))

    def test_heavy_tail_extremes(self):
        all_heavy = build_schedule(HeavyTailDelay(UniformDelay(0, 5), 1.0, seed=1), 20)
        assert all_heavy.delays == tuple(20 - t for t in range(1, 21))
        none_heavy = build_schedule(HeavyTailDelay(UniformDelay(0, 5), 0.0, seed=1), 200)
        assert all(0 <= d <= 5 for d in none_heavy.delays)

    def test_geometric_alternating_phases(self):
        s = build_schedule(
            GeometricAlternatingDelay(1.0, 30, FixedDelay(4), seed=0), 120
        )
        # success probability 1 makes the geometric phase all zeros
        assert set(s.delays[0:30]) == {0}
        assert set(s.delays[30:60]) == {4}
        assert set(s.delays[60:90]) == {0}


class TestTruncate:
    def test_last_entry_clamped(self):
        s = truncate(DelaySchedule(3, (1, 1, 1)))
        assert s.delays == (1, 1, 0)

    def test_feasible_unchanged(self):
        s = truncate(DelaySchedule(5, (4, 3, 2, 1, 0)))
        assert s.delays == (4, 3, 2, 1, 0)

    def test_cap_at_horizon(self):
        s = truncate(DelaySchedule(4, (100, 100, 100, 100)))
        assert s.delays == (3, 2, 1, 0)

    def test_idempotent(self):
        rng = np.random.default_rng(0)
        for trial in range(50):
            s = random_schedule(rng, trial)
            assert truncate(s) == s


class TestArrivalsAndMissing:
    def test_arrivals_examples(self):
        s = truncate(DelaySchedule(3, (1, 1, 1)))
        assert arrivals_at(s, 1) == frozenset()
        assert arrivals_at(s, 2) == frozenset({1})

    def test_no_delay_arrives_same_round(self):
        s = truncate(DelaySchedule(4, (0, 0, 0, 0)))
        for t in range(1, 5):
            assert arrivals_at(s, t) == frozenset({t})
            assert missing_at(s, t) == frozenset()

    def test_missing_examples(self):
        s = truncate(DelaySchedule(3, (1, 1, 1)))
        assert missing_at(s, 1) == frozenset()
        assert missing_at(s, 2) == frozenset({1})

    def test_round_out_of_range(self):
        s = truncate(DelaySchedule(3, (0, 0, 0)))
        with pytest.raises(ArgumentError):
            arrivals_at(s, 0)
        with pytest.raises(ArgumentError):
            arrivals_at(s, 4)
        with pytest.raises(ArgumentError):
            missing_at(s, 5)

    def test_arrivals_require_truncated(self):
        with pytest.raises(ArgumentError):
            arrivals_at(DelaySchedule(3, (1, 1, 1)), 2)

    def test_arrivals_partition_horizon(self):
        rng = np.random.default_rng(2)
        for trial in range(50):
            s = random_schedule(rng, trial)
            seen = []
            for t in range(1, s.horizon + 1):
                seen.extend(arrivals_at(s, t))
            assert sorted(seen) == list(range(1, s.horizon + 1))


class TestStats:
    def test_small_example(self):
        s = truncate(DelaySchedule(3, (1, 1, 1)))
        st = stats(s)
        assert (st.sigma_max, st.d_max, st.d_tot) == (1, 1, 2)

    def test_burst_witness(self):
        s = decreasing_burst_witness(10, 20)
        st = stats(s)
        assert st.sigma_max == 9
        assert st.d_tot == 45
        assert st.sigma_max >= np.sqrt(1.5 * st.d_tot)

    def test_unit_witness(self):
        s = unit_delay_witness(100)
        st = stats(s)
        assert st.sigma_max == 1
        assert st.d_tot == 99  # truncation zeroes only the last round

    def test_perceived_monotone_ends_at_dmax(self):
        rng = np.random.default_rng(3)
        for trial in range(50):
            s = random_schedule(rng, trial)
            st = stats(s)
            assert all(
                a <= b for a, b in zip(st.perceived_dmax, st.perceived_dmax[1:])
            )
            assert st.perceived_dmax[-1] == st.d_max


class TestBookkeepingInvariants:
    def test_counting_identities(self):
        rng = np.random.default_rng(4)
        for trial in range(200):
            s = random_schedule(rng, trial)
            T = s.horizon
            st = stats(s)
            total_missing = 0
            prev_missing = frozenset()
            for t in range(1, T + 2):
                o_t = observed_at(s, t)
                m_t = missing_at(s, t)
                assert o_t & m_t == frozenset()
                assert len(o_t) + len(m_t) == t - 1
                assert m_t <= prev_missing | {t - 1}
                total_missing += len(m_t)
                prev_missing = m_t
            assert total_missing == st.d_tot

    def test_sigma_max_bounds(self):
        rng = np.random.default_rng(5)
        for trial in range(200):
            s = random_schedule(rng, trial)
            st = stats(s)
            assert st.sigma_max <= st.d_max
            assert st.sigma_max <= 2 * np.sqrt(2) * np.sqrt(st.d_tot)

    def test_subset_split_equality_exhaustive(self):
        # sigma_max equals the best split |S| + max_t |m_t \ S| over all S
        rng = np.random.default_rng(6)
        for trial in range(30):
            s = random_schedule(rng, trial, T=int(rng.integers(1, 13)))
            if s.horizon > 12:
                continue
            T = s.horizon
            st = stats(s)
            masks = [
                sum(1 << (tau - 1) for tau in missing_at(s, t))
                for t in range(1, T + 2)
            ]
            best = min(
                bin(S).count("1")
                + max((m & ~S).bit_count() for m in masks)
                for S in range(1 << T)
            )
            assert best == st.sigma_max


class TestOnlinePerceived:
    def test_no_delay_gives_zero(self):
        log = [(tau, tau) for tau in range(1, 6)]
        assert online_perceived_dmax(log, 5) == 0

    def test_missing_origin_counts_elapsed(self):
        log = [(1, 6), (2, 2), (3, 3)]
        assert online_perceived_dmax(log, 3) == 2  # origin 1 still missing

    def test_arrived_origin_counts_delay(self):
        log = [(1, 3), (2, 2), (3, 3)]
        assert online_perceived_dmax(log, 3) == 2
        assert online_perceived_dmax(log, 4) == 2

    def test_duplicate_origin_rejected(self):
        with pytest.raises(DataError):
            online_perceived_dmax([(1, 2), (1, 3)], 3)

    def test_arrival_before_origin_rejected(self):
        with pytest.raises(DataError):
            online_perceived_dmax([(3, 2)], 3)

    def test_agrees_with_offline_everywhere(self):
        rng = np.random.default_rng(7)
        for trial in range(100):
            s = random_schedule(rng, trial)
            st = stats(s)
            log = [(tau, tau + s.delays[tau - 1]) for tau in range(1, s.horizon + 1)]
            for t in range(1, s.horizon + 1):
                assert online_perceived_dmax(log, t) == st.perceived_dmax[t - 1]


class TestDelayTracker:
    def test_matches_offline_quantities(self):
        rng = np.random.default_rng(8)
        for trial in range(60):
            s = random_schedule(rng, trial)
            st = stats(s)
            tracker = DelayTracker()
            cum = 0
            for t in range(1, s.horizon + 1):
                tracker.begin_round(t)
                m_t = len(missing_at(s, t))
                cum += m_t
                assert tracker.missing_at_start == m_t
                assert tracker.cum_missing == cum
                assert tracker.perceived_dmax(t) == st.perceived_dmax[t - 1]
                tracker.record_arrivals(sorted(arrivals_at(s, t)), t)
                assert tracker.perceived_dmax(t) == st.perceived_dmax[t - 1]

    def test_out_of_order_rounds_rejected(self):
        tracker = DelayTracker()
        tracker.begin_round(1)
        with pytest.raises(SequencingError):
            tracker.begin_round(3)

    def test_duplicate_arrival_rejected(self):
        tracker = DelayTracker()
        tracker.begin_round(1)
        tracker.record_arrivals([1], 1)
        with pytest.raises(DataError):
            tracker.record_arrivals([1], 1)


class TestSerialization:
    def test_round_trip(self, tmp_path):
        s = realized_schedule(UniformDelay(0, 9, seed=11), 40)
        path = tmp_path / "schedule.txt"
        save_schedule(s, path)
        assert load_schedule(path) == s

    def test_format_is_two_lines(self, tmp_path):
        s = truncate(DelaySchedule(3, (1, 1, 0)))
        path = tmp_path / "schedule.txt"
        save_schedule(s, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "T=3"
        assert lines[1] == "1 1 0"

    def test_parse_errors(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("horizon 3\n1 1 0\n")
        with pytest.raises(ParseError):
            load_schedule(bad)
        bad.write_text("T=3\n1 1\n")
        with pytest.raises(ParseError):
            load_schedule(bad)
