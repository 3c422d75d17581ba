import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from erwmem import oracle
from erwmem.errors import InvalidArgumentError
from erwmem.moments import mean_displacement_value, second_moment_displacement
from erwmem.montecarlo import RunningMoments, merge_all, run_simulation, simulate_positions
from erwmem.walk import WalkParams, sample_trajectory

from .conftest import GRID_P, GRID_Q


def test_degenerate_walk():
    for s in run_simulation(WalkParams(1, 1), 12, 5000, seed=3, checkpoints=[1, 6, 12]):
        assert s.sample_mean_S == s.n
        assert s.sample_var_S == 0.0
        assert s.stderr_mean == 0.0


def test_thread_count_invariance():
    P = WalkParams("3/4", "1/2")
    runs = [run_simulation(P, 30, 100_003, seed=11, checkpoints=[5, 30], threads=t, histogram=True)
            for t in (1, 3, 8)]
    assert runs[0] == runs[1] == runs[2]


def test_trials_follow_scalar_sampler():
    P = WalkParams("1/4", "1/2")
    pos = simulate_positions(P, 25, 99, 1000, 1040, list(range(1, 26)))
    for i in range(40):
        assert tuple(pos[:, i]) == sample_trajectory(P, 25, 99, trial=1000 + i).positions


def test_summary_invariants():
    P = WalkParams("3/4", "1/2")
    trials = 20_000
    for s in run_simulation(P, 15, trials, seed=4, checkpoints=[1, 2, 9, 15], histogram=True):
        assert s.trials == trials
        assert s.stderr_mean == math.sqrt(s.sample_var_S / trials)
        assert sum(s.histogram.values()) == trials
        assert all((k - s.n) % 2 == 0 and abs(k) <= s.n for k in s.histogram)
        hist_mean = sum(k * c for k, c in s.histogram.items()) / trials
        assert s.sample_mean_S == pytest.approx(hist_mean, rel=1e-12)


def test_history_law_chi_square():
    """Sampled full histories at n=5 against the exact oracle law."""
    n, trials = 5, 100_000
    P = WalkParams("3/4", "1/2")
    pos = simulate_positions(P, n, 2718, 0, trials, list(range(1, n + 1)))
    steps = np.diff(np.vstack([np.zeros(trials, dtype=np.int64), pos]), axis=0)
    code = ((steps > 0).astype(np.int64) * (1 << np.arange(n)[:, None])).sum(axis=0)
    observed = np.bincount(code, minlength=2 ** n)
    law = oracle.exact_distribution(n, P).atoms
    expected = []
    for signs in itertools.product((1, -1), repeat=n):
        idx = sum(1 << i for i, x in enumerate(signs) if x > 0)
        expected.append((idx, float(law.get(signs, Fraction(0))) * trials))
    order = [i for i, _ in expected]
    exp = np.array([e for _, e in expected])
    obs = observed[order]
    chi2 = ((obs - exp) ** 2 / exp).sum()
    assert stats.chi2.sf(chi2, df=2 ** n - 1) > 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("q", GRID_Q)
@pytest.mark.parametrize("p", GRID_P)
def test_grid_agreement_with_exact(p, q):
    P = WalkParams(p, q)
    n = 50
    s = run_simulation(P, n, 1_000_000, seed=20260101)[0]
    exact_mean = float(mean_displacement_value(n, P))
    exact_m2 = float(second_moment_displacement(n)(P.alpha))
    if s.stderr_mean == 0:
        assert s.sample_mean_S == exact_mean
    else:
        assert abs(s.sample_mean_S - exact_mean) <= 5 * s.stderr_mean
    if s.stderr_mean_S2 == 0:
        assert s.sample_mean_S2 == pytest.approx(exact_m2, rel=1e-12)
    else:
        assert abs(s.sample_mean_S2 - exact_m2) <= 5 * s.stderr_mean_S2


@given(st.lists(st.floats(-1e3, 1e3), min_size=0, max_size=60), st.integers(0, 60))
def test_running_moments_merge(values, cut):
    arr = np.array(values, dtype=float)
    cut = min(cut, arr.size)
    whole = RunningMoments.of(arr)
    merged = RunningMoments.of(arr[:cut]).merge(RunningMoments.of(arr[cut:]))
    assert merged.count == whole.count
    assert merged.mean == pytest.approx(whole.mean, abs=1e-9)
    assert merged.m2 == pytest.approx(whole.m2, rel=1e-9, abs=1e-6)


def test_merge_all_order():
    rng = np.random.default_rng(0)
    parts = [rng.normal(size=rng.integers(1, 50)) for _ in range(9)]
    m = merge_all([RunningMoments.of(p) for p in parts])
    allv = np.concatenate(parts)
    assert m.count == allv.size
    assert m.variance == pytest.approx(allv.var(ddof=1), rel=1e-12)
    assert merge_all([]).count == 0


@pytest.mark.parametrize("kwargs", [dict(checkpoints=[]), dict(checkpoints=[11]), dict(checkpoints=[5, 3]),
                                    dict(trials=0), dict(threads=0), dict(seed=-1)])
def test_errors(kwargs):
    args = dict(params=WalkParams("1/2"), n=10, trials=10, seed=1)
    args.update(kwargs)
    with pytest.raises(InvalidArgumentError):
        run_simulation(**args)
