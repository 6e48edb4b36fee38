import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from gestphon.dynamics import OscState, TractTrack, omega, overlap_policy, relative_distance, render, sample_times, step
from gestphon.errors import ConfigError
from gestphon.pipeline import analyze
from gestphon.timing import GesturalScore, GestureClass, GestureSpec, ParameterTable, ScoredGesture, Timing, TractVariable

from oracles import critically_damped

TABLE = ParameterTable(
    classes={
        "slow": GestureClass("slow", "vocalic", Fraction(250), Fraction(0), Fraction(360)),
        "fast": GestureClass("fast", "consonantal", Fraction(120), Fraction(0), Fraction(330)),
    },
    tract_variables={"X": TractVariable("X", 1, 1.0, -3.0, 3.0)},
    neutral_eigenperiod=Fraction(200),
)


def gesture(cls, start, target, T, release, index=0):
    timing = Timing(Fraction(start), Fraction(start) + Fraction(T) * Fraction(release) / 360,
                    Fraction(T), Fraction(0), Fraction(release))
    return ScoredGesture(GestureSpec("X", cls, "closed", "labial", target), timing, f"s{index}", index, "nucleus", "primary")


def test_omega_and_distance():
    assert omega(250) == pytest.approx(2 * math.pi / 250)
    assert relative_distance(0) == 1
    for phase, k in ((360, 2), (720, 4)):
        exact = float(((1 + k * sympy.pi) * sympy.exp(-k * sympy.pi)).evalf(30))
        assert relative_distance(phase) == pytest.approx(exact, rel=1e-12)
    assert relative_distance(360) == pytest.approx(0.013601, abs=1e-6)
    assert relative_distance(720) == pytest.approx(4.73e-5, rel=1e-2)
    with pytest.raises(ValueError):
        omega(0)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(10, 500), st.floats(0, 1000))
def test_step_matches_analytic_from_rest(x0, target, T, t):
    got = step(OscState(x0, 0.0), target, omega(T), t).x
    assert got == pytest.approx(critically_damped(x0, target, T, t), abs=1e-9)


@settings(max_examples=50)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-1, 1), st.floats(0, 100), st.floats(0, 100))
def test_step_composes(x0, target, v0, a, b):
    w = omega(150)
    direct = step(OscState(x0, v0), target, w, a + b)
    twice = step(step(OscState(x0, v0), target, w, a), target, w, b)
    assert twice.x == pytest.approx(direct.x, abs=1e-9)
    assert twice.v == pytest.approx(direct.v, abs=1e-9)


def test_target_is_fixed_point():
    s = step(OscState(2.0, 0.0), 2.0, omega(100), 37.0)
    assert (s.x, s.v) == (2.0, 0.0)


def test_overlap_policy_latest_start():
    a, b, c = gesture("slow", 0, 2, 250, 360, 0), gesture("fast", 50, -2, 120, 330, 1), gesture("fast", 50, 0, 120, 330, 2)
    assert overlap_policy([a, b]) is b
    assert overlap_policy([a, b, c]) is b
    assert overlap_policy([]) is None


def _reference(gestures, t_end):
    """Integrate the ODE numerically, switching control by activation."""
    tv = TABLE.tract_variable("X")

    def control(t):
        active = [g for g in gestures if float(g.timing.start) <= t < float(g.timing.end)]
        g = overlap_policy(active)
        if g is None:
            return tv.neutral, omega(float(TABLE.neutral_eigenperiod))
        return g.spec.target, omega(float(g.timing.eigenperiod))

    def rhs(t, y):
        target, w = control(t)
        return [y[1], -w * w * (y[0] - target) - 2 * w * y[1]]

    edges = sorted({0.0, t_end, *(float(x) for g in gestures for x in (g.timing.start, g.timing.end))})
    y = [tv.neutral, 0.0]
    out = {}
    for a, b in zip(edges, edges[1:]):
        sol = solve_ivp(rhs, (a, b), y, rtol=1e-11, atol=1e-12, dense_output=True)
        for t in range(math.ceil(a), math.floor(b) + 1):
            out[t] = sol.sol(t)[0]
        y = sol.y[:, -1]
    return out


def test_track_matches_numeric_integration():
    gestures = [gesture("slow", 20, 2.5, 250, 360, 0), gesture("fast", 80, -1.5, 120, 330, 1), gesture("fast", 260, 0.5, 120, 330, 2)]
    track = TractTrack(TABLE.tract_variable("X"), gestures, TABLE.neutral_eigenperiod)
    ref = _reference(gestures, 500)
    for t, x in ref.items():
        assert track.value_at(t) == pytest.approx(x, abs=1e-7)


def test_output_clipped():
    g = gesture("fast", 0, 10.0, 120, 330)
    traj = render(GesturalScore.build(["x"], [g]), 1000, TABLE)
    assert traj["X"].max() == 3.0
    assert traj["X"].min() >= -3.0


def test_sample_times():
    assert list(sample_times(10, 200)) == [0, 5, 10]
    assert len(sample_times(580, 1000)) == 581


def test_interval_without_sample_rejected():
    g = gesture("fast", Fraction(1, 2), 1.0, Fraction(1, 10), 330)
    with pytest.raises(ConfigError):
        render(GesturalScore.build(["x"], [g]), 10, TABLE)


def test_voicing_annotation(config):
    traj = render(analyze(["ʔ", "ɛ", "b", "t", "postphonatory_opening"], config).score, 1000, config.table)
    ga = traj["GA"]
    assert np.array_equal(traj.voiced, (ga < config.table.ga_threshold) & (traj["PR"] > config.table.pr_threshold))
    assert not traj.voiced[-1]
