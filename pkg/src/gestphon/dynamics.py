"""Critically damped tract-variable dynamics.

Each tract variable obeys

    x'' = -w**2 (x - target) - 2 w x'

with ``w = 2*pi / eigenperiod``.  While a gesture is active its target
and eigenperiod drive the variable; otherwise the neutral (schwa) value
does, with the configured neutral eigenperiod.  The state is advanced in
closed form, piecewise between activation boundaries, so sampled values
do not depend on the sampling grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from gestphon.errors import ConfigError
from gestphon.timing import GesturalScore, ParameterTable, ScoredGesture, TractVariable


@dataclass(frozen=True)
class OscState:
    x: float
    v: float


def omega(eigenperiod: float) -> float:
    if not eigenperiod > 0:
        raise ValueError(f"eigenperiod must be positive, got {eigenperiod}")
    return 2 * math.pi / float(eigenperiod)


def relative_distance(phase: float) -> float:
    """Remaining fraction of the articulator-target distance at ``phase``.

    For a start from rest this depends on phase only, not on eigenperiod.
    """
    if phase < 0:
        raise ValueError("phase must be non-negative")
    theta = 2 * math.pi * phase / 360
    return (1 + theta) * math.exp(-theta)


def step(state: OscState, target: float, w: float, dt: float) -> OscState:
    """Exact advance of the critically damped oscillator by ``dt`` ms."""
    if dt < 0:
        raise ValueError("dt must be non-negative")
    d = state.x - target
    c2 = state.v + w * d
    decay = math.exp(-w * dt)
    return OscState(target + (d + c2 * dt) * decay, (c2 - w * (d + c2 * dt)) * decay)


def overlap_policy(active: Sequence[ScoredGesture], tract_var: str | None = None) -> ScoredGesture | None:
    """Controlling gesture among simultaneously active ones.

    The latest start wins; equal starts go to the earliest in score order.
    """
    best = None
    for g in active:
        if tract_var is not None and g.spec.tract_var != tract_var:
            continue
        if best is None or g.timing.start > best.timing.start:
            best = g
    return best


class TractTrack:
    """Piecewise closed-form evolution of one tract variable."""

    def __init__(self, tv: TractVariable, gestures: Sequence[ScoredGesture], neutral_eigenperiod: float):
        self.tv = tv
        self.gestures = [
            (float(g.timing.start), float(g.timing.end), g) for g in gestures if g.spec.tract_var == tv.name
        ]
        self.neutral_omega = omega(float(neutral_eigenperiod))
        edges = sorted({0.0, *(t for s, e, _ in self.gestures for t in (s, e))})
        self.edges = [t for t in edges if t >= 0.0]
        # state at each edge, integrated once
        self._states = [OscState(tv.neutral, 0.0)]
        for a, b in zip(self.edges, self.edges[1:]):
            target, w = self.control((a + b) / 2)
            self._states.append(step(self._states[-1], target, w, b - a))

    def controller(self, t: float) -> ScoredGesture | None:
        return overlap_policy([g for s, e, g in self.gestures if s <= t < e])

    def control(self, t: float) -> tuple[float, float]:
        g = self.controller(t)
        if g is None:
            return self.tv.neutral, self.neutral_omega
        return g.spec.target, omega(float(g.timing.eigenperiod))

    def state_at(self, t: float) -> OscState:
        """Unclipped oscillator state at time ``t`` (ms, t >= 0)."""
        k = max(0, np.searchsorted(self.edges, t, side="right") - 1)
        edge = self.edges[k]
        if t == edge:
            return self._states[k]
        # t lies before the next edge, so the midpoint shares its controller
        target, w = self.control((edge + t) / 2)
        return step(self._states[k], target, w, t - edge)

    def value_at(self, t: float) -> float:
        return self.state_at(t).x

    def sample(self, times: Sequence[float]) -> np.ndarray:
        raw = np.array([self.state_at(t).x for t in times], dtype=float)
        return np.clip(raw, self.tv.minimum, self.tv.maximum)


@dataclass(frozen=True)
class Trajectory:
    sample_rate: float
    times: np.ndarray
    values: Mapping[str, np.ndarray]
    voiced: np.ndarray
    t0: float = 0.0

    @property
    def tract_variables(self) -> list[str]:
        return list(self.values)

    def __getitem__(self, tract_var: str) -> np.ndarray:
        return self.values[tract_var]


def sample_times(span_end: float, rate: float) -> np.ndarray:
    """Sample instants ``k * 1000 / rate`` covering ``[0, span_end]``."""
    dt = 1000.0 / rate
    n = int(math.floor(span_end / dt + 1e-9)) + 1
    return np.arange(n) * dt


def tracks(score: GesturalScore, table: ParameterTable) -> dict[str, TractTrack]:
    for g in score.gestures:
        table.tract_variable(g.spec.tract_var)
    return {
        name: TractTrack(tv, score.gestures, table.neutral_eigenperiod)
        for name, tv in table.tract_variables.items()
    }


def render(score: GesturalScore, rate: float, table: ParameterTable) -> Trajectory:
    if not rate > 0:
        raise ConfigError(f"sample rate must be positive, got {rate}")
    times = sample_times(float(score.span[1]), rate)
    dt = 1000.0 / rate
    for g in score.gestures:
        start, end = float(g.timing.start), float(g.timing.end)
        k = math.ceil(start / dt - 1e-9)
        if k * dt > end + 1e-9:
            raise ConfigError(
                f"sample rate {rate} Hz leaves the activation interval of {g.segment}@{g.index} "
                f"({start:.3f}-{end:.3f} ms) without a sample"
            )
    values = {name: track.sample(times) for name, track in tracks(score, table).items()}
    voiced = np.ones(len(times), dtype=bool)
    if "GA" in values:
        voiced &= values["GA"] < table.ga_threshold
    if "PR" in values:
        voiced &= values["PR"] > table.pr_threshold
    return Trajectory(rate, times, values, voiced)
