"""Purr cue synthesis.

Two models:

  baseline:  continuous 35 Hz sine plus a 60 Hz sine shaped by an ADSR
             envelope (attack 200 ms to 1.0, decay 100 ms to 0.9,
             sustain, release 250 ms) triggered every 60/70 s with the
             release starting 60/140 s into each cycle.  No slow
             amplitude or rate modulation.

  final:     the same per-cycle envelope with the sustain endpoint
             k = 60/(2*ppm) tied to the instantaneous purr rate, the
             whole signal multiplied by a slow amplitude LFO V(t), and
             the purr rate itself modulated by the 30 s rate LFO.  The
             rate is sampled at each cycle start and held for the cycle.

Both carriers run on absolute time, so block boundaries never affect
the output.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .core import SampleBuffer, rate_lfo
from .params import CueKind, ResolvedCueParams

STRUCTURAL_NORM = 0.5
MIN_SAMPLE_RATE = 2000

CARRIER_FREQ = 35.0
ARTICULATION_FREQ = 60.0

ATTACK_S = 0.2
DECAY_S = 0.1
SUSTAIN_LEVEL = 0.9
RELEASE_S = 0.25


class PurrModel(enum.Enum):
    BASELINE = "baseline"
    FINAL = "final"


@dataclass(frozen=True)
class PurrSpec:
    params: ResolvedCueParams
    duration: float
    sample_rate: int
    seed: int
    model: PurrModel = PurrModel.FINAL

    def __post_init__(self):
        if self.params.kind is not CueKind.PURR:
            raise ValueError("PurrSpec requires purr params")
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.sample_rate < MIN_SAMPLE_RATE:
            raise ValueError(f"sample_rate must be >= {MIN_SAMPLE_RATE}, got {self.sample_rate}")


def sustain_end(ppm: float) -> float:
    """k: sustain endpoint within the cycle, 60/(2*ppm) seconds."""
    return 60.0 / (2.0 * ppm)


def envelope_clamped(ppm: float) -> bool:
    """True when k < attack+decay and the sustain region is empty (ppm > 100)."""
    return sustain_end(ppm) < ATTACK_S + DECAY_S


def purr_envelope(t_in_cycle: float, ppm: float) -> float:
    """Piecewise articulation envelope at time t within a purr cycle.

    Ramp to 1.0 over 200 ms, ease down to 0.9 over the next 100 ms, hold
    0.9 until k = 60/(2*ppm), then release linearly to 0 over 250 ms.
    If k < 0.3 the sustain region is empty and the release starts at 0.3
    (see :func:`envelope_clamped`).
    """
    if not 0.0 <= t_in_cycle < 60.0 / ppm:
        raise ValueError(f"t_in_cycle {t_in_cycle} outside cycle [0, {60.0 / ppm})")
    return float(_envelope_array(np.asarray([t_in_cycle]), ppm)[0])


def _envelope_array(tau: np.ndarray, ppm: float) -> np.ndarray:
    k = sustain_end(ppm)
    release_start = max(k, ATTACK_S + DECAY_S)
    out = np.zeros_like(tau)
    m = tau < ATTACK_S
    out[m] = tau[m] / ATTACK_S
    m = (tau >= ATTACK_S) & (tau < ATTACK_S + DECAY_S)
    out[m] = 1.0 - (tau[m] - ATTACK_S)
    m = (tau >= ATTACK_S + DECAY_S) & (tau < release_start)
    out[m] = SUSTAIN_LEVEL
    m = (tau >= release_start) & (tau < release_start + RELEASE_S)
    out[m] = SUSTAIN_LEVEL - (SUSTAIN_LEVEL / RELEASE_S) * (tau[m] - release_start)
    return out


@dataclass(frozen=True)
class Cycle:
    start: float    # seconds
    length: float   # 60/ppm at the cycle start
    ppm: float
    clamped: bool


class PurrEngine:
    """Lazily scheduled, block-renderable purr generator."""

    def __init__(self, params: ResolvedCueParams, sample_rate: int,
                 model: PurrModel = PurrModel.FINAL):
        if params.kind is not CueKind.PURR:
            raise ValueError("purr params required")
        self.params = params
        self.sample_rate = sample_rate
        self.model = model
        self._cycles: list[Cycle] = []
        self._starts: list[float] = []
        self._next_start = 0.0
        self.clamp_count = 0
        # amplitude LFO: variability stretches the range [floor, event_amp_max]
        self._v_mean = 0.5 * (params.event_amp_min + params.event_amp_max)
        self._v_depth = 0.5 * (params.event_amp_max - params.event_amp_min)

    def _extend_schedule(self, until: float) -> None:
        p = self.params
        while self._next_start < until:
            if self.model is PurrModel.FINAL:
                ppm = float(rate_lfo(p.base_rate, p.rate_mod_depth, p.rate_mod_period,
                                     self._next_start))
            else:
                ppm = p.base_rate
            clamped = envelope_clamped(ppm)
            if clamped:
                self.clamp_count += 1
            self._cycles.append(Cycle(self._next_start, 60.0 / ppm, ppm, clamped))
            self._starts.append(self._next_start)
            self._next_start += 60.0 / ppm

    def cycles_until(self, t: float) -> list[Cycle]:
        self._extend_schedule(t)
        i = bisect_left(self._starts, t)
        return self._cycles[:i]

    def _amplitude_lfo(self, t: np.ndarray) -> np.ndarray:
        p = self.params
        return self._v_mean + self._v_depth * np.sin(2.0 * np.pi * t / p.rate_mod_period)

    def render(self, start_frame: int, frames: int) -> np.ndarray:
        fs = self.sample_rate
        end_frame = start_frame + frames
        t_end = end_frame / fs
        self._extend_schedule(t_end)

        t = np.arange(start_frame, end_frame, dtype=np.int64) / fs
        envelope = np.zeros(frames, dtype=np.float64)
        t_start = start_frame / fs
        lo = bisect_left(self._starts, t_start - 2.0)
        for cyc in self._cycles[lo:]:
            if cyc.start >= t_end:
                break
            j0 = max(math.ceil(cyc.start * fs), start_frame)
            j1 = min(math.ceil((cyc.start + cyc.length) * fs), end_frame)
            if j0 >= j1:
                continue
            tau = np.arange(j0, j1, dtype=np.int64) / fs - cyc.start
            envelope[j0 - start_frame:j1 - start_frame] = _envelope_array(tau, cyc.ppm)

        out = np.sin(2.0 * np.pi * CARRIER_FREQ * t) \
            + envelope * np.sin(2.0 * np.pi * ARTICULATION_FREQ * t)
        if self.model is PurrModel.FINAL:
            out *= self._amplitude_lfo(t)
        out *= STRUCTURAL_NORM * self.params.master_gain
        return out


def synth_purr(spec: PurrSpec) -> SampleBuffer:
    """Render the full purr cue as a mono buffer."""
    engine = PurrEngine(spec.params, spec.sample_rate, spec.model)
    frames = round(spec.duration * spec.sample_rate)
    return SampleBuffer(engine.render(0, frames), spec.sample_rate)


def cycle_schedule(spec: PurrSpec) -> list[Cycle]:
    """The deterministic purr-cycle schedule for a spec."""
    engine = PurrEngine(spec.params, spec.sample_rate, spec.model)
    return engine.cycles_until(spec.duration)
