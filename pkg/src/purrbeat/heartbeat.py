"""Heartbeat cue synthesis.

Each beat consists of four sine pulses timed relative to the beat
interval n (seconds), with onset at local time 0:

  atrial 1:      25 Hz on [0, 2n/21.33)
  atrial 2:      30 Hz on [0, 2n/12.8)
  ventricular 1: 20 Hz on [n/4, n/4 + 2n/12.8)
  ventricular 2: 30 Hz on [n/4, n/4 + 2n/14.2)

The sum is scaled by a per-beat amplitude drawn uniformly from the
resolved amplitude range, by the structural normalizer 0.5 (at most two
components overlap, so the pre-gain peak is at most 2), and by the
master gain.  Beat rate is sampled from the 30 s sinusoidal rate LFO at
each onset and held for that beat.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .core import RngStream, SampleBuffer, draw_uniform, rate_lfo
from .params import CueKind, ResolvedCueParams

STRUCTURAL_NORM = 0.5
MIN_SAMPLE_RATE = 2000

ATR1_FREQ = 25.0
ATR2_FREQ = 30.0
VEN1_FREQ = 20.0
VEN2_FREQ = 30.0

# (frequency, onset fraction of n, duration fraction of n)
_COMPONENTS = (
    (ATR1_FREQ, 0.0, 2.0 / 21.33),
    (ATR2_FREQ, 0.0, 2.0 / 12.8),
    (VEN1_FREQ, 0.25, 2.0 / 12.8),
    (VEN2_FREQ, 0.25, 2.0 / 14.2),
)


@dataclass(frozen=True)
class HeartbeatSpec:
    params: ResolvedCueParams
    duration: float
    sample_rate: int
    seed: int

    def __post_init__(self):
        if self.params.kind is not CueKind.HEARTBEAT:
            raise ValueError("HeartbeatSpec requires heartbeat params")
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.sample_rate < MIN_SAMPLE_RATE:
            raise ValueError(f"sample_rate must be >= {MIN_SAMPLE_RATE}, got {self.sample_rate}")


@dataclass(frozen=True)
class Beat:
    onset: float      # seconds
    interval: float   # n, seconds until the next onset
    amplitude: float  # A_r for this beat


class HeartbeatEngine:
    """Lazily scheduled, block-renderable heartbeat generator.

    ``render(start_frame, frames)`` is a pure function of the absolute
    frame range: any partitioning of the timeline into blocks produces
    identical samples.
    """

    def __init__(self, params: ResolvedCueParams, sample_rate: int, seed: int):
        if params.kind is not CueKind.HEARTBEAT:
            raise ValueError("heartbeat params required")
        self.params = params
        self.sample_rate = sample_rate
        self._rng = RngStream(seed)
        self._beats: list[Beat] = []
        self._onsets: list[float] = []
        self._next_onset = 0.0

    def _extend_schedule(self, until: float) -> None:
        p = self.params
        while self._next_onset < until:
            bpm = float(rate_lfo(p.base_rate, p.rate_mod_depth, p.rate_mod_period,
                                 self._next_onset))
            n = 60.0 / bpm
            amp = draw_uniform(self._rng, p.event_amp_min, p.event_amp_max)
            self._beats.append(Beat(self._next_onset, n, amp))
            self._onsets.append(self._next_onset)
            self._next_onset += n

    def beats_until(self, t: float) -> list[Beat]:
        """All beats with onset < t, in onset order."""
        self._extend_schedule(t)
        i = bisect_left(self._onsets, t)
        return self._beats[:i]

    def render(self, start_frame: int, frames: int) -> np.ndarray:
        fs = self.sample_rate
        end_frame = start_frame + frames
        t_end = end_frame / fs
        self._extend_schedule(t_end)

        out = np.zeros(frames, dtype=np.float64)
        # first beat that could still be sounding at t_start: onset > t_start - max interval
        t_start = start_frame / fs
        lo = bisect_left(self._onsets, t_start - 2.0)
        for beat in self._beats[lo:]:
            if beat.onset >= t_end:
                break
            n = beat.interval
            for freq, onset_frac, dur_frac in _COMPONENTS:
                w0 = beat.onset + onset_frac * n
                w1 = w0 + dur_frac * n
                j0 = max(math.ceil(w0 * fs), start_frame)
                j1 = min(math.ceil(w1 * fs), end_frame)
                if j0 >= j1:
                    continue
                idx = np.arange(j0, j1, dtype=np.int64)
                tau = idx / fs - beat.onset - onset_frac * n
                out[j0 - start_frame:j1 - start_frame] += beat.amplitude * np.sin(
                    2.0 * np.pi * freq * tau)
        out *= STRUCTURAL_NORM * self.params.master_gain
        return out


def synth_heartbeat(spec: HeartbeatSpec) -> SampleBuffer:
    """Render the full heartbeat cue as a mono buffer."""
    engine = HeartbeatEngine(spec.params, spec.sample_rate, spec.seed)
    frames = round(spec.duration * spec.sample_rate)
    return SampleBuffer(engine.render(0, frames), spec.sample_rate)


def beat_schedule(spec: HeartbeatSpec) -> list[Beat]:
    """The deterministic beat schedule (onsets, intervals, per-beat amplitudes)."""
    engine = HeartbeatEngine(spec.params, spec.sample_rate, spec.seed)
    return engine.beats_until(spec.duration)
