"""Shared signal primitives: oscillators, rate LFOs, seeded draws, sample buffers.

Everything here is a pure function of its arguments.  Oscillators are
evaluated on absolute cue time rather than with per-block phase
accumulators, so rendering the same timeline in blocks of any size
produces bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SampleBuffer:
    """Mono or multi-channel float sample data with its sample rate.

    ``samples`` has shape (channels, frames).  After finalization
    (``clamp``) every sample lies in [-1, 1].
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        self.samples = np.atleast_2d(np.asarray(self.samples, dtype=np.float64))
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    @property
    def channels(self) -> int:
        return self.samples.shape[0]

    @property
    def frames(self) -> int:
        return self.samples.shape[1]

    @property
    def duration(self) -> float:
        return self.frames / self.sample_rate

    def channel(self, i: int) -> "SampleBuffer":
        return SampleBuffer(self.samples[i:i + 1].copy(), self.sample_rate)

    def peak(self) -> float:
        if self.frames == 0:
            return 0.0
        return float(np.max(np.abs(self.samples)))

    def clamp(self) -> tuple["SampleBuffer", int]:
        """Clip to [-1, 1]; returns (clipped buffer, number of clipped samples)."""
        clipped = int(np.count_nonzero(np.abs(self.samples) > 1.0))
        return SampleBuffer(np.clip(self.samples, -1.0, 1.0), self.sample_rate), clipped

    def mono(self) -> np.ndarray:
        if self.channels != 1:
            raise ValueError(f"expected mono buffer, got {self.channels} channels")
        return self.samples[0]


def mix(*buffers: SampleBuffer) -> SampleBuffer:
    """Sample-wise sum of equally shaped buffers (associative, commutative)."""
    if not buffers:
        raise ValueError("mix needs at least one buffer")
    rate = buffers[0].sample_rate
    shape = buffers[0].samples.shape
    for b in buffers[1:]:
        if b.sample_rate != rate:
            raise ValueError("sample rate mismatch in mix")
        if b.samples.shape != shape:
            raise ValueError("shape mismatch in mix")
    total = np.sum([b.samples for b in buffers], axis=0)
    return SampleBuffer(total, rate)


def sine(freq: float, phase: float, t) -> np.ndarray | float:
    """sin(2*pi*freq*t + phase) evaluated at absolute time t (scalar or array)."""
    if freq <= 0:
        raise ValueError(f"freq must be positive, got {freq}")
    return np.sin(2.0 * np.pi * freq * np.asarray(t, dtype=np.float64) + phase)


def rate_lfo(base_rate: float, depth: float, period: float, t) -> np.ndarray | float:
    """Sinusoidally modulated event rate: base * (1 + depth*sin(2*pi*t/period)).

    Output stays within [base*(1-depth), base*(1+depth)]; depth < 1 keeps the
    rate strictly positive.
    """
    if not 0.0 <= depth < 1.0:
        raise ValueError(f"depth must be in [0, 1), got {depth}")
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    return base_rate * (1.0 + depth * np.sin(2.0 * np.pi * np.asarray(t, dtype=np.float64) / period))


@dataclass
class RngStream:
    """Deterministic uniform-draw stream.

    Backed by numpy's PCG64 bit generator, which is platform independent:
    the same seed always yields the same draw sequence.  ``draw_count``
    tracks how many draws have been consumed so a stream can be recreated
    at any position.
    """

    seed: int
    draw_count: int = 0
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._gen = np.random.Generator(np.random.PCG64(self.seed))
        if self.draw_count:
            self._gen.random(self.draw_count)


def draw_uniform(rng: RngStream, lo: float, hi: float) -> float:
    """One uniform draw from [lo, hi]; advances the stream by exactly one draw."""
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    u = rng._gen.random()
    rng.draw_count += 1
    return lo + (hi - lo) * u
