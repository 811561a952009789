"""45 Hz peaking equalizer for the hyper-realism boost.

Standard second-order peaking biquad (RBJ audio-EQ cookbook,
bilinear-transform design).  The filter is exactly gain_db at the
center frequency and approaches 0 dB at DC and Nyquist.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import freqz, lfilter, lfilter_zi

from .core import SampleBuffer

DEFAULT_Q = 1.0


@dataclass(frozen=True)
class PeakingEqConfig:
    center_freq: float
    gain_db: float
    sample_rate: int
    q_factor: float = DEFAULT_Q

    def __post_init__(self):
        if not 0 < self.center_freq < self.sample_rate / 2:
            raise ValueError(f"center_freq {self.center_freq} outside (0, Nyquist)")
        if self.gain_db < 0:
            raise ValueError(f"gain_db must be >= 0, got {self.gain_db}")
        if self.q_factor <= 0:
            raise ValueError(f"q_factor must be positive, got {self.q_factor}")


def peaking_coefficients(config: PeakingEqConfig) -> tuple[np.ndarray, np.ndarray]:
    """(b, a) normalized so a[0] == 1."""
    A = 10.0 ** (config.gain_db / 40.0)
    w0 = 2.0 * np.pi * config.center_freq / config.sample_rate
    alpha = np.sin(w0) / (2.0 * config.q_factor)
    b = np.array([1.0 + alpha * A, -2.0 * np.cos(w0), 1.0 - alpha * A])
    a = np.array([1.0 + alpha / A, -2.0 * np.cos(w0), 1.0 - alpha / A])
    return b / a[0], a / a[0]


def magnitude_response_db(config: PeakingEqConfig, freqs) -> np.ndarray:
    """Analytic gain of the filter, in dB, at the given frequencies."""
    b, a = peaking_coefficients(config)
    w = 2.0 * np.pi * np.asarray(freqs, dtype=np.float64) / config.sample_rate
    _, h = freqz(b, a, worN=w)
    return 20.0 * np.log10(np.abs(h))


class PeakingEq:
    """Stateful single-channel peaking filter for block processing.

    Processing a signal in chunks is exactly equivalent to filtering it
    in one call: the recursion state is carried across blocks.
    """

    def __init__(self, config: PeakingEqConfig):
        self.config = config
        self._b, self._a = peaking_coefficients(config)
        self._zi = np.zeros(max(len(self._a), len(self._b)) - 1)

    def process(self, block: np.ndarray) -> np.ndarray:
        out, self._zi = lfilter(self._b, self._a, block, zi=self._zi)
        return out

    def reset(self) -> None:
        self._zi = np.zeros_like(self._zi)


def apply_peaking_eq(buffer: SampleBuffer, config: PeakingEqConfig) -> tuple[SampleBuffer, int]:
    """Filter every channel of the buffer; returns (clamped output, clip count).

    A gain of exactly 0 dB passes the signal through untouched.
    """
    if buffer.sample_rate != config.sample_rate:
        raise ValueError(
            f"buffer rate {buffer.sample_rate} != config rate {config.sample_rate}")
    if config.gain_db == 0.0:
        return buffer, 0
    filtered = np.empty_like(buffer.samples)
    for ch in range(buffer.channels):
        filtered[ch] = PeakingEq(config).process(buffer.samples[ch])
    return SampleBuffer(filtered, buffer.sample_rate).clamp()
