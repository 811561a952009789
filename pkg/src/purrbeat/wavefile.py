"""Minimal RIFF/WAVE reader and writer.

Supports interleaved 16-bit PCM and 32-bit IEEE float, any channel
count.  The reader walks the chunk list and reports malformed input as
:class:`WaveParseError` with the byte offset where parsing failed.
"""

from __future__ import annotations

import struct

import numpy as np

from .core import SampleBuffer

FORMAT_PCM16 = "pcm16"
FORMAT_FLOAT32 = "float32"

_WAVE_FORMAT_PCM = 1
_WAVE_FORMAT_IEEE_FLOAT = 3


class WaveParseError(ValueError):
    """Malformed wave file; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def write_wave(path, buffer: SampleBuffer, sample_format: str = FORMAT_FLOAT32) -> None:
    """Write an interleaved wave file.

    float32 stores samples at single precision (reading back returns the
    float32-rounded values exactly); pcm16 quantizes with at most one
    LSB (2**-15) of error for in-range samples.
    """
    data = buffer.samples  # (channels, frames)
    interleaved = np.ascontiguousarray(data.T)
    if sample_format == FORMAT_FLOAT32:
        payload = interleaved.astype("<f4").tobytes()
        fmt_code, bits = _WAVE_FORMAT_IEEE_FLOAT, 32
    elif sample_format == FORMAT_PCM16:
        scaled = np.clip(np.round(interleaved * 32767.0), -32768, 32767)
        payload = scaled.astype("<i2").tobytes()
        fmt_code, bits = _WAVE_FORMAT_PCM, 16
    else:
        raise ValueError(f"unsupported sample format {sample_format!r}")

    channels = buffer.channels
    block_align = channels * bits // 8
    byte_rate = buffer.sample_rate * block_align
    fmt_chunk = struct.pack("<HHIIHH", fmt_code, channels, buffer.sample_rate,
                            byte_rate, block_align, bits)
    chunks = b"WAVE"
    chunks += b"fmt " + struct.pack("<I", len(fmt_chunk)) + fmt_chunk
    if fmt_code == _WAVE_FORMAT_IEEE_FLOAT:
        chunks += b"fact" + struct.pack("<II", 4, buffer.frames)
    chunks += b"data" + struct.pack("<I", len(payload)) + payload
    with open(path, "wb") as f:
        f.write(b"RIFF" + struct.pack("<I", len(chunks)) + chunks)


def read_wave(path) -> SampleBuffer:
    """Read a PCM-16 or float-32 wave file into a SampleBuffer."""
    with open(path, "rb") as f:
        blob = f.read()

    def need(offset: int, count: int, what: str) -> bytes:
        if offset + count > len(blob):
            raise WaveParseError(f"truncated file while reading {what}", offset)
        return blob[offset:offset + count]

    if need(0, 4, "RIFF tag") != b"RIFF":
        raise WaveParseError("missing RIFF tag", 0)
    if need(8, 4, "WAVE tag") != b"WAVE":
        raise WaveParseError("missing WAVE tag", 8)

    pos = 12
    fmt = None
    data = None
    while pos + 8 <= len(blob):
        cid = blob[pos:pos + 4]
        (size,) = struct.unpack("<I", blob[pos + 4:pos + 8])
        body = need(pos + 8, size, f"{cid!r} chunk body")
        if cid == b"fmt ":
            if size < 16:
                raise WaveParseError("fmt chunk too short", pos + 4)
            fmt = struct.unpack("<HHIIHH", body[:16])
        elif cid == b"data":
            data = (pos + 8, body)
        pos += 8 + size + (size & 1)
    if fmt is None:
        raise WaveParseError("no fmt chunk", pos)
    if data is None:
        raise WaveParseError("no data chunk", pos)

    fmt_code, channels, sample_rate, _byte_rate, _block_align, bits = fmt
    data_offset, payload = data
    if channels < 1:
        raise WaveParseError("invalid channel count 0", data_offset)
    if fmt_code == _WAVE_FORMAT_PCM and bits == 16:
        raw = np.frombuffer(payload[:len(payload) - len(payload) % (2 * channels)], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif fmt_code == _WAVE_FORMAT_IEEE_FLOAT and bits == 32:
        raw = np.frombuffer(payload[:len(payload) - len(payload) % (4 * channels)], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise WaveParseError(
            f"unsupported format code {fmt_code} / {bits} bits", data_offset)
    frames = len(samples) // channels
    return SampleBuffer(samples[:frames * channels].reshape(frames, channels).T,
                        sample_rate)
