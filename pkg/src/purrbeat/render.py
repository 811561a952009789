"""Offline rendering of complete three-channel cue programs.

Channel map mirrors the actuator layout of the physical prototype:

  channel 0: left-flank heartbeat
  channel 1: right-flank heartbeat (identical signal)
  channel 2: throat purr

Each channel passes through its resolved 45 Hz boost, then a fixed
headroom attenuation sized to the maximum possible boost so that no
legal parameter combination can clip.  A JSON sidecar records
everything needed to reproduce the render bit-for-bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import SampleBuffer
from .eq import PeakingEq, PeakingEqConfig
from .heartbeat import HeartbeatEngine
from .params import (
    BOOST_CENTER_HZ,
    PURR_BOOST_DB,
    CueDimensions,
    CueKind,
    ResolvedCueParams,
    resolve,
)
from .purr import PurrEngine, PurrModel
from .wavefile import FORMAT_FLOAT32, write_wave

DEFAULT_SAMPLE_RATE = 48000
# Reserve the largest boost the design space can ask for, applied to every
# channel so relative levels are preserved.
DEFAULT_HEADROOM_DB = PURR_BOOST_DB

CHANNEL_MAP = ("left_flank_heartbeat", "right_flank_heartbeat", "throat_purr")


@dataclass(frozen=True)
class RenderJob:
    heartbeat_dims: CueDimensions
    purr_dims: CueDimensions
    duration: float
    seed: int
    output_path: str
    sample_rate: int = DEFAULT_SAMPLE_RATE
    sample_format: str = FORMAT_FLOAT32
    purr_model: PurrModel = PurrModel.FINAL
    preset_id: int | None = None
    headroom_db: float = DEFAULT_HEADROOM_DB
    force_silent_heartbeat: bool = False  # preset 1: no-vibration baseline
    force_silent_purr: bool = False

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")


@dataclass
class RenderReport:
    job: dict
    heartbeat_params: dict
    purr_params: dict
    channel_peaks: list[float] = field(default_factory=list)
    clip_counts: list[int] = field(default_factory=list)
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RenderReport":
        return cls(**json.loads(text))


def _params_dict(p: ResolvedCueParams) -> dict:
    d = {k: v for k, v in p.__dict__.items()}
    d["kind"] = p.kind.value
    return d


def _job_dict(job: RenderJob) -> dict:
    return {
        "heartbeat_dims": list(
            (job.heartbeat_dims.amplitude, job.heartbeat_dims.variability,
             job.heartbeat_dims.hyper_realism)),
        "purr_dims": list(
            (job.purr_dims.amplitude, job.purr_dims.variability,
             job.purr_dims.hyper_realism)),
        "duration": job.duration,
        "seed": job.seed,
        "sample_rate": job.sample_rate,
        "sample_format": job.sample_format,
        "purr_model": job.purr_model.value,
        "preset_id": job.preset_id,
        "headroom_db": job.headroom_db,
        "force_silent_heartbeat": job.force_silent_heartbeat,
        "force_silent_purr": job.force_silent_purr,
        "channel_map": list(CHANNEL_MAP),
    }


def render_channels(job: RenderJob) -> tuple[SampleBuffer, RenderReport]:
    """Synthesize, boost, and clamp the three program channels in memory."""
    hb_params = resolve(job.heartbeat_dims, CueKind.HEARTBEAT)
    purr_params = resolve(job.purr_dims, CueKind.PURR)
    frames = round(job.duration * job.sample_rate)

    hb = HeartbeatEngine(hb_params, job.sample_rate, job.seed).render(0, frames)
    purr = PurrEngine(purr_params, job.sample_rate, job.purr_model).render(0, frames)
    if job.force_silent_heartbeat:
        hb = np.zeros_like(hb)
    if job.force_silent_purr:
        purr = np.zeros_like(purr)

    headroom = 10.0 ** (-job.headroom_db / 20.0)
    channels = []
    clip_counts = []
    peaks = []
    for signal, boost_db in ((hb, hb_params.boost_gain_db),
                             (hb, hb_params.boost_gain_db),
                             (purr, purr_params.boost_gain_db)):
        out = signal
        if boost_db > 0.0:
            eq = PeakingEq(PeakingEqConfig(BOOST_CENTER_HZ, boost_db, job.sample_rate))
            out = eq.process(out)
        out = out * headroom
        clip_counts.append(int(np.count_nonzero(np.abs(out) > 1.0)))
        out = np.clip(out, -1.0, 1.0)
        peaks.append(float(np.max(np.abs(out))) if frames else 0.0)
        channels.append(out)

    buffer = SampleBuffer(np.stack(channels), job.sample_rate)
    report = RenderReport(
        job=_job_dict(job),
        heartbeat_params=_params_dict(hb_params),
        purr_params=_params_dict(purr_params),
        channel_peaks=peaks,
        clip_counts=clip_counts,
    )
    return buffer, report


def sidecar_path(output_path: str) -> str:
    return str(output_path) + ".json"


def render_program(job: RenderJob) -> RenderReport:
    """Render a job to its wave file plus JSON sidecar."""
    buffer, report = render_channels(job)
    write_wave(job.output_path, buffer, job.sample_format)
    with open(sidecar_path(job.output_path), "w") as f:
        f.write(report.to_json() + "\n")
    return report


def load_sidecar(path: str) -> RenderReport:
    with open(path) as f:
        return RenderReport.from_json(f.read())
