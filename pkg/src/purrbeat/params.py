"""Cue design space: three [0,1] dimensions resolved to synthesis parameters.

The three dimensions (amplitude, variability, hyper-realism) each
interpolate linearly between a LOW endpoint (value 0) and a HIGH
endpoint (value 1):

  amplitude      -> master gain: heartbeat 0.66..0.75, purr 0.66..0.70
  variability    -> rate modulation depth 0..0.25 (30 s sinusoidal period)
                    and per-event amplitude range: heartbeat 0.75..[0.75, 1.0],
                    purr LFO 0.80..[0.80, 1.0]
  hyper-realism  -> 45 Hz boost: heartbeat 0..9 dB, purr 0..10.5 dB
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

RATE_MOD_PERIOD_S = 30.0
RATE_MOD_DEPTH_MAX = 0.25

HEARTBEAT_BASE_BPM = 55.0
PURR_BASE_PPM = 70.0

HEARTBEAT_GAIN_LOW = 0.66
HEARTBEAT_GAIN_HIGH = 0.75
PURR_GAIN_LOW = 0.66
PURR_GAIN_HIGH = 0.70

HEARTBEAT_AMP_FLOOR = 0.75
PURR_AMP_FLOOR = 0.80

HEARTBEAT_BOOST_DB = 9.0
PURR_BOOST_DB = 10.5
BOOST_CENTER_HZ = 45.0


class CueKind(enum.Enum):
    HEARTBEAT = "heartbeat"
    PURR = "purr"


@dataclass(frozen=True)
class CueDimensions:
    """A point in the three-dimensional cue design space; each axis in [0, 1]."""

    amplitude: float
    variability: float
    hyper_realism: float

    def __post_init__(self):
        for name in ("amplitude", "variability", "hyper_realism"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class ResolvedCueParams:
    """Concrete synthesis parameters for one cue."""

    kind: CueKind
    master_gain: float          # linear fraction of actuator maximum
    base_rate: float            # events per minute (bpm or ppm)
    rate_mod_depth: float       # fraction of base_rate, < 1
    rate_mod_period: float      # seconds
    event_amp_min: float        # per-beat draw / amplitude-LFO lower bound
    event_amp_max: float        # per-beat draw / amplitude-LFO upper bound
    boost_gain_db: float        # peaking boost at 45 Hz

    def __post_init__(self):
        if self.event_amp_min > self.event_amp_max:
            raise ValueError("event_amp_min must not exceed event_amp_max")
        if self.base_rate <= 0:
            raise ValueError("base_rate must be positive")
        if not 0.0 <= self.rate_mod_depth < 1.0:
            raise ValueError("rate_mod_depth must be in [0, 1)")


def _lerp(lo: float, hi: float, x: float) -> float:
    return lo + (hi - lo) * x


def resolve(dims: CueDimensions, kind: CueKind) -> ResolvedCueParams:
    """Map design dimensions to synthesis parameters (pure, deterministic)."""
    if kind is CueKind.HEARTBEAT:
        gain = _lerp(HEARTBEAT_GAIN_LOW, HEARTBEAT_GAIN_HIGH, dims.amplitude)
        base = HEARTBEAT_BASE_BPM
        floor = HEARTBEAT_AMP_FLOOR
        boost = HEARTBEAT_BOOST_DB * dims.hyper_realism
    else:
        gain = _lerp(PURR_GAIN_LOW, PURR_GAIN_HIGH, dims.amplitude)
        base = PURR_BASE_PPM
        floor = PURR_AMP_FLOOR
        boost = PURR_BOOST_DB * dims.hyper_realism
    return ResolvedCueParams(
        kind=kind,
        master_gain=gain,
        base_rate=base,
        rate_mod_depth=RATE_MOD_DEPTH_MAX * dims.variability,
        rate_mod_period=RATE_MOD_PERIOD_S,
        event_amp_min=floor,
        event_amp_max=floor + (1.0 - floor) * dims.variability,
        boost_gain_db=boost,
    )


@dataclass(frozen=True)
class CuePreset:
    """One of the eight expert-evaluated endpoint settings."""

    id: int
    dims: CueDimensions
    lifelikeness_label: str
    description: str


_PRESET_ROWS = [
    # (id, amplitude, variability, hyper_realism, label, description)
    (1, 0, 0, 0, "No vibration (baseline)",
     "Comfortable, but lacked perceived internal activity; no sense of presence or life"),
    (2, 1, 1, 0, "Low realism",
     "Crunchy and inconsistent; reminiscent of robotic or electronic components"),
    (3, 1, 0, 1, "Least life-like",
     "Overly intense and mechanical; cartoon-like, artificial, attention-grabbing"),
    (4, 0, 1, 0, "Most life-like",
     "Subtle, soft, and internal; natural heartbeat vibration felt embedded in the body"),
    (5, 0, 1, 1, "Mixed-positive",
     "Realistic pulse pattern but slightly too strong; suited to a larger animal"),
    (6, 0, 0, 1, "Mixed-positive",
     "Smooth but buzzy; more a general vibration than a heartbeat"),
    (7, 1, 1, 1, "Least life-like",
     "Coarse and jarring; exaggerated and griddy, like a sewing machine"),
    (8, 1, 0, 0, "Weak but soft",
     "Subtle and human-like but often too faint to detect during movement"),
]


def preset_table() -> list[CuePreset]:
    """The eight endpoint presets, ordered by setting id."""
    return [
        CuePreset(pid, CueDimensions(a, v, h), label, desc)
        for pid, a, v, h, label, desc in _PRESET_ROWS
    ]


def get_preset(preset_id: int) -> CuePreset:
    for p in preset_table():
        if p.id == preset_id:
            return p
    raise ValueError(f"unknown preset id {preset_id} (expected 1-8)")


def resolve_preset(preset: CuePreset, kind: CueKind) -> ResolvedCueParams:
    """Resolve a preset's dimensions; preset 1 is the no-vibration baseline.

    Preset 1 forces master_gain to 0.  This applies to the preset only, not
    to raw dimension resolution.
    """
    params = resolve(preset.dims, kind)
    if preset.id == 1:
        from dataclasses import replace
        params = replace(params, master_gain=0.0)
    return params


def presets_to_file(path) -> None:
    """Write the preset table as tab-separated text (id, dims, label)."""
    lines = ["id\tamplitude\tvariability\thyper_realism\tlabel"]
    for p in preset_table():
        d = p.dims
        lines.append(f"{p.id}\t{d.amplitude:g}\t{d.variability:g}\t{d.hyper_realism:g}\t{p.lifelikeness_label}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def presets_from_file(path) -> list[CuePreset]:
    """Read presets written by :func:`presets_to_file` (descriptions are not stored)."""
    presets = []
    with open(path) as f:
        header = f.readline()
        if not header.startswith("id\t"):
            raise ValueError(f"unrecognized preset file header: {header!r}")
        for line in f:
            line = line.rstrip("\n")
            if not line:
                continue
            pid, a, v, h, label = line.split("\t")
            presets.append(CuePreset(int(pid), CueDimensions(float(a), float(v), float(h)), label, ""))
    return presets
