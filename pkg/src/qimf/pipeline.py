"""End-to-end filtering runs: encode, transform, amplify the region, transform back, render."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .amplification import (
    NothingToAmplifyError,
    Schedule,
    min_sequence_length,
    run_iterations,
    schedule,
)
from .classical import classical_op_count
from .encoding import (
    ImageBuffer,
    RectangleSpec,
    dense_encoder_cost,
    encode_image,
    decode_state,
    prepare_rectangle,
    rasterize_rectangle,
    rectangle_encoder_cost,
)
from .pgm import read_pgm
from .region import OverlapStats, RegionSpec, overlap_stats, region_mask, target_state
from .resources import classical_resources, quantum_resources
from .spectral import iqft2d, qft2d
from .state import StateVector, fidelity, inner_product

KINDS = ("lowpass", "highpass", "homomorphic", "band")
BUILTINS = ("rectangle", "noisy-rectangle", "gradient-texture")


class ConfigError(ValueError):
    pass


class LambdaBelowFloor(RuntimeError):
    def __init__(self, lam: float, floor: float):
        super().__init__(
            f"lambda={lam:.6g} is below the floor {floor:.6g}; "
            "the filter cannot separate signal from noise"
        )
        self.lam = lam
        self.floor = floor


# --- image transforms and synthetic inputs ----------------------------------


def homomorphic_pre(image: ImageBuffer) -> ImageBuffer:
    """Log domain: ``p -> log2(1 + p)``."""
    return ImageBuffer(np.log1p(image.pixels) / math.log(2.0))


def homomorphic_post(image: ImageBuffer) -> ImageBuffer:
    """Inverse of :func:`homomorphic_pre`: ``p -> 2**p - 1``."""
    return ImageBuffer(np.clip(np.exp2(image.pixels) - 1.0, 0.0, 1.0))


def add_salt_pepper(image: ImageBuffer, density: float, seed: int) -> ImageBuffer:
    """Set ``floor(density * N)`` distinct pixels to 0 or 1 with equal odds.

    Pixels and values come from numpy's PCG64 generator seeded with ``seed``.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    flat = image.pixels.ravel().copy()
    k = int(math.floor(density * flat.size))
    idx = rng.choice(flat.size, size=k, replace=False)
    flat[idx] = rng.integers(0, 2, size=k).astype(np.float64)
    return ImageBuffer(flat.reshape(image.shape))


def scaled_rectangle(size: int) -> RectangleSpec:
    """The 256-pixel reference rectangle (w=h=50 at (103, 103)) rescaled to ``size``."""
    k = size / 256
    w = int(round(50 * k))
    x = int(round(103 * k))
    return RectangleSpec(w=w, h=w, x1=x, y1=x, N1=size, N2=size)


def centered_rectangle(size: int, extent: int = 50) -> RectangleSpec:
    x = (size - extent - 1) // 2
    return RectangleSpec(w=extent, h=extent, x1=x, y1=x, N1=size, N2=size)


def gradient_texture(size: int = 256) -> ImageBuffer:
    """Diagonal illumination ramp times a cosine texture at frequency ``(80, 20) * size/256``."""
    i = np.arange(size)[:, None]
    j = np.arange(size)[None, :]
    illum = 0.15 + 0.85 * (i + j) / (2 * (size - 1))
    fu, fv = round(80 * size / 256), round(20 * size / 256)
    texture = 0.5 + 0.5 * np.cos(2 * np.pi * (fu * i + fv * j) / size)
    return ImageBuffer(illum * texture)


@dataclass(frozen=True)
class Source:
    image: ImageBuffer
    rectangle: Optional[RectangleSpec] = None


def load_builtin(name: str, size: int = 256, seed: int = 0, density: float = 0.05) -> Source:
    if name == "rectangle":
        spec = scaled_rectangle(size)
        return Source(rasterize_rectangle(spec), spec)
    if name == "noisy-rectangle":
        clean = rasterize_rectangle(scaled_rectangle(size))
        return Source(add_salt_pepper(clean, density, seed))
    if name == "gradient-texture":
        return Source(gradient_texture(size))
    raise ConfigError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


# --- configuration and report ------------------------------------------------


@dataclass(frozen=True)
class FilterConfig:
    kind: str = "band"
    d1: Optional[float] = None
    d2: Optional[float] = None
    delta: float = 0.01
    l: Union[int, str] = "auto"
    lambda_floor: Optional[float] = None
    input_path: Optional[str] = None
    builtin: Optional[str] = None
    size: int = 256
    seed: int = 0
    noise_density: float = 0.05
    out: Optional[str] = None
    report: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown kind {self.kind!r}")
        if (self.input_path is None) == (self.builtin is None):
            raise ConfigError("exactly one of input path or builtin is required")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError("delta must lie in (0, 1)")
        if self.builtin is not None and (self.size < 2 or self.size & (self.size - 1)):
            raise ConfigError(f"builtin size must be a power of two >= 2, got {self.size}")
        d1, d2 = self.bounds
        if d1 is None or d2 is None:
            raise ConfigError(f"kind {self.kind!r} needs both d1 and d2")
        if not 0 <= d1 <= d2:
            raise ConfigError("region bounds must satisfy 0 <= d1 <= d2")
        if self.l != "auto" and (not isinstance(self.l, int) or self.l < 1):
            raise ConfigError("l must be a positive integer or 'auto'")
        if self.lambda_floor is not None and not 0.0 < self.lambda_floor <= 1.0:
            raise ConfigError("lambda floor must lie in (0, 1]")

    @property
    def bounds(self) -> tuple[Optional[float], Optional[float]]:
        d1, d2 = self.d1, self.d2
        if self.kind == "lowpass" and d1 is None:
            d1 = 0.0
        if self.kind == "highpass" and d2 is None:
            d2 = math.inf
        return d1, d2


def _round_sig(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.12g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _round_sig(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_sig(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class FilterReport:
    lam: float
    lambda_prime: float
    M: float
    M_D: float
    schedule: dict
    minimal_l: int
    guaranteed: bool
    success_bound: float
    success_probability: float
    predicted_success: float
    fidelity_to_reference: float
    quantum: dict
    classical: dict
    parameters: dict
    status: str = "ok"
    wall_time: Optional[float] = None

    def as_dict(self) -> dict:
        d = {
            "status": self.status,
            "lambda": self.lam,
            "lambda_prime": self.lambda_prime,
            "M": self.M,
            "M_D": self.M_D,
            "schedule": self.schedule,
            "minimal_l": self.minimal_l,
            "guaranteed": self.guaranteed,
            "success_bound": self.success_bound,
            "success_probability": self.success_probability,
            "predicted_success": self.predicted_success,
            "fidelity_to_reference": self.fidelity_to_reference,
            "quantum": self.quantum,
            "classical": self.classical,
            "parameters": self.parameters,
        }
        if self.wall_time is not None:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self) -> str:
        return json.dumps(_round_sig(self.as_dict()), indent=2) + "\n"


# --- the quantum filter at amplitude level -------------------------------------


@dataclass
class FilterOutcome:
    """All intermediate states of one run (frequency-domain unless noted)."""

    input_state: StateVector
    source: StateVector
    target: StateVector
    amplified: StateVector
    output: StateVector  # spatial domain
    reference: StateVector  # spatial domain
    stats: OverlapStats
    schedule: Schedule
    minimal_l: int
    success_probability: float
    fidelity_to_reference: float
    mask: np.ndarray = field(repr=False)


def choose_l(l: Union[int, str], lam: float, delta: float, lambda_floor: Optional[float]) -> int:
    """Explicit ``l``, or the minimal guaranteed length for the floor (if given) else the measured overlap."""
    if l != "auto":
        return int(l)
    bound = lambda_floor if lambda_floor is not None else lam
    return min_sequence_length(bound, delta)[0]


def quantum_filter(
    state: StateVector,
    region: RegionSpec,
    delta: float,
    l: Union[int, str] = "auto",
    lambda_floor: Optional[float] = None,
    M: float = 1.0,
) -> FilterOutcome:
    if (region.N1, region.N2) != state.dims:
        raise ConfigError("region frame does not match image dims")
    f = qft2d(state)
    mask = region_mask(region)
    stats = overlap_stats(f, mask, M)
    if stats.lam == 0.0:
        raise NothingToAmplifyError("empty region: no intensity inside the amplifying region")
    if lambda_floor is not None and stats.lam < lambda_floor:
        raise LambdaBelowFloor(stats.lam, lambda_floor)
    sched = schedule(choose_l(l, stats.lam, delta, lambda_floor), delta)
    f_out = run_iterations(f, mask, sched)
    t = target_state(f, mask)
    s_out = iqft2d(f_out)
    ref = iqft2d(t)
    return FilterOutcome(
        input_state=state,
        source=f,
        target=t,
        amplified=f_out,
        output=s_out,
        reference=ref,
        stats=stats,
        schedule=sched,
        minimal_l=min_sequence_length(stats.lam, delta)[0],
        success_probability=abs(inner_product(t, f_out)) ** 2,
        fidelity_to_reference=fidelity(ref, s_out),
        mask=mask,
    )


def load_source(config: FilterConfig) -> Source:
    if config.builtin is not None:
        return load_builtin(config.builtin, config.size, config.seed, config.noise_density)
    return Source(read_pgm(config.input_path))


def _encode(source: Source, homomorphic: bool) -> tuple[StateVector, float, dict]:
    image = homomorphic_pre(source.image) if homomorphic else source.image
    if source.rectangle is not None and not homomorphic:
        spec = source.rectangle
        state = prepare_rectangle(spec)
        cost = rectangle_encoder_cost(spec)
        M = float((spec.w + 1) * (spec.h + 1))
        return state, M, {"kind": "rectangle", **cost}
    state, M = encode_image(image)
    return state, M, {"kind": "dense", "total": dense_encoder_cost(state.n)}


def resource_report(n1: int, n2: int, l: int, encoder_cost: int, table_sides=None, encoder_for_side=None) -> dict:
    """Quantum and classical counts for one run, optionally with a scaling table.

    ``encoder_for_side`` maps an image side to the encoder cost used for the
    table rows (defaults to the dense encoder).
    """
    N1, N2 = 1 << n1, 1 << n2
    report = {
        "quantum": quantum_resources(n1, n2, l, encoder_cost),
        "classical": classical_resources(N1, N2),
    }
    if table_sides:
        rows = []
        for side in table_sides:
            m = int(side).bit_length() - 1
            enc = encoder_for_side(side) if encoder_for_side else dense_encoder_cost(2 * m)
            q = quantum_resources(m, m, l, enc)["total_cost"]
            fft_ops, mask_ops = classical_op_count(side, side)
            rows.append({
                "N": side * side,
                "quantum_cost": q,
                "classical_ops": fft_ops + mask_ops,
                "ratio": (fft_ops + mask_ops) / q,
            })
        report["scaling"] = rows
    return report


def run_filter(config: FilterConfig, timing: bool = False) -> tuple[ImageBuffer, FilterReport]:
    start = time.perf_counter()
    source = load_source(config)
    homomorphic = config.kind == "homomorphic"
    state, M, encoder = _encode(source, homomorphic)
    d1, d2 = config.bounds
    region = RegionSpec(d1, d2, *state.dims)
    outcome = quantum_filter(state, region, config.delta, config.l, config.lambda_floor, M)
    image = decode_state(outcome.output)
    if homomorphic:
        image = homomorphic_post(image)

    sched = outcome.schedule
    resources = resource_report(state.n1, state.n2, sched.l, encoder["total"])
    quantum = {**resources["quantum"], "encoder": encoder}
    params = {
        "kind": config.kind,
        "d1": d1,
        "d2": d2,
        "delta": config.delta,
        "l": config.l,
        "lambda_floor": config.lambda_floor,
        "source": config.input_path or f"builtin:{config.builtin}",
        "size": list(state.dims),
        "seed": config.seed,
    }
    if config.builtin == "noisy-rectangle":
        params["noise_density"] = config.noise_density
    report = FilterReport(
        lam=outcome.stats.lam,
        lambda_prime=outcome.stats.lam_prime,
        M=M,
        M_D=outcome.stats.M_D,
        schedule=sched.as_dict(),
        minimal_l=outcome.minimal_l,
        guaranteed=sched.l >= outcome.minimal_l,
        success_bound=1.0 - config.delta ** 2,
        success_probability=outcome.success_probability,
        predicted_success=sched.predicted_success(outcome.stats.lam),
        fidelity_to_reference=outcome.fidelity_to_reference,
        quantum=quantum,
        classical=resources["classical"],
        parameters=params,
        wall_time=time.perf_counter() - start if timing else None,
    )
    return image, report


# --- presets and the scaling study ----------------------------------------------

PRESETS = {
    "lowpass": dict(kind="lowpass", builtin="noisy-rectangle", d1=0.0, d2=35.0, delta=0.01, l=1),
    "highpass": dict(kind="highpass", builtin="rectangle", d1=5.0, d2=60.0, delta=0.01, l=5),
    "homomorphic": dict(kind="homomorphic", builtin="gradient-texture", d1=75.0, d2=90.0, delta=0.01, l=2),
    "rectangle": dict(kind="band", builtin="rectangle", d1=80.0, d2=140.0, delta=0.01, l=15),
}


def preset(name: str, **overrides) -> FilterConfig:
    try:
        base = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return FilterConfig(**{**base, **overrides})


FAMILIES = ("proportional", "fixed-rectangle")


def sweep(sides=(64, 128, 256, 512), family: str = "proportional", delta: float = 0.01) -> list[dict]:
    """Measured overlap, auto-selected length and costs across image sizes.

    ``proportional`` scales the rectangle and the region bounds with the
    side; ``fixed-rectangle`` keeps a 51x51 rectangle and scales only the
    region bounds.
    """
    if family not in FAMILIES:
        raise ConfigError(f"unknown family {family!r}")
    rows = []
    for side in sides:
        k = side / 256
        spec = scaled_rectangle(side) if family == "proportional" else centered_rectangle(side)
        region = RegionSpec(80 * k, 140 * k, side, side)
        state = prepare_rectangle(spec)
        stats = overlap_stats(qft2d(state), region_mask(region))
        l, L = min_sequence_length(stats.lam, delta)
        enc = rectangle_encoder_cost(spec)["total"]
        m = spec.n1
        q = quantum_resources(m, spec.n2, l, enc)
        fft_ops, mask_ops = classical_op_count(side, side)
        rows.append({
            "side": side,
            "N": side * side,
            "n": m + spec.n2,
            "w": spec.w,
            "x1": spec.x1,
            "d1": region.d1,
            "d2": region.d2,
            "lambda": stats.lam,
            "L": L,
            "l": l,
            "encoder_cost": enc,
            "iteration_cost": q["iteration_cost"],
            "quantum_cost": q["total_cost"],
            "classical_fft_ops": fft_ops,
            "classical_mask_ops": mask_ops,
        })
    return rows
