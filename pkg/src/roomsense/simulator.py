"""Synthetic RSSI trace generation for two adjacent rooms and three APs.

The signal model is log-distance path loss anchored at a reference received
power, plus a fixed per-wall attenuation and Gaussian shadowing noise.  All
access points belong to the right room (x >= 0), so a left-room device always
has one wall between itself and every AP.
"""

import math
import warnings
from dataclasses import dataclass

from ._seeds import generator
from .dataset import PointRecord, Trace, room_of

FT_TO_M = 0.3048

RSSI_FLOOR = -100
RSSI_CEILING = 0


@dataclass(frozen=True)
class SimConfig:
    """Geometry, collection protocol, and signal-model parameters.

    Rooms are rectangles that share the x = 0 wall: the left room spans
    x in (-room_left[0], 0), the right room x in (0, room_right[0]), both
    with y in (0, depth).  Dimensions are in feet.  interval_s records the
    sampling cadence of the collection protocol; the generator itself is
    timestamp-free, ordering samples by seq.
    """

    ap_positions: tuple[tuple[float, float], ...] = ((0.0, 0.0), (0.0, 21.0), (32.0, 0.0))
    room_right: tuple[float, float] = (35.0, 25.0)
    room_left: tuple[float, float] = (33.0, 25.0)
    devices_per_room: int = 10
    trials: int = 10
    samples_per_trial: int = 8
    interval_s: float = 4.0
    gamma: float = 2.5
    pl0_dbm: float = -40.0
    d0_m: float = 1.0
    wall_loss_db: float = 5.0
    noise_sigma_db: float = 4.0
    seed: int = 0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.d0_m <= 0:
            raise ValueError(f"d0_m must be > 0, got {self.d0_m}")
        if self.noise_sigma_db < 0:
            raise ValueError(f"noise_sigma_db must be >= 0, got {self.noise_sigma_db}")
        for name in ("room_right", "room_left"):
            width, depth = getattr(self, name)
            if width <= 0 or depth <= 0:
                raise ValueError(f"{name} dimensions must be positive, got {width}x{depth}")
        if len(self.ap_positions) != 3:
            raise ValueError("expected exactly three access points")
        if self.devices_per_room < 1 or self.trials < 1 or self.samples_per_trial < 1:
            raise ValueError("devices_per_room, trials and samples_per_trial must be >= 1")


def path_loss_db(d_m: float, gamma: float = 2.5, d0_m: float = 1.0) -> float:
    """Distance-dependent loss beyond the reference power: 10 * gamma * log10(d/d0).

    Distances below d0 clamp to d0 so the loss never goes negative.
    """
    if d0_m <= 0:
        raise ValueError(f"d0_m must be > 0, got {d0_m}")
    d_m = max(d_m, d0_m)
    return 10.0 * gamma * math.log10(d_m / d0_m)


def _side(x) -> str:
    # The APs sit in (or on the wall of) the right room, so x = 0 counts as right.
    return "left" if x < 0 else "right"


def sample_rssi(device_point_ft, ap_ft, cfg: SimConfig, rng) -> int:
    """Draw one integer RSSI reading for a device/AP geometry.

    Coordinates are feet; the model works in meters.  One wall attenuation is
    charged when device and AP are on opposite sides of the x = 0 partition.
    The result is rounded to the nearest dBm and clamped to [-100, 0].
    """
    dx = (device_point_ft[0] - ap_ft[0]) * FT_TO_M
    dy = (device_point_ft[1] - ap_ft[1]) * FT_TO_M
    d_m = math.hypot(dx, dy)
    walls = 0 if _side(device_point_ft[0]) == _side(ap_ft[0]) else 1
    level = (
        cfg.pl0_dbm
        - path_loss_db(d_m, cfg.gamma, cfg.d0_m)
        - walls * cfg.wall_loss_db
    )
    if cfg.noise_sigma_db > 0:
        level += rng.normal(0.0, cfg.noise_sigma_db)
    return int(min(RSSI_CEILING, max(RSSI_FLOOR, round(level))))


def _room_points(n, x_lo, x_hi, depth, rng):
    """n jittered grid points strictly inside the rectangle (x_lo, x_hi) x (0, depth)."""
    cols = math.ceil(math.sqrt(n))
    rows = math.ceil(n / cols)
    cell_w = (x_hi - x_lo) / cols
    cell_h = depth / rows
    points = []
    for idx in range(n):
        r, c = divmod(idx, cols)
        cx = x_lo + (c + 0.5) * cell_w
        cy = (r + 0.5) * cell_h
        # Jitter stays under half a cell, so points remain interior and distinct.
        x = cx + rng.uniform(-0.4, 0.4) * cell_w
        y = cy + rng.uniform(-0.4, 0.4) * cell_h
        points.append((x, y))
    return points


def generate(cfg: SimConfig) -> list[PointRecord]:
    """Generate point records for the configured geometry and protocol.

    Device placement and every (point, AP, trial) reading stream get their own
    deterministic RNG substream, so regeneration with the same config is exact
    and per-trace generation is order independent.
    """
    if cfg.devices_per_room < 2:
        warnings.warn(
            "devices_per_room < 2 leaves too few points per room to build pairs",
            stacklevel=2,
        )

    left_w, left_d = cfg.room_left
    right_w, right_d = cfg.room_right
    placements = _room_points(
        cfg.devices_per_room, -left_w, 0.0, left_d, generator(cfg.seed, "sim-place", "left")
    ) + _room_points(
        cfg.devices_per_room, 0.0, right_w, right_d, generator(cfg.seed, "sim-place", "right")
    )

    records = []
    for point_idx, point in enumerate(placements):
        traces = {}
        for ap_idx, ap in enumerate(cfg.ap_positions):
            ap_id = ap_idx + 1
            for trial in range(cfg.trials):
                rng = generator(cfg.seed, "sim-read", point_idx, ap_id, trial)
                values = [
                    sample_rssi(point, ap, cfg, rng) for _ in range(cfg.samples_per_trial)
                ]
                traces[(ap_id, trial)] = Trace(point, ap_id, trial, values)
        records.append(PointRecord(point, room_of(point[0]), traces))
    return records
