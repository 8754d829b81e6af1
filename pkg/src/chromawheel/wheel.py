"""Programmatic reference color wheel used to derive the default model.

The wheel is a disc of 20 pure-hue sectors, each swept radially from a
neutral gray core out to the most chromatic in-gamut color of its hue,
surrounded by a thin rim band that sweeps hue continuously at constant
CIELAB chroma. In the AB plane this paints one exactly-radial stroke per
sector plus a circle: the stroke tips give the chromogen bases, the
stroke/circle crossings give the outer branch-point band, and the strokes'
convergence near the origin gives the inner band.

Colors are computed in Lab and inverted to sRGB, keeping every pixel
mid-gamut so 8-bit quantization cannot scatter a stroke across histogram
bins. Regeneration is bit-deterministic.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from . import colorspace
from .colorspace import _RGB_TO_XYZ, _WHITE, _lab_f_inv

IMAGE_SIZE = 530
DISC_RADIUS = 240.0
RING_INNER = 246.0
RING_OUTER = 258.0

# CIELAB chroma of the rim band; the wheel's near-achromatic frontier.
# Must stay inside the sRGB gamut for every hue.
RING_CHROMA = 42.0

# Chroma grows with the square of the image radius; quadratic keeps the
# pixel count per AB histogram bin roughly constant along a stroke.
SWEEP_EXPONENT = 2.0

# CIELAB hue angles of the 20 sector strokes, ascending. Ten categories,
# two strokes each; the gap between strokes of adjacent categories stays
# above the 5-degree base-merge threshold.
SECTOR_ANGLES: tuple[float, ...] = (
    18.95, 25.15, 39.30, 45.50, 53.40, 60.10, 82.00, 89.30, 105.00, 119.50,
    160.00, 185.00, 200.00, 252.00, 291.80, 298.00, 304.50, 310.70, 327.65,
    333.85,
)

_L_GRID = np.arange(15.0, 95.0 + 1e-9, 0.25)


def _lab_to_linear_rgb(lab: np.ndarray) -> np.ndarray:
    """CIELAB -> linear RGB without clipping (for gamut checks)."""
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=-1) * _WHITE
    return xyz @ np.linalg.inv(_RGB_TO_XYZ).T


def _mid_gamut_lightness(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Midpoint of the in-gamut L range at each (A, B); NaN when empty."""
    lab = np.empty(a.shape + (len(_L_GRID), 3))
    lab[..., 0] = _L_GRID
    lab[..., 1] = a[..., None]
    lab[..., 2] = b[..., None]
    linear = _lab_to_linear_rgb(lab)
    valid = np.all((linear >= -1e-9) & (linear <= 1.0 + 1e-9), axis=-1)
    any_valid = valid.any(axis=-1)
    lo = _L_GRID[np.argmax(valid, axis=-1)]
    hi = _L_GRID[len(_L_GRID) - 1 - np.argmax(valid[..., ::-1], axis=-1)]
    mid = (lo + hi) / 2.0
    return np.where(any_valid, mid, np.nan)


def max_sector_chroma(angle_deg: float, step: float = 0.25) -> float:
    """Largest chroma (multiple of ``step``) still in gamut at this hue."""
    rad = np.radians(angle_deg)
    chromas = np.arange(step, 135.0, step)
    mid = _mid_gamut_lightness(chromas * np.cos(rad), chromas * np.sin(rad))
    valid = ~np.isnan(mid)
    if not valid[0]:
        raise ValueError(f"no in-gamut chroma at angle {angle_deg}")
    last = int(np.argmin(valid)) - 1 if not valid.all() else len(chromas) - 1
    return float(chromas[last])


def generate_reference_wheel() -> np.ndarray:
    """Render the reference wheel as an (H, W, 3) uint8 array."""
    size = IMAGE_SIZE
    center = (size - 1) / 2.0
    yy, xx = np.mgrid[0:size, 0:size]
    dx = xx - center
    dy = yy - center
    rho = np.hypot(dx, dy)
    phi = np.degrees(np.arctan2(dy, dx)) % 360.0

    img = np.full((size, size, 3), 255, dtype=np.uint8)

    # Sector disc: per-sector radial chroma sweep at mid-gamut lightness.
    # Chroma snaps to a 0.25-unit grid so lightness comes from a small
    # precomputed in-gamut table per sector.
    disc = rho <= DISC_RADIUS
    sector_width = 360.0 / len(SECTOR_ANGLES)
    sector_idx = np.minimum((phi / sector_width).astype(int), len(SECTOR_ANGLES) - 1)
    chroma_step = 0.25
    tables = []
    for angle in SECTOR_ANGLES:
        tip = max_sector_chroma(angle, step=chroma_step)
        grid = np.arange(0.0, tip + 1e-9, chroma_step)
        rad = np.radians(angle)
        mid = _mid_gamut_lightness(grid * np.cos(rad), grid * np.sin(rad))
        tables.append((grid, mid))
    k = sector_idx[disc]
    frac = (rho[disc] / DISC_RADIUS) ** SWEEP_EXPONENT
    lab = np.empty((int(disc.sum()), 3))
    for s, (grid, mid) in enumerate(tables):
        sel = k == s
        idx = np.minimum((frac[sel] * grid[-1] / chroma_step).astype(int), len(grid) - 1)
        rad = np.radians(SECTOR_ANGLES[s])
        lab[sel, 0] = mid[idx]
        lab[sel, 1] = grid[idx] * np.cos(rad)
        lab[sel, 2] = grid[idx] * np.sin(rad)
    img[disc] = colorspace.lab_array_to_srgb(lab)

    # Rim band: continuous hue at constant chroma. Targets snap to integer
    # AB values and each color is refined so its realized Lab lands on its
    # target, making the band's AB support an unbroken one-bin-wide circle.
    ring = (rho >= RING_INNER) & (rho <= RING_OUTER)
    rad = np.radians(phi[ring])
    a = np.round(RING_CHROMA * np.cos(rad))
    b = np.round(RING_CHROMA * np.sin(rad))
    img[ring] = _snapped_colors(a, b)

    return img


def _snapped_colors(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """sRGB colors whose realized (A, B) round back to the given integers."""
    targets = np.unique(np.stack([a, b], axis=-1), axis=0)
    lightness = _mid_gamut_lightness(targets[:, 0], targets[:, 1])
    if np.isnan(lightness).any():
        raise ValueError("rim band chroma leaves the sRGB gamut")
    lab = np.stack([lightness, targets[:, 0], targets[:, 1]], axis=-1)
    base = colorspace.lab_array_to_srgb(lab).astype(np.int16)
    # Refine each color over its +-1 RGB neighborhood to cancel the 8-bit
    # quantization drift in AB.
    offsets = np.array(
        [(dr, dg, db) for dr in (0, -1, 1) for dg in (0, -1, 1) for db in (0, -1, 1)]
    )
    cands = np.clip(base[:, None, :] + offsets[None, :, :], 0, 255)
    cand_lab = colorspace.srgb_array_to_lab(cands)
    err = np.hypot(
        cand_lab[..., 1] - targets[:, None, 0], cand_lab[..., 2] - targets[:, None, 1]
    )
    chosen = cands[np.arange(len(targets)), np.argmin(err, axis=1)].astype(np.uint8)
    lookup = {tuple(t): c for t, c in zip(map(tuple, targets), chosen)}
    out = np.empty((len(a), 3), dtype=np.uint8)
    for i, key in enumerate(zip(a, b)):
        out[i] = lookup[key]
    return out


def save_reference_wheel(path: str | Path) -> None:
    Image.fromarray(generate_reference_wheel(), mode="RGB").save(path, format="PNG")
