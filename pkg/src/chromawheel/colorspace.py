"""sRGB to CIELAB conversion and the polar AB representation.

Conversion chain: 8-bit sRGB -> linear RGB -> XYZ (D65, 2 degree observer)
-> CIELAB -> polar (radius, angle). All classification downstream happens
on (radius, angle); L is carried through for reporting only.

Everything is computed in float64; channel quantization exists only at the
image I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Linear sRGB -> XYZ, D65 white, 2 degree standard observer (IEC 61966-2-1).
_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])

_XYZ_TO_RGB = np.linalg.inv(_RGB_TO_XYZ)

# D65 reference white (sRGB native; no chromatic adaptation needed).
_WHITE = np.array([0.95047, 1.0, 1.08883])

_EPS = 216.0 / 24389.0   # CIE epsilon
_KAPPA = 24389.0 / 27.0  # CIE kappa


@dataclass(frozen=True)
class LabColor:
    """A CIELAB color: L in [0, 100], A/B opponent axes (finite)."""

    L: float
    A: float
    B: float


@dataclass(frozen=True)
class PolarPixel:
    """Chroma radius sqrt(A^2+B^2), hue angle in degrees [0, 360), plus L."""

    radius: float
    angle: float
    L: float


def srgb_to_linear(channels: np.ndarray) -> np.ndarray:
    """Decode sRGB gamma. Input in [0, 1]."""
    channels = np.asarray(channels, dtype=np.float64)
    return np.where(
        channels <= 0.04045,
        channels / 12.92,
        ((channels + 0.055) / 1.055) ** 2.4,
    )


def linear_to_srgb(linear: np.ndarray) -> np.ndarray:
    """Encode linear RGB with the sRGB curve, clipping into [0, 1]."""
    linear = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    return np.where(
        linear <= 0.0031308,
        linear * 12.92,
        1.055 * linear ** (1.0 / 2.4) - 0.055,
    )


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _EPS, np.cbrt(t), (_KAPPA * t + 16.0) / 116.0)


def _lab_f_inv(f: np.ndarray) -> np.ndarray:
    f3 = f ** 3
    return np.where(f3 > _EPS, f3, (116.0 * f - 16.0) / _KAPPA)


def srgb_array_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Convert an array of 8-bit sRGB triples to CIELAB.

    Accepts any shape (..., 3) of integers in [0, 255]; returns float64
    (..., 3) with L, A, B.
    """
    rgb = np.asarray(rgb)
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected trailing axis of size 3, got shape {rgb.shape}")
    linear = srgb_to_linear(rgb.astype(np.float64) / 255.0)
    xyz = linear @ _RGB_TO_XYZ.T
    f = _lab_f(xyz / _WHITE)
    lab = np.empty_like(f)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def lab_array_to_srgb(lab: np.ndarray) -> np.ndarray:
    """Convert CIELAB triples back to 8-bit sRGB, clipping out-of-gamut values.

    Used for rendering swatches; the analysis path never round-trips.
    """
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=-1) * _WHITE
    linear = xyz @ _XYZ_TO_RGB.T
    return np.round(linear_to_srgb(linear) * 255.0).astype(np.uint8)


def srgb_to_lab(r: int, g: int, b: int) -> LabColor:
    """Convert one 8-bit sRGB pixel to CIELAB."""
    for name, v in (("r", r), ("g", g), ("b", b)):
        if not 0 <= v <= 255:
            raise ValueError(f"channel {name}={v} outside [0, 255]")
    L, A, B = srgb_array_to_lab(np.array([r, g, b]))
    return LabColor(float(L), float(A), float(B))


def lab_to_polar(c: LabColor) -> PolarPixel:
    """Project a LabColor onto the polar AB plane.

    Angle 0 lies on the positive-A axis, increasing counterclockwise toward
    positive B. At A = B = 0 the angle is 0 by convention (the point is
    achromatic and the angle is never consulted there).
    """
    radius = float(np.hypot(c.A, c.B))
    if radius == 0.0:
        return PolarPixel(0.0, 0.0, c.L)
    angle = float(np.degrees(np.arctan2(c.B, c.A)) % 360.0)
    if angle >= 360.0:  # % can round up from a tiny negative input
        angle = 0.0
    return PolarPixel(radius, angle, c.L)


def lab_array_to_polar(lab: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (radius, angle) of Lab triples; angle in degrees [0, 360)."""
    A = lab[..., 1]
    B = lab[..., 2]
    radius = np.hypot(A, B)
    angle = np.degrees(np.arctan2(B, A)) % 360.0
    angle = np.where(radius == 0.0, 0.0, angle)
    # % can return 360.0 exactly when atan2 yields a tiny negative angle
    angle = np.where(angle >= 360.0, 0.0, angle)
    return radius, angle


def polar_to_ab(radius: float, angle: float) -> tuple[float, float]:
    """Reconstruct (A, B) from polar coordinates."""
    rad = np.radians(angle)
    return float(radius * np.cos(rad)), float(radius * np.sin(rad))


def hue_angle_of_srgb(r: int, g: int, b: int) -> float:
    """Hue angle in the AB plane of one sRGB color."""
    return lab_to_polar(srgb_to_lab(r, g, b)).angle
