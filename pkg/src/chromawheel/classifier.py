"""Crisp per-pixel classification into the twelve categories.

Decision rule per pixel, from its polar AB coordinates:
  radius <= r1                          -> Neutral
  radius <= r2 and angle in brown sector -> Brown
  otherwise                              -> hue class whose angular
                                            interval contains the angle

Intervals are half-open [lower, upper); a pixel exactly on a boundary
belongs to the counterclockwise class. Classification is luminance
independent and embarrassingly parallel; a ColorModel is read-only here
and may be shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .categories import CategoryId
from .colorspace import lab_array_to_polar, srgb_array_to_lab
from .model import ColorModel

# Stable integer codes for label maps: enum declaration order.
CATEGORY_CODES: dict[CategoryId, int] = {c: i for i, c in enumerate(CategoryId)}
CODE_CATEGORIES: tuple[CategoryId, ...] = tuple(CategoryId)


@dataclass
class LabelMap:
    """Per-pixel category codes for one image."""

    labels: np.ndarray  # (H, W) int8, values are CATEGORY_CODES

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    def category_counts(self) -> dict[CategoryId, int]:
        counts = np.bincount(self.labels.ravel(), minlength=len(CODE_CATEGORIES))
        return {cat: int(counts[i]) for i, cat in enumerate(CODE_CATEGORIES)}


def _interval_lookup(model: ColorModel) -> tuple[np.ndarray, np.ndarray]:
    """Sorted boundary array with the category code of each interval.

    codes[i] labels angles in [boundaries[i], boundaries[i+1]); codes[-1]
    labels the wrap interval below boundaries[0] / above boundaries[-1].
    """
    bnd = np.asarray(model.boundaries)
    intervals = model.hue_intervals()
    codes = np.empty(len(bnd) + 1, dtype=np.int8)
    for i, (_lower, _upper, cat) in enumerate(intervals):
        codes[i + 1] = CATEGORY_CODES[cat]
    # Below the first boundary is the tail of the wrap interval.
    codes[0] = CATEGORY_CODES[intervals[-1][2]]
    return bnd, codes


def classify_polar(
    radius: np.ndarray, angle: np.ndarray, model: ColorModel
) -> np.ndarray:
    """Vectorized crisp classification of polar AB coordinates."""
    radius = np.asarray(radius)
    angle = np.asarray(angle)
    bnd, codes = _interval_lookup(model)
    idx = np.searchsorted(bnd, angle, side="right")
    labels = codes[idx].astype(np.int8)
    lo, hi = model.brown_sector
    in_sector = (angle >= lo) & (angle < hi)
    labels = np.where(
        (radius > model.r1) & (radius <= model.r2) & in_sector,
        CATEGORY_CODES[CategoryId.BROWN],
        labels,
    )
    labels = np.where(radius <= model.r1, CATEGORY_CODES[CategoryId.NEUTRAL], labels)
    return labels.astype(np.int8)


def classify_point(p, model: ColorModel) -> CategoryId:
    """Classify one polar point (anything with .radius and .angle)."""
    code = classify_polar(np.array([p.radius]), np.array([p.angle]), model)[0]
    return CODE_CATEGORIES[code]


def classify_image(image_rgb: np.ndarray, model: ColorModel) -> LabelMap:
    """Classify every pixel of an (H, W, 3) uint8 sRGB image."""
    img = np.asarray(image_rgb)
    if img.size == 0:
        raise ValueError("empty image")
    if img.ndim != 3 or img.shape[-1] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB image, got shape {img.shape}")
    lab = srgb_array_to_lab(img)
    radius, angle = lab_array_to_polar(lab)
    return LabelMap(labels=classify_polar(radius, angle, model))


def masks_from_labels(lm: LabelMap) -> dict[CategoryId, np.ndarray]:
    """One boolean mask per category; together they partition the image."""
    return {
        cat: lm.labels == CATEGORY_CODES[cat]
        for cat in CODE_CATEGORIES
    }


def reclassify_with_overrides(
    image_rgb: np.ndarray,
    model: ColorModel,
    boundaries: list[float] | None = None,
    boundary_edits: dict[int, float] | None = None,
    r1: float | None = None,
    r2: float | None = None,
) -> tuple[LabelMap, ColorModel]:
    """Classify under an edited model; the base model is untouched.

    Returns the new label map together with the override model. Raises
    ModelInvariantError for edits that violate model invariants.
    """
    edited = model.with_overrides(
        boundaries=boundaries, boundary_edits=boundary_edits, r1=r1, r2=r2
    )
    return classify_image(image_rgb, edited), edited
