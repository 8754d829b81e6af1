"""Geometric derivation of the color model from a reference wheel image.

Pipeline: AB occupancy histogram -> thinning to a skeleton -> endpoints
become chromogen base rays, branch points become the critical radii ->
bisectors between adjacent base groups become the category boundaries.

The ten hue groups are found without labels: every merged base is assigned
to the hue category whose sRGB anchor landmark lies nearest in hue angle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .categories import CategoryId, HUE_CATEGORIES
from .colorspace import srgb_array_to_lab
from .model import ChromogenBase, ColorModel, ModelInvariantError
from .thinning import neighbor_counts, prune_spurs, thin

# AB extent the histogram must cover; the full sRGB gamut fits inside.
AB_SPAN = 110.0

# Endpoint rays closer than this are treated as one chromogen base.
MERGE_THRESHOLD_DEG = 5.0

# Skeleton endpoints inside the near-neutral core are thinning artifacts of
# the converging spokes, not chromogen tips.
MIN_ENDPOINT_RADIUS = 15.0

# Branch-point radius bands must be separated by at least this much.
MIN_BAND_GAP = 5.0

# Skeleton spurs up to this many pixels are rasterization nubs, not tips.
SPUR_PRUNE_LENGTH = 3

# Half-width of the fuzzy ramp around r2, in AB units.
RADIAL_RAMP_HALF_WIDTH = 5.0

# Hue anchor landmarks: canonical sRGB primaries/secondaries plus derived
# intermediates; a base joins the category of its nearest anchor angle.
ANCHOR_LANDMARKS: dict[CategoryId, tuple[tuple[int, int, int], ...]] = {
    CategoryId.RED: ((255, 0, 0),),
    CategoryId.DEEP_ORANGE: ((255, 64, 0),),
    CategoryId.LIGHT_ORANGE: ((255, 165, 0),),
    CategoryId.YELLOW: ((255, 255, 0),),
    CategoryId.GREEN: ((0, 255, 0),),
    CategoryId.TEAL: ((0, 255, 255),),
    CategoryId.BLUE: ((0, 191, 255), (0, 128, 255)),
    CategoryId.ULTRAMARINE: ((0, 0, 255),),
    CategoryId.PURPLE: ((128, 0, 255), (191, 0, 255)),
    CategoryId.PINK: ((255, 0, 192), (255, 0, 128)),
}


@dataclass
class AbHistogram:
    """2D occupancy counts over (A, B), origin centered on a bin center."""

    counts: np.ndarray  # shape (2n+1, 2n+1), axis 0 = A, axis 1 = B
    bin_size: float

    @property
    def half_bins(self) -> int:
        return (self.counts.shape[0] - 1) // 2

    def bin_center(self, ia: int, ib: int) -> tuple[float, float]:
        n = self.half_bins
        return ((ia - n) * self.bin_size, (ib - n) * self.bin_size)


@dataclass
class SkeletonGraph:
    """Skeleton pixels of a histogram with their endpoint/branch labels.

    Adjacent branch pixels describe one junction, so branch_points holds a
    single representative pixel per 8-connected component of them;
    branch_pixels keeps the raw set.
    """

    skeleton: np.ndarray        # bool grid, same shape as the histogram
    endpoints: np.ndarray       # (N, 2) bin indices, exactly one 8-neighbor
    branch_points: np.ndarray   # (M, 2) bin indices, one per junction
    branch_pixels: np.ndarray   # (K, 2) bin indices, >= 3 neighbors
    bin_size: float

    def _polar(self, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = (self.skeleton.shape[0] - 1) // 2
        a = (idx[:, 0] - n) * self.bin_size
        b = (idx[:, 1] - n) * self.bin_size
        return np.hypot(a, b), np.degrees(np.arctan2(b, a)) % 360.0

    def endpoint_polar(self) -> tuple[np.ndarray, np.ndarray]:
        """(radius, angle) of the ray from the AB origin to each endpoint."""
        return self._polar(self.endpoints)

    def branch_radii(self) -> np.ndarray:
        return self._polar(self.branch_points)[0]


def build_histogram(
    wheel_image: np.ndarray,
    bin_size: float = 1.0,
    occupancy_fraction: float = 1e-4,
) -> AbHistogram:
    """Accumulate the double AB histogram of an RGB image.

    Bins with fewer pixels than ``occupancy_fraction`` of the image (and
    never fewer than 1) are zeroed to suppress speckle.
    """
    img = np.asarray(wheel_image)
    if img.size == 0:
        raise ValueError("empty input")
    if img.ndim != 3 or img.shape[-1] != 3:
        raise ValueError(f"expected an RGB pixel grid, got shape {img.shape}")
    lab = srgb_array_to_lab(img.reshape(-1, 3))
    n = int(np.ceil(AB_SPAN / bin_size))
    size = 2 * n + 1
    ia = np.clip(np.round(lab[:, 1] / bin_size).astype(np.int64) + n, 0, size - 1)
    ib = np.clip(np.round(lab[:, 2] / bin_size).astype(np.int64) + n, 0, size - 1)
    counts = np.bincount(ia * size + ib, minlength=size * size).reshape(size, size)
    threshold = max(1.0, occupancy_fraction * img.shape[0] * img.shape[1])
    counts[counts < threshold] = 0
    return AbHistogram(counts=counts, bin_size=bin_size)


def _junction_representatives(branch_pixels: np.ndarray) -> np.ndarray:
    """One pixel per 8-connected component of branch pixels.

    The representative is the member nearest its component's centroid,
    ties broken by (row, col), so the choice is deterministic.
    """
    if len(branch_pixels) == 0:
        return branch_pixels
    pixels = [tuple(p) for p in branch_pixels]
    index = {p: i for i, p in enumerate(pixels)}
    seen = set()
    reps = []
    for start in pixels:
        if start in seen:
            continue
        component = []
        stack = [start]
        seen.add(start)
        while stack:
            y, x = stack.pop()
            component.append((y, x))
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    q = (y + dy, x + dx)
                    if q in index and q not in seen:
                        seen.add(q)
                        stack.append(q)
        cy = sum(p[0] for p in component) / len(component)
        cx = sum(p[1] for p in component) / len(component)
        reps.append(
            min(component, key=lambda p: ((p[0] - cy) ** 2 + (p[1] - cx) ** 2, p))
        )
    return np.array(sorted(reps))


def skeletonize(h: AbHistogram) -> SkeletonGraph:
    """Thin the occupied histogram bins and classify endpoints/junctions."""
    if not np.any(h.counts):
        raise ValueError("no chromatic content")
    skeleton = thin(h.counts > 0)
    skeleton = prune_spurs(skeleton, SPUR_PRUNE_LENGTH)
    counts = neighbor_counts(skeleton)
    endpoints = np.argwhere(skeleton & (counts == 1))
    branch_pixels = np.argwhere(skeleton & (counts >= 3))
    return SkeletonGraph(
        skeleton=skeleton,
        endpoints=endpoints,
        branch_points=_junction_representatives(branch_pixels),
        branch_pixels=branch_pixels,
        bin_size=h.bin_size,
    )


def circular_gap(lo: float, hi: float) -> float:
    """Forward angular distance from lo to hi, in [0, 360)."""
    return (hi - lo) % 360.0


def circular_distance(x: float, y: float) -> float:
    """Shortest angular distance between two angles."""
    d = abs(x - y) % 360.0
    return min(d, 360.0 - d)


def circular_mean(angles: np.ndarray) -> float:
    rad = np.radians(np.asarray(angles, dtype=float))
    mean = np.degrees(np.arctan2(np.sin(rad).sum(), np.cos(rad).sum()))
    return float(mean % 360.0)


def merge_base_angles(
    angles: np.ndarray, threshold_deg: float = MERGE_THRESHOLD_DEG
) -> list[float]:
    """Merge ray angles closer than the threshold into their circular means.

    Clustering chains consecutive sorted angles whose circular gap is below
    the threshold, wrapping across 0. Idempotent: merged angles are at
    least ``threshold_deg`` apart.
    """
    angles = np.sort(np.asarray(angles, dtype=float) % 360.0)
    if len(angles) == 0:
        return []
    if len(angles) == 1:
        return [float(angles[0])]
    gaps = np.diff(np.concatenate([angles, [angles[0] + 360.0]]))
    # Build chains of consecutive angles with sub-threshold gaps.
    breaks = np.nonzero(gaps >= threshold_deg)[0]
    if len(breaks) == 0:
        return [circular_mean(angles)]
    clusters = []
    start = (breaks[-1] + 1) % len(angles)
    ordered = np.roll(angles, -start)
    ordered_gaps = np.roll(gaps, -start)
    current = [ordered[0]]
    for i in range(1, len(ordered)):
        if ordered_gaps[i - 1] < threshold_deg:
            current.append(ordered[i])
        else:
            clusters.append(current)
            current = [ordered[i]]
    clusters.append(current)
    return sorted(circular_mean(np.array(c)) for c in clusters)


def anchor_angles() -> list[tuple[float, CategoryId]]:
    """(angle, category) for every anchor landmark, computed through Lab."""
    out = []
    for cat, landmarks in ANCHOR_LANDMARKS.items():
        lab = srgb_array_to_lab(np.array(landmarks, dtype=float))
        theta = np.degrees(np.arctan2(lab[:, 2], lab[:, 1])) % 360.0
        out.extend((float(t), cat) for t in theta)
    return out


def assign_category(angle: float) -> CategoryId:
    """Hue category of the nearest anchor landmark."""
    best = min(anchor_angles(), key=lambda ac: circular_distance(angle, ac[0]))
    return best[1]


def extract_bases(
    g: SkeletonGraph,
    merge_threshold_deg: float = MERGE_THRESHOLD_DEG,
    min_endpoint_radius: float = MIN_ENDPOINT_RADIUS,
) -> list[ChromogenBase]:
    """Chromogen bases: merged endpoint rays with hue categories attached."""
    radii, angles = g.endpoint_polar()
    angles = angles[radii >= min_endpoint_radius]
    if len(angles) < 2:
        raise ValueError("degenerate skeleton: fewer than two usable endpoints")
    merged = merge_base_angles(angles, merge_threshold_deg)
    return [ChromogenBase(angle=a, category=assign_category(a)) for a in merged]


def compute_boundaries(bases: list[ChromogenBase]) -> list[float]:
    """Bisector boundaries between angularly adjacent bases of different
    categories. Within-category neighbors produce no boundary."""
    if len(bases) < 2:
        raise ValueError("need at least two bases")
    ordered = sorted(bases, key=lambda b: b.angle)
    boundaries = []
    for i, base in enumerate(ordered):
        nxt = ordered[(i + 1) % len(ordered)]
        if base.category is nxt.category:
            continue
        gap = circular_gap(base.angle, nxt.angle)
        boundaries.append((base.angle + gap / 2.0) % 360.0)
    return sorted(boundaries)


def compute_radii(g: SkeletonGraph) -> tuple[float, float, float, float]:
    """Critical radii (r1, r2, r2', r3) from the branch-point radius bands.

    Branch radii are split at their largest gap into an inner and an outer
    band; r1 and r2 are the band means, and the fuzzy ramp ends sit 5 AB
    units to either side of r2.
    """
    radii = np.sort(g.branch_radii())
    if len(radii) < 2:
        raise ValueError(
            f"radii not identifiable: need branch points in two radius bands, "
            f"got radii {radii.round(2).tolist()}"
        )
    gaps = np.diff(radii)
    split = int(np.argmax(gaps))
    if gaps[split] < MIN_BAND_GAP:
        raise ValueError(
            f"radii not identifiable: no gap >= {MIN_BAND_GAP} between radius "
            f"bands, got radii {radii.round(2).tolist()}"
        )
    r1 = float(radii[: split + 1].mean())
    r2 = float(radii[split + 1 :].mean())
    r2_prime = r2 - RADIAL_RAMP_HALF_WIDTH
    r3 = r2 + RADIAL_RAMP_HALF_WIDTH
    if not 0.0 < r1 < r2_prime:
        raise ModelInvariantError(
            "radii_ordering", f"need 0 < r1 < r2' < r2 < r3, got r1={r1:.3f} r2={r2:.3f}"
        )
    return r1, r2, r2_prime, r3


def build_model(wheel_image: np.ndarray, bin_size: float = 1.0) -> ColorModel:
    """Run the full knowledge pipeline on a reference wheel image."""
    hist = build_histogram(wheel_image, bin_size=bin_size)
    occupied = np.argwhere(hist.counts > 0)
    n = hist.half_bins
    radii = np.hypot(occupied[:, 0] - n, occupied[:, 1] - n) * hist.bin_size
    if len(radii) == 0 or radii.max() < MIN_ENDPOINT_RADIUS:
        raise ValueError("no chromatic content")
    graph = skeletonize(hist)
    bases = extract_bases(graph)
    hue_cats = {b.category for b in bases}
    missing = [c.value for c in HUE_CATEGORIES if c not in hue_cats]
    if missing:
        raise ValueError(f"wheel image does not cover hue categories: {missing}")
    boundaries = compute_boundaries(bases)
    r1, r2, r2_prime, r3 = compute_radii(graph)
    model = ColorModel(
        bases=sorted(bases, key=lambda b: b.angle),
        boundaries=boundaries,
        r1=r1,
        r2=r2,
        r2_prime=r2_prime,
        r3=r3,
    )
    model.validate()
    return model
