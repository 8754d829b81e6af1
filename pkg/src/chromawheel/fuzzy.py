"""Fuzzy color space: graded membership and percentage-composition naming.

Angular membership per hue class is a piecewise-linear trapezoid anchored
on the class peak: 1 at the peak plateau, 0.5 at the class boundaries, 0
at the neighboring peaks. Radial membership splits chroma into achromatic
(crisp, inside r1), near-achromatic (1 out to r2', ramping to 0 at r3) and
chromatic (ramping 0 to 1 over the same span). Near-achromatic and
chromatic sum to one beyond r1, so every point is fully accounted for.

A shade's name is the normalized percentage composition of its nonzero
memberships; inside the warm quadrant the near-achromatic share reads as
Brown, elsewhere it folds into the hue classes (dark green stays Green).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .categories import CategoryId, HUE_CATEGORIES
from .classifier import CATEGORY_CODES, CODE_CATEGORIES, LabelMap
from .colorspace import lab_array_to_srgb, srgb_array_to_lab
from .model import ColorModel, ModelInvariantError

# Composition entries below this share are dropped and the rest renormalized.
MIN_COMPOSITION_PCT = 0.5

# Lab quantization step for the shade summary.
SHADE_QUANT_STEP = 5.0

TOP_SHADES = 10


@dataclass(frozen=True)
class AngularMembership:
    """Trapezoid knots for one hue class, unwrapped so a < b <= c <= d <= e < g.

    a/g are the neighboring class peaks, b/e the class boundaries, c/d the
    plateau edges around this class's peak.
    """

    category: CategoryId
    a: float
    b: float
    c: float
    d: float
    e: float
    g: float

    def __post_init__(self):
        if not (self.a < self.b <= self.c <= self.d <= self.e < self.g):
            raise ModelInvariantError(
                "membership_knots",
                f"need a < b <= c <= d <= e < g, got {self}",
            )

    def __call__(self, theta) -> np.ndarray | float:
        return angular_membership(theta, self)


def angular_membership(theta, f: AngularMembership):
    """Evaluate the trapezoid at angle(s) theta, wrap-aware."""
    theta = np.asarray(theta, dtype=float)
    t = f.a + np.mod(theta - f.a, 360.0)
    rising = (t - f.a) / (2.0 * (f.b - f.a))
    upper_rise = np.divide(
        t - 2.0 * f.b + f.c,
        2.0 * (f.c - f.b),
        out=np.ones_like(t),
        where=f.c > f.b,
    )
    upper_fall = np.divide(
        t - 2.0 * f.e + f.d,
        2.0 * (f.d - f.e),
        out=np.ones_like(t),
        where=f.d < f.e,
    )
    falling = (t - f.g) / (2.0 * (f.e - f.g))
    value = np.select(
        [
            (t <= f.a) | (t >= f.g),
            (t >= f.c) & (t <= f.d),
            t < f.b,
            t < f.c,
            t < f.e,
        ],
        [0.0, 1.0, rising, upper_rise, upper_fall],
        default=falling,
    )
    return value if value.shape else float(value)


def build_angular_memberships(model: ColorModel) -> dict[CategoryId, AngularMembership]:
    """Instantiate the ten trapezoids from a model's peaks and boundaries."""
    groups = model.hue_groups()
    peaks = model.group_peaks()
    intervals = {cat: model.category_interval(cat) for cat, _ in groups}
    order = sorted(groups, key=lambda g: peaks[g[0]])
    w = model.plateau_halfwidth_deg
    out = {}
    for i, (cat, _members) in enumerate(order):
        prev_cat = order[i - 1][0]
        next_cat = order[(i + 1) % len(order)][0]
        lower, upper = intervals[cat]
        b = lower
        a = b - ((b - peaks[prev_cat]) % 360.0)
        peak = b + ((peaks[cat] - b) % 360.0)
        e = b + ((upper - b) % 360.0)
        g = b + ((peaks[next_cat] - b) % 360.0)
        c = max(b, peak - w)
        d = min(e, peak + w)
        out[cat] = AngularMembership(category=cat, a=a, b=b, c=c, d=d, e=e, g=g)
    return out


def radial_memberships(r, model: ColorModel):
    """(achromatic, near_achromatic, chromatic) degrees at radius r."""
    r = np.asarray(r, dtype=float)
    r1, r2p, r3 = model.r1, model.r2_prime, model.r3
    ach = np.where(r <= r1, 1.0, 0.0)
    ramp_down = (r3 - r) / (r3 - r2p)
    near = np.select(
        [r <= r1, r <= r2p, r < r3],
        [0.0, 1.0, ramp_down],
        default=0.0,
    )
    chrom = np.select(
        [r <= r2p, r < r3],
        [0.0, (r - r2p) / (r3 - r2p)],
        default=1.0,
    )
    if ach.shape:
        return ach, near, chrom
    return float(ach), float(near), float(chrom)


@dataclass(frozen=True)
class MembershipVector:
    """Per-category degrees plus the normalized percentage composition."""

    degrees: dict[CategoryId, float]
    composition: tuple[tuple[CategoryId, float], ...]  # (category, pct), desc

    def text(self, final_conjunction: bool = False) -> str:
        return format_composition(self.composition, final_conjunction)


def format_composition(
    entries: tuple[tuple[CategoryId, float], ...], final_conjunction: bool = False
) -> str:
    parts = [f"{pct:.2f}% {cat.display_name}" for cat, pct in entries]
    if final_conjunction and len(parts) > 1:
        return ", ".join(parts[:-1]) + " and " + parts[-1]
    return ", ".join(parts)


def _normalize(degrees: dict[CategoryId, float]) -> tuple[tuple[CategoryId, float], ...]:
    total = sum(degrees.values())
    if total <= 0.0:
        return ()
    pct = {cat: 100.0 * d / total for cat, d in degrees.items() if d > 0.0}
    kept = {cat: p for cat, p in pct.items() if p >= MIN_COMPOSITION_PCT}
    if not kept:  # everything tiny; keep the largest
        top = max(pct, key=pct.get)
        kept = {top: pct[top]}
    scale = 100.0 / sum(kept.values())
    ordered = sorted(kept.items(), key=lambda cp: (-cp[1], CATEGORY_CODES[cp[0]]))
    return tuple((cat, p * scale) for cat, p in ordered)


def compose_name(
    p,
    model: ColorModel,
    memberships: dict[CategoryId, AngularMembership] | None = None,
) -> MembershipVector:
    """Percentage composition of one polar point (has .radius and .angle)."""
    if memberships is None:
        memberships = build_angular_memberships(model)
    if p.radius <= model.r1:
        return MembershipVector(
            degrees={CategoryId.NEUTRAL: 1.0},
            composition=((CategoryId.NEUTRAL, 100.0),),
        )
    _ach, near, chrom = radial_memberships(p.radius, model)
    lo, hi = model.brown_sector
    in_sector = lo <= p.angle < hi
    hue_scale = chrom if in_sector else near + chrom
    degrees: dict[CategoryId, float] = {}
    for cat in HUE_CATEGORIES:
        d = float(memberships[cat](p.angle)) * hue_scale
        if d > 0.0:
            degrees[cat] = d
    if in_sector and near > 0.0:
        degrees[CategoryId.BROWN] = near
    return MembershipVector(degrees=degrees, composition=_normalize(degrees))


@dataclass(frozen=True)
class ShadeEntry:
    lab: tuple[float, float, float]  # quantized (L, A, B)
    count: int
    composition: tuple[tuple[CategoryId, float], ...]
    composition_text: str
    swatch: str  # hex sRGB of the quantized shade


@dataclass(frozen=True)
class ShadeSummary:
    """Top shades per category plus exact per-category pixel totals."""

    per_category: dict[CategoryId, tuple[ShadeEntry, ...]]
    category_totals: dict[CategoryId, int]


class _Polar:
    __slots__ = ("radius", "angle")

    def __init__(self, radius: float, angle: float):
        self.radius = radius
        self.angle = angle


def summarize_shades(
    image_rgb: np.ndarray,
    labels: LabelMap,
    model: ColorModel,
    max_shades: int = TOP_SHADES,
    quant_step: float = SHADE_QUANT_STEP,
) -> ShadeSummary:
    """Top shades per category: quantize Lab, count, name the leaders.

    Compositions and swatches are derived only for the kept entries, so
    the cost stays flat even for images with many distinct shades.
    """
    img = np.asarray(image_rgb)
    lab = srgb_array_to_lab(img.reshape(-1, 3))
    quant = np.round(lab / quant_step).astype(np.int64)
    # pack (label, qL, qA, qB) into one int64 so the unique pass is 1D
    offset = 512
    keys = (
        (labels.labels.reshape(-1).astype(np.int64) << 33)
        | ((quant[:, 0] + offset) << 22)
        | ((quant[:, 1] + offset) << 11)
        | (quant[:, 2] + offset)
    )
    uniq, counts = np.unique(keys, return_counts=True)
    memberships = build_angular_memberships(model)
    per_cat: dict[CategoryId, list[tuple[int, tuple]]] = {}
    totals: dict[CategoryId, int] = {}
    for key, count in zip(uniq, counts):
        cat = CODE_CATEGORIES[int(key) >> 33]
        lab_q = tuple(
            float(((int(key) >> shift) & 0x7FF) - offset) * quant_step
            for shift in (22, 11, 0)
        )
        per_cat.setdefault(cat, []).append((-int(count), lab_q))
        totals[cat] = totals.get(cat, 0) + int(count)
    out = {}
    for cat, rows in per_cat.items():
        rows.sort()
        kept = rows[:max_shades]
        swatch_rgb = lab_array_to_srgb(np.array([lab_q for _n, lab_q in kept]))
        entries = []
        for (neg, lab_q), rgb in zip(kept, swatch_rgb):
            radius = float(np.hypot(lab_q[1], lab_q[2]))
            angle = float(np.degrees(np.arctan2(lab_q[2], lab_q[1])) % 360.0)
            vec = compose_name(_Polar(radius, angle), model, memberships)
            entries.append(
                ShadeEntry(
                    lab=lab_q,
                    count=-neg,
                    composition=vec.composition,
                    composition_text=vec.text(),
                    swatch="#{:02X}{:02X}{:02X}".format(*rgb),
                )
            )
        out[cat] = tuple(entries)
    return ShadeSummary(per_category=out, category_totals=totals)
