"""The color model: chromogen bases, category boundaries, critical radii.

A model is immutable once validated and can be shared freely across
threads. Boundary/radius overrides produce a new model; the original is
never touched.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .categories import CategoryId, HUE_CATEGORIES, is_hue_category, parse_category

MODEL_FORMAT_VERSION = 1


class ModelInvariantError(ValueError):
    """A model edit or file violates a structural constraint.

    ``constraint`` carries the machine-readable name of the violated
    invariant; the message explains it.
    """

    def __init__(self, constraint: str, message: str):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


@dataclass(frozen=True)
class ChromogenBase:
    """A pure-hue ray: angle of a merged skeleton endpoint plus its category."""

    angle: float
    category: CategoryId

    def __post_init__(self):
        if not is_hue_category(self.category):
            raise ModelInvariantError(
                "base_category", f"base category must be a hue class, got {self.category}"
            )


@dataclass(frozen=True)
class ColorModel:
    bases: list[ChromogenBase]
    boundaries: list[float]
    r1: float
    r2: float
    r2_prime: float
    r3: float
    brown_sector: tuple[float, float] = (0.0, 90.0)
    plateau_halfwidth_deg: float = 0.0

    # ----- structure -----------------------------------------------------

    def hue_groups(self) -> list[tuple[CategoryId, list[ChromogenBase]]]:
        """Contiguous same-category runs of bases, in circular angle order.

        The run containing the wrap joins the start and end of the sorted
        base list when both share a category.
        """
        ordered = sorted(self.bases, key=lambda b: b.angle)
        if not ordered:
            return []
        groups: list[tuple[CategoryId, list[ChromogenBase]]] = []
        for base in ordered:
            if groups and groups[-1][0] is base.category:
                groups[-1][1].append(base)
            else:
                groups.append((base.category, [base]))
        if len(groups) > 1 and groups[0][0] is groups[-1][0]:
            cat, tail = groups.pop()
            groups[0] = (cat, tail + groups[0][1])
        return groups

    def group_peaks(self) -> dict[CategoryId, float]:
        """Peak angle per hue category: circular mean of its group's bases."""
        peaks = {}
        for cat, members in self.hue_groups():
            rad = np.radians([b.angle for b in members])
            peaks[cat] = float(
                np.degrees(np.arctan2(np.sin(rad).sum(), np.cos(rad).sum())) % 360.0
            )
        return peaks

    def hue_intervals(self) -> list[tuple[float, float, CategoryId]]:
        """Half-open [lower, upper) angular intervals covering the circle.

        Interval k runs from boundaries[k] to boundaries[k+1] (wrapping) and
        belongs to the category of the bases inside it.
        """
        bnd = self.boundaries
        intervals = []
        for i, lower in enumerate(bnd):
            upper = bnd[(i + 1) % len(bnd)]
            inside = [
                b.category
                for b in self.bases
                if (b.angle - lower) % 360.0 < (upper - lower) % 360.0
            ]
            if not inside or any(c is not inside[0] for c in inside):
                raise ModelInvariantError(
                    "interval_category",
                    f"interval [{lower:.3f}, {upper:.3f}) does not contain exactly "
                    f"one base group",
                )
            intervals.append((lower, upper, inside[0]))
        return intervals

    def category_interval(self, cat: CategoryId) -> tuple[float, float]:
        for lower, upper, c in self.hue_intervals():
            if c is cat:
                return lower, upper
        raise KeyError(f"{cat} has no angular interval")

    # ----- validation -----------------------------------------------------

    def validate(self) -> "ColorModel":
        if not 0.0 < self.r1 < self.r2_prime < self.r2 < self.r3:
            raise ModelInvariantError(
                "radii_ordering",
                f"need 0 < r1 < r2_prime < r2 < r3, got r1={self.r1:.4f} "
                f"r2_prime={self.r2_prime:.4f} r2={self.r2:.4f} r3={self.r3:.4f}",
            )
        bnd = self.boundaries
        if len(bnd) < 2:
            raise ModelInvariantError("boundary_count", "need at least two boundaries")
        if any(not 0.0 <= b < 360.0 for b in bnd):
            raise ModelInvariantError(
                "boundary_range", f"boundaries must lie in [0, 360), got {bnd}"
            )
        if any(bnd[i] >= bnd[i + 1] for i in range(len(bnd) - 1)):
            raise ModelInvariantError(
                "boundary_order",
                f"boundaries must be strictly increasing modulo 360, got {bnd}",
            )
        lo, hi = self.brown_sector
        if not (0.0 <= lo < hi <= 360.0):
            raise ModelInvariantError(
                "brown_sector", f"brown sector must be an interval in [0, 360], got {self.brown_sector}"
            )
        groups = self.hue_groups()
        cats = [cat for cat, _ in groups]
        if sorted(c.value for c in cats) != sorted(c.value for c in HUE_CATEGORIES):
            raise ModelInvariantError(
                "hue_coverage",
                f"base groups must cover each hue category exactly once, got "
                f"{[c.value for c in cats]}",
            )
        if len(bnd) != len(groups):
            raise ModelInvariantError(
                "boundary_count",
                f"{len(groups)} base groups need {len(groups)} boundaries, got {len(bnd)}",
            )
        # Boundaries and group peaks must strictly alternate around the circle.
        peaks = self.group_peaks()
        marks = [(b, "boundary") for b in bnd]
        marks += [(peaks[cat], "peak") for cat, _ in groups]
        marks.sort()
        kinds = [kind for _, kind in marks]
        if any(kinds[i] == kinds[i + 1] for i in range(len(kinds) - 1)) or kinds[0] == kinds[-1]:
            raise ModelInvariantError(
                "boundary_peak_interleaving",
                "boundaries and base-group peaks must alternate around the circle",
            )
        self.hue_intervals()  # raises interval_category on mismatch
        return self

    # ----- overrides --------------------------------------------------------

    def with_overrides(
        self,
        boundaries: list[float] | None = None,
        boundary_edits: dict[int, float] | None = None,
        r1: float | None = None,
        r2: float | None = None,
    ) -> "ColorModel":
        """A new validated model with edited boundaries and/or radii.

        Editing r2 moves the fuzzy ramp with it (r2' and r3 keep their
        5-unit offsets). Invalid edits raise ModelInvariantError.
        """
        new_bnd = list(self.boundaries if boundaries is None else boundaries)
        if boundaries is not None and len(boundaries) != len(self.boundaries):
            raise ModelInvariantError(
                "boundary_count",
                f"expected {len(self.boundaries)} boundaries, got {len(boundaries)}",
            )
        if boundary_edits:
            for idx, angle in boundary_edits.items():
                if not 0 <= idx < len(new_bnd):
                    raise ModelInvariantError(
                        "boundary_index", f"boundary index {idx} out of range"
                    )
                new_bnd[idx] = float(angle) % 360.0
        new_r1 = self.r1 if r1 is None else float(r1)
        if r2 is None:
            new_r2, new_r2p, new_r3 = self.r2, self.r2_prime, self.r3
        else:
            offset_in = self.r2 - self.r2_prime
            offset_out = self.r3 - self.r2
            new_r2 = float(r2)
            new_r2p = new_r2 - offset_in
            new_r3 = new_r2 + offset_out
        # Positional: an edit that reorders boundaries is rejected by
        # validate() rather than silently re-sorted.
        model = replace(
            self,
            boundaries=[a % 360.0 for a in new_bnd],
            r1=new_r1,
            r2=new_r2,
            r2_prime=new_r2p,
            r3=new_r3,
        )
        return model.validate()

    # ----- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": MODEL_FORMAT_VERSION,
            "bases": [
                {"angle_deg": round(b.angle, 6), "category": b.category.value}
                for b in sorted(self.bases, key=lambda x: x.angle)
            ],
            "boundaries_deg": [round(b, 6) for b in self.boundaries],
            "r1": round(self.r1, 6),
            "r2": round(self.r2, 6),
            "r2_prime": round(self.r2_prime, 6),
            "r3": round(self.r3, 6),
            "brown_sector_deg": [self.brown_sector[0], self.brown_sector[1]],
            "plateau_halfwidth_deg": self.plateau_halfwidth_deg,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, data: dict) -> "ColorModel":
        try:
            bases = [
                ChromogenBase(
                    angle=float(b["angle_deg"]) % 360.0,
                    category=parse_category(b["category"]),
                )
                for b in data["bases"]
            ]
            model = cls(
                bases=sorted(bases, key=lambda b: b.angle),
                boundaries=[float(x) for x in data["boundaries_deg"]],
                r1=float(data["r1"]),
                r2=float(data["r2"]),
                r2_prime=float(data["r2_prime"]),
                r3=float(data["r3"]),
                brown_sector=tuple(float(x) for x in data.get("brown_sector_deg", (0.0, 90.0))),
                plateau_halfwidth_deg=float(data.get("plateau_halfwidth_deg", 0.0)),
            )
        except (KeyError, TypeError) as exc:
            raise ModelInvariantError("model_schema", f"malformed model file: {exc}") from exc
        return model.validate()

    @classmethod
    def load(cls, path: str | Path) -> "ColorModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
