"""The twelve color categories and their naming conventions.

Ten hue classes are separated purely by angle in the AB plane; Brown and
Neutral depend on the chroma radius. Canonical names follow the common
basic-color-term variants; older aliases (Yellow-Orange, Red-Orange,
Achromatic) are accepted on input.
"""

from __future__ import annotations

from enum import Enum


class CategoryId(Enum):
    # Wheel order, ascending AB hue angle starting from the red side.
    RED = "Red"
    DEEP_ORANGE = "Deep Orange"
    LIGHT_ORANGE = "Light Orange"
    YELLOW = "Yellow"
    GREEN = "Green"
    TEAL = "Teal"
    BLUE = "Blue"
    ULTRAMARINE = "Ultramarine"
    PURPLE = "Purple"
    PINK = "Pink"
    BROWN = "Brown"
    NEUTRAL = "Neutral"

    @property
    def display_name(self) -> str:
        return self.value

    @property
    def slug(self) -> str:
        """Lowercase underscore form, used in exported mask filenames."""
        return self.value.lower().replace(" ", "_")

    def __lt__(self, other: "CategoryId") -> bool:
        if not isinstance(other, CategoryId):
            return NotImplemented
        return _ORDER[self] < _ORDER[other]


_ORDER = {c: i for i, c in enumerate(CategoryId)}

HUE_CATEGORIES: tuple[CategoryId, ...] = tuple(
    c for c in CategoryId if c not in (CategoryId.BROWN, CategoryId.NEUTRAL)
)

# Accepted on input alongside canonical names (case/spacing-insensitive).
_ALIASES = {
    "yelloworange": CategoryId.LIGHT_ORANGE,
    "redorange": CategoryId.DEEP_ORANGE,
    "achromatic": CategoryId.NEUTRAL,
}


def parse_category(name: str) -> CategoryId:
    """Resolve a category name or alias to a CategoryId."""
    key = "".join(ch for ch in name.lower() if ch.isalnum())
    for cat in CategoryId:
        if key == "".join(ch for ch in cat.value.lower() if ch.isalnum()):
            return cat
    if key in _ALIASES:
        return _ALIASES[key]
    raise ValueError(f"unknown color category: {name!r}")


def is_hue_category(cat: CategoryId) -> bool:
    return cat not in (CategoryId.BROWN, CategoryId.NEUTRAL)
