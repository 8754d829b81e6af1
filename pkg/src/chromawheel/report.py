"""Image analysis orchestration: reports, masks, and file export.

An analysis runs classification, mask derivation, and the shade summary,
and packages the result as a JSON-ready report with stable key order so
reports diff cleanly. The wall-clock duration is recorded under its own
key; everything else is deterministic for a given image and model.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

import numpy as np
from PIL import Image

from .categories import CategoryId
from .classifier import CATEGORY_CODES, LabelMap, classify_image, masks_from_labels
from .fuzzy import ShadeSummary, summarize_shades
from .knowledge import ANCHOR_LANDMARKS
from .model import ColorModel

# Composite label-image colors: the first anchor landmark per hue class,
# plus fixed swatches for Brown and Neutral.
LABEL_COLORS: dict[CategoryId, tuple[int, int, int]] = {
    **{cat: landmarks[0] for cat, landmarks in ANCHOR_LANDMARKS.items()},
    CategoryId.BROWN: (111, 78, 55),
    CategoryId.NEUTRAL: (128, 128, 128),
}


def load_image_rgb(path: str | Path) -> np.ndarray:
    """Load PNG/JPEG/BMP as an (H, W, 3) uint8 array; alpha is dropped."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def analyze(
    image_rgb: np.ndarray,
    model: ColorModel,
    source: str = "",
    model_ref: str = "",
) -> dict:
    """Full analysis of an image: classification, shades, reconciled stats.

    Returns the report as a JSON-ready dict; the label map is re-derivable
    and also available via analyze_full.
    """
    report, _labels, _masks = analyze_full(image_rgb, model, source, model_ref)
    return report


def analyze_full(
    image_rgb: np.ndarray,
    model: ColorModel,
    source: str = "",
    model_ref: str = "",
) -> tuple[dict, LabelMap, dict[CategoryId, np.ndarray]]:
    start = time.perf_counter()
    img = np.asarray(image_rgb)
    labels = classify_image(img, model)
    masks = masks_from_labels(labels)
    shades = summarize_shades(img, labels, model)
    counts = labels.category_counts()
    total = labels.width * labels.height
    report = {
        "source": {
            "path": source,
            "width": labels.width,
            "height": labels.height,
        },
        "model": {
            "ref": model_ref,
            "sha256": model.content_hash(),
        },
        "categories": [
            {
                "category": cat.display_name,
                "count": counts[cat],
                "percentage": round(100.0 * counts[cat] / total, 4),
            }
            for cat in CategoryId
        ],
        "shades": _shades_dict(shades),
        "duration_ms": 0.0,  # patched below, after all derived work
    }
    report["duration_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
    return report, labels, masks


def _shades_dict(shades: ShadeSummary) -> dict:
    out = {}
    for cat in CategoryId:
        entries = shades.per_category.get(cat, ())
        if not entries:
            continue
        out[cat.display_name] = [
            {
                "lab": list(e.lab),
                "count": e.count,
                "composition": e.composition_text,
                "swatch": e.swatch,
            }
            for e in entries
        ]
    return out


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def report_to_text(report: dict) -> str:
    lines = [
        f"Image: {report['source']['path'] or '<array>'} "
        f"({report['source']['width']}x{report['source']['height']})",
        f"Model: sha256 {report['model']['sha256'][:12]}",
        "",
        "Category breakdown:",
    ]
    for row in report["categories"]:
        if row["count"]:
            lines.append(
                f"  {row['category']:13s} {row['count']:10d} px  {row['percentage']:7.2f}%"
            )
    lines.append("")
    for cat, entries in report["shades"].items():
        lines.append(f"Top shades of {cat}:")
        for e in entries:
            L, A, B = e["lab"]
            lines.append(
                f"  {e['swatch']}  L={L:5.1f} A={A:6.1f} B={B:6.1f}"
                f"  {e['count']:8d} px  {e['composition']}"
            )
        lines.append("")
    lines.append(f"Analysis took {report['duration_ms']:.1f} ms")
    return "\n".join(lines) + "\n"


def strip_timing(report: dict) -> dict:
    """Report without its wall-clock field, for determinism comparisons."""
    return {k: v for k, v in report.items() if k != "duration_ms"}


def mask_to_image(mask: np.ndarray) -> Image.Image:
    """White = member, black = non-member."""
    return Image.fromarray(np.where(mask, 255, 0).astype(np.uint8), mode="L")


def composite_label_image(labels: LabelMap) -> Image.Image:
    palette = np.zeros((len(CategoryId), 3), dtype=np.uint8)
    for cat, rgb in LABEL_COLORS.items():
        palette[CATEGORY_CODES[cat]] = rgb
    return Image.fromarray(palette[labels.labels], mode="RGB")


def export_masks(
    labels: LabelMap,
    masks: dict[CategoryId, np.ndarray],
    stem: str,
    out_dir: str | Path,
) -> dict:
    """Write per-category masks (nonempty only) and the composite labels.

    Returns the mask index mapping category names to written filenames.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    index = {}
    for cat, mask in masks.items():
        if not mask.any():
            continue
        name = f"{stem}_{cat.slug}.png"
        mask_to_image(mask).save(out_dir / name, format="PNG")
        index[cat.display_name] = name
    composite = f"{stem}_labels.png"
    composite_label_image(labels).save(out_dir / composite, format="PNG")
    index["__composite__"] = composite
    return index
