"""Color classification, naming, and segmentation in polar CIELAB AB space."""

from importlib import resources
from pathlib import Path

from .categories import CategoryId, HUE_CATEGORIES, parse_category
from .classifier import LabelMap, classify_image, classify_point, masks_from_labels
from .colorspace import LabColor, PolarPixel, lab_to_polar, srgb_to_lab
from .fuzzy import MembershipVector, compose_name, summarize_shades
from .knowledge import build_model
from .model import ChromogenBase, ColorModel, ModelInvariantError
from .report import analyze, analyze_full

__version__ = "0.1.0"


def default_model_path() -> Path:
    """Path of the packaged default model derived from the reference wheel."""
    return Path(resources.files("chromawheel").joinpath("data/default_model.json"))


def default_model() -> ColorModel:
    return ColorModel.load(default_model_path())
