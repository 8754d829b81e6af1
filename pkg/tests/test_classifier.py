import concurrent.futures

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromawheel.categories import CategoryId
from chromawheel.classifier import (
    CATEGORY_CODES,
    CODE_CATEGORIES,
    classify_image,
    classify_point,
    classify_polar,
    masks_from_labels,
    reclassify_with_overrides,
)
from chromawheel.colorspace import PolarPixel, lab_array_to_polar, srgb_array_to_lab
from chromawheel.model import ModelInvariantError


class TestClassifyPoint:
    def test_origin_is_neutral(self, model):
        assert classify_point(PolarPixel(0.0, 0.0, 50.0), model) is CategoryId.NEUTRAL

    def test_radius_r1_is_neutral_inclusive(self, model):
        p = PolarPixel(model.r1, 123.0, 50.0)
        assert classify_point(p, model) is CategoryId.NEUTRAL

    def test_near_achromatic_quadrant_is_brown(self, model):
        p = PolarPixel((model.r1 + model.r2) / 2, 45.0, 50.0)
        assert classify_point(p, model) is CategoryId.BROWN

    def test_radius_r2_still_brown_inclusive(self, model):
        assert classify_point(PolarPixel(model.r2, 45.0, 50.0), model) is CategoryId.BROWN

    def test_just_beyond_r2_is_hue(self, model):
        p = PolarPixel(model.r2 + 1e-6, 45.0, 50.0)
        assert classify_point(p, model) in (CategoryId.RED, CategoryId.DEEP_ORANGE)

    def test_mid_radius_at_200_degrees(self, model):
        # derived from the committed default model: 200 deg lies in Teal
        p = PolarPixel((model.r1 + model.r2) / 2, 200.0, 50.0)
        assert classify_point(p, model) is CategoryId.TEAL

    def test_boundary_belongs_to_counterclockwise_class(self, model):
        intervals = model.hue_intervals()
        for lower, _upper, cat in intervals:
            p = PolarPixel(model.r3 + 20.0, lower, 50.0)
            assert classify_point(p, model) is cat


class TestClassifyImage:
    def test_empty_image_rejected(self, model):
        with pytest.raises(ValueError, match="empty image"):
            classify_image(np.zeros((0, 0, 3), dtype=np.uint8), model)

    def test_uniform_gray_is_all_neutral(self, model):
        img = np.full((10, 12, 3), 128, dtype=np.uint8)
        lm = classify_image(img, model)
        assert (lm.labels == CATEGORY_CODES[CategoryId.NEUTRAL]).all()

    def test_red_blue_pair(self, model):
        img = np.array([[[255, 0, 0], [0, 0, 255]]], dtype=np.uint8)
        lm = classify_image(img, model)
        got = [CODE_CATEGORIES[c] for c in lm.labels[0]]
        # sRGB red sits at 40 deg (Red); the sRGB blue primary's hue angle
        # (306.3 deg) falls in the violet-blue band of the default model
        assert got[0] is CategoryId.RED
        assert got[1] is CategoryId.ULTRAMARINE

    def test_concurrent_classification_matches_serial(self, model, rng):
        imgs = [
            rng.integers(0, 256, size=(40, 30, 3)).astype(np.uint8) for _ in range(6)
        ]
        serial = [classify_image(i, model).labels for i in imgs]
        with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(pool.map(lambda i: classify_image(i, model).labels, imgs))
        for s, p in zip(serial, parallel):
            assert np.array_equal(s, p)


class TestMasks:
    def test_uniform_image_single_full_mask(self, model):
        img = np.full((6, 6, 3), 128, dtype=np.uint8)
        masks = masks_from_labels(classify_image(img, model))
        assert masks[CategoryId.NEUTRAL].all()
        for cat, mask in masks.items():
            if cat is not CategoryId.NEUTRAL:
                assert not mask.any()

    def test_tricolor_partitions(self, model):
        img = np.zeros((9, 3, 3), dtype=np.uint8)
        img[:3] = (255, 0, 0)
        img[3:6] = (0, 160, 80)
        img[6:] = (128, 128, 128)
        masks = masks_from_labels(classify_image(img, model))
        nonempty = [cat for cat, m in masks.items() if m.any()]
        assert len(nonempty) == 3
        total = sum(int(m.sum()) for m in masks.values())
        assert total == 27

    def test_checkerboard_splits_evenly(self, model):
        img = np.zeros((8, 8, 3), dtype=np.uint8)
        checker = (np.indices((8, 8)).sum(axis=0) % 2).astype(bool)
        img[checker] = (255, 0, 0)
        img[~checker] = (0, 0, 255)
        masks = masks_from_labels(classify_image(img, model))
        counts = sorted(int(m.sum()) for m in masks.values() if m.any())
        assert counts == [32, 32]


def hue_gradient_strip(model, start_deg, end_deg, width=360, radius=None):
    """Synthetic strip sweeping hue angle at fixed chromatic radius."""
    if radius is None:
        radius = model.r3 + 15.0
    angles = np.linspace(start_deg, end_deg, width)
    rad = np.radians(angles)
    lab = np.stack(
        [np.full(width, 55.0), radius * np.cos(rad), radius * np.sin(rad)], axis=-1
    )
    from chromawheel.colorspace import lab_array_to_srgb

    return lab_array_to_srgb(lab)[None, :, :], angles


class TestOverrides:
    def test_empty_override_identical(self, model, rng):
        img = rng.integers(0, 256, size=(30, 30, 3)).astype(np.uint8)
        base = classify_image(img, model)
        lm, edited = reclassify_with_overrides(img, model)
        assert np.array_equal(base.labels, lm.labels)
        assert edited.to_json() == model.to_json()

    def test_invalid_radius_edit_rejected(self, model, rng):
        img = rng.integers(0, 256, size=(4, 4, 3)).astype(np.uint8)
        with pytest.raises(ModelInvariantError, match="radii_ordering"):
            reclassify_with_overrides(img, model, r1=model.r2 + 1.0)

    def test_boundary_shift_changes_only_the_wedge(self, model):
        # classify a dense angular sweep, shift the teal/blue boundary by
        # +10 deg, and verify exactly the swept wedge flips between the two
        # adjacent categories
        intervals = model.hue_intervals()
        idx = next(
            i for i, (_lo, _hi, cat) in enumerate(intervals)
            if cat is CategoryId.BLUE
        )
        old_angle = model.boundaries[idx]
        new_angle = old_angle + 10.0
        img, _nominal = hue_gradient_strip(
            model, old_angle - 20.0, old_angle + 20.0, width=2000
        )
        # gamut clipping distorts the sweep; the wedge is defined by the
        # realized pixel angles
        _radius, angles = lab_array_to_polar(srgb_array_to_lab(img[0]))
        before = classify_image(img, model).labels[0]
        after_lm, edited = reclassify_with_overrides(
            img, model, boundary_edits={idx: new_angle}
        )
        assert model.boundaries[idx] == old_angle  # base model untouched
        after = after_lm.labels[0]
        changed = before != after
        in_wedge = (angles >= old_angle) & (angles < new_angle)
        assert np.array_equal(changed, in_wedge)
        assert set(before[changed]) == {CATEGORY_CODES[CategoryId.BLUE]}
        assert set(after[changed]) == {CATEGORY_CODES[CategoryId.TEAL]}


class TestProperties:
    @settings(max_examples=300)
    @given(
        lightness=st.floats(0, 100),
        a=st.floats(-110, 110),
        b=st.floats(-110, 110),
    )
    def test_totality_and_rules(self, model, lightness, a, b):
        radius = float(np.hypot(a, b))
        angle = float(np.degrees(np.arctan2(b, a)) % 360.0) if radius else 0.0
        if angle >= 360.0:
            angle = 0.0
        cat = classify_point(PolarPixel(radius, angle, lightness), model)
        assert isinstance(cat, CategoryId)
        if radius <= model.r1:
            assert cat is CategoryId.NEUTRAL
        else:
            assert cat is not CategoryId.NEUTRAL
        if cat is CategoryId.BROWN:
            assert model.r1 < radius <= model.r2
            assert 0.0 <= angle <= 90.0

    def test_bulk_invariants_over_random_triples(self, model, rng):
        n = 200_000
        lab = np.stack(
            [
                rng.uniform(0, 100, n),
                rng.uniform(-110, 110, n),
                rng.uniform(-110, 110, n),
            ],
            axis=-1,
        )
        radius, angle = lab_array_to_polar(lab)
        labels = classify_polar(radius, angle, model)
        neutral = labels == CATEGORY_CODES[CategoryId.NEUTRAL]
        assert np.array_equal(neutral, radius <= model.r1)
        brown = labels == CATEGORY_CODES[CategoryId.BROWN]
        assert np.all(radius[brown] > model.r1)
        assert np.all(radius[brown] <= model.r2)
        assert np.all(angle[brown] < 90.0)
        assert np.all(angle[brown] >= 0.0)
        # luminance invariance: same (A, B), different L
        lab2 = lab.copy()
        lab2[:, 0] = rng.uniform(0, 100, n)
        r2, a2 = lab_array_to_polar(lab2)
        assert np.array_equal(labels, classify_polar(r2, a2, model))

    def test_angle_sweep_crosses_each_category_once(self, model):
        radius = model.r3 + 10.0
        angles = np.arange(0.0, 360.0, 0.01)
        labels = classify_polar(np.full_like(angles, radius), angles, model)
        transitions = int(np.count_nonzero(np.diff(labels)) + (labels[0] != labels[-1]))
        assert transitions == 10
        assert len(np.unique(labels)) == 10

    def test_mask_partition_counts(self, model, rng):
        img = rng.integers(0, 256, size=(50, 40, 3)).astype(np.uint8)
        lm = classify_image(img, model)
        masks = masks_from_labels(lm)
        stacked = np.stack(list(masks.values()))
        assert (stacked.sum(axis=0) == 1).all()
        assert sum(int(m.sum()) for m in masks.values()) == 50 * 40
