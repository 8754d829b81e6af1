import numpy as np

from chromawheel.thinning import neighbor_counts, prune_spurs, thin


def endpoints_and_branches(skeleton):
    counts = neighbor_counts(skeleton)
    return (
        np.argwhere(skeleton & (counts == 1)),
        np.argwhere(skeleton & (counts >= 3)),
    )


def test_single_pixel_line_is_unchanged():
    grid = np.zeros((7, 9), dtype=bool)
    grid[3, 1:8] = True
    out = thin(grid)
    assert np.array_equal(out, grid)
    ends, branches = endpoints_and_branches(out)
    assert len(ends) == 2
    assert len(branches) == 0


def test_thick_plus_blob_reduces_to_plus():
    # 15x15 grid with a 3-wide plus; the thinning oracle for this fixture
    # is the hand-derivable ideal skeleton: 4 endpoints, 1 junction (the
    # junction's adjacent arm pixels also touch >= 3 neighbors, so the
    # branch pixels collapse to one connected component).
    from chromawheel.knowledge import _junction_representatives

    grid = np.zeros((15, 15), dtype=bool)
    grid[6:9, 1:14] = True
    grid[1:14, 6:9] = True
    out = thin(grid)
    ends, branch_pixels = endpoints_and_branches(out)
    assert len(ends) == 4
    junctions = _junction_representatives(branch_pixels)
    assert len(junctions) == 1
    assert tuple(junctions[0]) == (7, 7)


def test_no_removable_two_by_two_blocks_remain():
    # Any 2x2 block surviving the cleanup must be irreducible: deleting any
    # of its pixels would disconnect the skeleton (diagonal X junctions).
    from chromawheel.thinning import _crossing_number

    rng = np.random.default_rng(3)
    blob = rng.random((40, 40)) > 0.35
    out = thin(blob).astype(np.uint8)
    blocks = out[:-1, :-1] & out[:-1, 1:] & out[1:, :-1] & out[1:, 1:]
    padded = np.pad(out, 1)
    for y, x in np.argwhere(blocks):
        for dy, dx in ((0, 0), (0, 1), (1, 0), (1, 1)):
            window = padded[y + dy:y + dy + 3, x + dx:x + dx + 3]
            simple = window.sum() - 1 > 1 and _crossing_number(window) == 1
            assert not simple


def test_structured_shapes_have_no_two_by_two_blocks():
    shapes = []
    yy, xx = np.mgrid[0:41, 0:41]
    shapes.append((yy - 20) ** 2 + (xx - 20) ** 2 <= 15**2)
    band = np.zeros((40, 40), dtype=bool)
    band[10:20, :] = True
    shapes.append(band)
    plus = np.zeros((15, 15), dtype=bool)
    plus[6:9, 1:14] = True
    plus[1:14, 6:9] = True
    shapes.append(plus)
    for shape in shapes:
        out = thin(shape)
        blocks = out[:-1, :-1] & out[:-1, 1:] & out[1:, :-1] & out[1:, 1:]
        assert not blocks.any()


def test_diagonal_band_thins_to_single_line():
    grid = np.zeros((30, 30), dtype=bool)
    for i in range(25):
        grid[i + 2, i + 1 : i + 4] = True
    out = thin(grid)
    blocks = out[:-1, :-1] & out[:-1, 1:] & out[1:, :-1] & out[1:, 1:]
    assert not blocks.any()
    _, branches = endpoints_and_branches(out)
    assert len(branches) == 0


def test_deterministic():
    rng = np.random.default_rng(5)
    blob = rng.random((60, 60)) > 0.4
    assert np.array_equal(thin(blob), thin(blob.copy()))


def test_solid_disc_shrinks_but_survives():
    yy, xx = np.mgrid[0:41, 0:41]
    disc = (yy - 20) ** 2 + (xx - 20) ** 2 <= 15**2
    out = thin(disc)
    assert out.sum() >= 1
    assert out.sum() < disc.sum() * 0.2


def test_prune_spurs_removes_short_nubs_only():
    grid = np.zeros((20, 20), dtype=bool)
    grid[10, 2:18] = True   # long horizontal line
    grid[8:10, 9] = True    # 2-pixel nub off the middle
    pruned = prune_spurs(grid, max_length=3)
    expected = np.zeros_like(grid)
    expected[10, 2:18] = True
    assert np.array_equal(pruned, expected)


def test_prune_spurs_keeps_long_branches():
    grid = np.zeros((20, 20), dtype=bool)
    grid[10, 2:18] = True
    grid[3:10, 9] = True  # 7-pixel branch
    pruned = prune_spurs(grid, max_length=3)
    assert np.array_equal(pruned, grid)
