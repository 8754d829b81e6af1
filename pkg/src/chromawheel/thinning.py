"""Morphological thinning of binary grids to one-pixel-wide skeletons.

Two-subiteration 8-connected thinning (Guo & Hall, CACM 1989), iterated
until stable, followed by a deterministic cleanup pass that removes
redundant pixels of any remaining 2x2 solid blocks. Guo-Hall thins
diagonal strokes to single-pixel width, which the endpoint/branch-point
classification downstream depends on.
"""

from __future__ import annotations

import numpy as np


def _neighbors(img: np.ndarray) -> list[np.ndarray]:
    """Padded 8-neighborhood planes in clockwise order N, NE, E, SE, S, SW, W, NW."""
    p = np.pad(img, 1)
    return [
        p[:-2, 1:-1],   # N
        p[:-2, 2:],     # NE
        p[1:-1, 2:],    # E
        p[2:, 2:],      # SE
        p[2:, 1:-1],    # S
        p[2:, :-2],     # SW
        p[1:-1, :-2],   # W
        p[:-2, :-2],    # NW
    ]


def _thin_subiteration(img: np.ndarray, first: bool) -> np.ndarray:
    n = _neighbors(img)
    inv = [1 - x for x in n]
    c = (
        inv[0] * (n[1] | n[2])
        + inv[2] * (n[3] | n[4])
        + inv[4] * (n[5] | n[6])
        + inv[6] * (n[7] | n[0])
    )
    n1 = (n[7] | n[0]) + (n[1] | n[2]) + (n[3] | n[4]) + (n[5] | n[6])
    n2 = (n[0] | n[1]) + (n[2] | n[3]) + (n[4] | n[5]) + (n[6] | n[7])
    nmin = np.minimum(n1, n2)
    if first:
        m = (n[4] | n[5] | inv[7]) & n[6]
    else:
        m = (n[0] | n[1] | inv[3]) & n[2]
    remove = (img == 1) & (c == 1) & (nmin >= 2) & (nmin <= 3) & (m == 0)
    out = img.copy()
    out[remove] = 0
    return out


def _crossing_number(window: np.ndarray) -> int:
    """Yokoi connectivity number of the 3x3 window center (8-connectivity)."""
    # ring order E, NE, N, NW, W, SW, S, SE
    ring = [
        window[1, 2], window[0, 2], window[0, 1], window[0, 0],
        window[1, 0], window[2, 0], window[2, 1], window[2, 2],
    ]
    c = 0
    for k in (0, 2, 4, 6):
        nk = ring[k]
        nk1 = ring[(k + 1) % 8]
        nk2 = ring[(k + 2) % 8]
        c += (1 - nk) - (1 - nk) * (1 - nk1) * (1 - nk2)
    return c


def _remove_square_redundancy(img: np.ndarray) -> np.ndarray:
    """Delete simple pixels participating in 2x2 solid blocks, in scan order."""
    out = img.copy()
    changed = True
    while changed:
        changed = False
        blocks = (out[:-1, :-1] & out[:-1, 1:] & out[1:, :-1] & out[1:, 1:])
        ys, xs = np.nonzero(blocks)
        if len(ys) == 0:
            break
        padded = np.pad(out, 1)
        for y, x in zip(ys, xs):
            for dy, dx in ((0, 0), (0, 1), (1, 0), (1, 1)):
                py, px = y + dy, x + dx
                if out[py, px] == 0:
                    continue
                window = padded[py:py + 3, px:px + 3]
                neighbor_count = int(window.sum()) - 1
                if neighbor_count > 1 and _crossing_number(window) == 1:
                    out[py, px] = 0
                    padded[py + 1, px + 1] = 0
                    changed = True
                    break
            if changed:
                break
    return out


def thin(binary: np.ndarray) -> np.ndarray:
    """Thin a binary grid to a one-pixel-wide 8-connected skeleton.

    Deterministic: simultaneous-update subiterations, then the 2x2 cleanup
    in fixed scan order.
    """
    img = (np.asarray(binary) > 0).astype(np.uint8)
    while True:
        after = _thin_subiteration(img, first=True)
        after = _thin_subiteration(after, first=False)
        if np.array_equal(after, img):
            break
        img = after
    img = _remove_square_redundancy(img)
    return img.astype(bool)


def neighbor_counts(skeleton: np.ndarray) -> np.ndarray:
    """8-neighbor count for every pixel of a boolean grid."""
    img = skeleton.astype(np.uint8)
    return sum(_neighbors(img)).astype(np.int32)


def prune_spurs(skeleton: np.ndarray, max_length: int) -> np.ndarray:
    """Remove skeleton spurs of at most ``max_length`` pixels.

    A spur is a chain starting at an endpoint that reaches a junction
    within the length limit; the chain is deleted up to the junction, and
    the junction pixel itself goes too when that preserves connectivity
    (it was only propping up the spur). Straight open lines are never
    eroded. Iterates until stable, in deterministic scan order.
    """
    out = skeleton.copy()
    while True:
        counts = neighbor_counts(out)
        endpoints = np.argwhere(out & (counts == 1))
        removed_any = False
        for y, x in endpoints:
            if not out[y, x]:
                continue
            chain = [(int(y), int(x))]
            prev = None
            cur = (int(y), int(x))
            junction = None
            while len(chain) <= max_length:
                neigh = [
                    (cur[0] + dy, cur[1] + dx)
                    for dy in (-1, 0, 1)
                    for dx in (-1, 0, 1)
                    if (dy or dx)
                    and 0 <= cur[0] + dy < out.shape[0]
                    and 0 <= cur[1] + dx < out.shape[1]
                    and out[cur[0] + dy, cur[1] + dx]
                    and (cur[0] + dy, cur[1] + dx) != prev
                ]
                if len(neigh) == 0:
                    break  # isolated chain, not a spur off a junction
                if len(neigh) > 1 or counts[neigh[0]] >= 3:
                    junction = neigh[0] if len(neigh) == 1 else cur
                    break
                prev, cur = cur, neigh[0]
                chain.append(cur)
            if junction is not None and len(chain) <= max_length:
                for cy, cx in chain:
                    if (cy, cx) != junction:
                        out[cy, cx] = False
                removed_any = True
                # Drop the junction pixel too when it is redundant: still
                # multiply connected and removable without splitting.
                jy, jx = junction
                padded = np.pad(out.astype(np.uint8), 1)
                window = padded[jy:jy + 3, jx:jx + 3]
                if int(window.sum()) - 1 > 1 and _crossing_number(window) == 1:
                    out[jy, jx] = False
        if not removed_any:
            return out
