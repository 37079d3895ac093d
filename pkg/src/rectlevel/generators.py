"""Deterministic instance families: grids, staircases, the tightness family, random."""
from __future__ import annotations

import numpy as np

from .geometry import Family, Rect, perturb_to_general_position, require_general_position

# Sub-unit resolution for random coordinates before re-ranking.
_RANDOM_GRAIN = 1 << 16


class GeneratorParameterError(ValueError):
    pass


def _grid_rects(m: int, copies: int, x0: int = 0) -> list[tuple[int, int, int, int]]:
    """``m`` horizontal and ``m`` vertical slabs, each as ``copies`` nested rectangles.

    Slab bands sit at multiples of ``cell``; slab ends stick out past the grid
    by a distinct amount per (slab, copy) so every coordinate is unique.
    """
    t = copies
    cell = 2 * t + 3
    far = cell * (m + 1)
    rows = []
    for i in range(m):
        band = cell * (i + 1)
        for c in range(t):
            reach = i * t + (t - c)
            rows.append((-reach, band + c, far + reach, band + 2 * t + 1 - c))
    for j in range(m):
        band = cell * (j + 1)
        for c in range(t):
            reach = j * t + (t - c)
            rows.append((band + c, -reach, band + 2 * t + 1 - c, far + reach))
    shift = x0 + m * t + 1
    return [(a + shift, b + shift, c + shift, d + shift) for a, b, c, d in rows]


def gen_grid(m: int) -> Family:
    """``m`` long thin horizontal slabs crossing ``m`` vertical ones."""
    if m < 1:
        raise GeneratorParameterError("grid needs m >= 1")
    return Family.from_coords(_grid_rects(m, 1))


def _staircase_rects(m: int) -> list[tuple[int, int, int, int]]:
    # rect i spans x in [-(2i+1), 2i+2] and y in [-(2(m-1-i)+1), 2(m-1-i)+2];
    # all contain the origin, each one taller and thinner than the next
    rows = []
    for i in range(m):
        h = m - 1 - i
        rows.append((-(2 * i + 1), -(2 * h + 1), 2 * i + 2, 2 * h + 2))
    return rows


def gen_staircase(m: int) -> Family:
    if m < 1:
        raise GeneratorParameterError("staircase needs m >= 1")
    return Family.from_coords(_staircase_rects(m))


def gen_tightness(n: int, p: int) -> Family:
    """Staircase of ``n/2`` rectangles beside a nested ``(p-2)``-by-``(p-2)`` grid of ``n/2``.

    Packing number is ``p-1``: one from the staircase plus ``p-2`` parallel slabs.
    """
    if p < 3:
        raise GeneratorParameterError("tightness family needs p >= 3")
    step = 4 * (p - 2)
    if n < step or n % step:
        raise GeneratorParameterError(f"4(p-2)={step} must divide n (and n >= {step}), got n={n}")
    half = n // 2
    stair = _staircase_rects(half)
    stair_right = max(r[2] for r in stair)
    gap = 5
    grid = _grid_rects(p - 2, n // step, x0=0)
    grid_left = min(r[0] for r in grid)
    dx = stair_right + gap - grid_left
    # nudge the grid vertically until no grid y meets a staircase y
    stair_ys = {v for r in stair for v in (r[1], r[3])}
    dy = 0
    while any((r[1] + dy) in stair_ys or (r[3] + dy) in stair_ys for r in grid):
        dy += 1
    grid = [(a + dx, b + dy, c + dx, d + dy) for a, b, c, d in grid]
    f = Family.from_coords(stair + grid)
    require_general_position(f)
    return f


def gen_random(n: int, seed: int = 0, span: int | None = None) -> Family:
    """Seeded random family on a ``2n``-rank grid.

    ``span`` caps each side length in rank units (default ``2n``: unrestricted).
    Coordinates are drawn on a fine lattice and re-ranked, so ties are
    resolved deterministically and the output is always in general position.
    """
    if n < 1:
        raise GeneratorParameterError("random family needs n >= 1")
    axis = 2 * n
    span = axis if span is None else span
    if span < 1:
        raise GeneratorParameterError("span must be >= 1")
    rng = np.random.default_rng(seed)
    hi = span * _RANDOM_GRAIN
    w = rng.integers(1, hi, size=n, endpoint=True)
    h = rng.integers(1, hi, size=n, endpoint=True)
    x0 = rng.integers(0, axis * _RANDOM_GRAIN, size=n)
    y0 = rng.integers(0, axis * _RANDOM_GRAIN, size=n)
    raw = Family(Rect(i, int(x0[i]), int(y0[i]), int(x0[i] + w[i]), int(y0[i] + h[i])) for i in range(n))
    return perturb_to_general_position(raw)


def gen_clustered(n: int, clusters: int, seed: int = 0) -> Family:
    """``clusters`` disjoint cells; the rectangles of a cell share the cell's centre.

    Packing number equals ``clusters``.
    """
    if not 1 <= clusters <= n:
        raise GeneratorParameterError(f"need 1 <= clusters <= n, got clusters={clusters}, n={n}")
    rng = np.random.default_rng(seed)
    sizes = [n // clusters + (1 if c < n % clusters else 0) for c in range(clusters)]
    # cells along the diagonal, so no two cells share an x or y range
    cell = 4 * max(sizes) + 4
    rows = []
    for c, size in enumerate(sizes):
        cx = cy = c * cell + cell // 2
        # distinct offsets 1..2*size on each side, shuffled per cell
        offs = [rng.permutation(np.arange(1, 2 * size + 1)) for _ in range(2)]
        for i in range(size):
            rows.append((cx - int(offs[0][2 * i]), cy - int(offs[1][2 * i]),
                         cx + int(offs[0][2 * i + 1]), cy + int(offs[1][2 * i + 1])))
    order = rng.permutation(len(rows))
    return Family.from_coords(rows[k] for k in order)


GENERATORS = {
    "grid": gen_grid,
    "staircase": gen_staircase,
    "tightness": gen_tightness,
    "random": gen_random,
    "clustered": gen_clustered,
}
