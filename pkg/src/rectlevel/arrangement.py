"""Vertex enumeration with depths: a brute-force oracle and a sweep-line engine."""
from __future__ import annotations

import gc
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field

from .geometry import (BOTTOM, LEFT, RIGHT, TOP, VERTEX_TYPES, Family, Vertex,
                       contains_interior, require_general_position)


@dataclass(frozen=True)
class ArrangementProfile:
    vertices: tuple[Vertex, ...]
    depth_histogram: dict[int, int]
    union_complexity: int
    per_type_counts: dict[tuple[str, str], dict[int, int]] = field(default_factory=dict)

    @classmethod
    def from_vertices(cls, vertices) -> "ArrangementProfile":
        vertices = tuple(vertices)
        hist = Counter(v.depth for v in vertices)
        per_type = {t: Counter() for t in VERTEX_TYPES}
        for v in vertices:
            per_type[v.h_edge, v.v_edge][v.depth] += 1
        return cls(
            vertices=vertices,
            depth_histogram=dict(sorted(hist.items())),
            union_complexity=hist.get(0, 0),
            per_type_counts={t: dict(sorted(c.items())) for t, c in per_type.items()},
        )

    @property
    def max_depth(self) -> int:
        return max(self.depth_histogram, default=0)

    def level_complexity(self, k: int) -> int:
        return level_complexity(self, k)


def level_complexity(profile: ArrangementProfile, k: int) -> int:
    """Number of vertices of depth at most ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum(c for d, c in profile.depth_histogram.items() if d <= k)


def enumerate_vertices_oracle(f: Family) -> ArrangementProfile:
    """Reference engine: every (horizontal edge, vertical edge) pair, depth by full scan."""
    require_general_position(f)
    rects = f.rects
    vertices = []
    for p in rects:
        for y, h_edge in ((p.y_max, TOP), (p.y_min, BOTTOM)):
            for q in rects:
                if q.id == p.id or not q.y_min < y < q.y_max:
                    continue
                for x, v_edge in ((q.x_min, LEFT), (q.x_max, RIGHT)):
                    if p.x_min < x < p.x_max:
                        depth = sum(1 for r in rects if contains_interior(r, x, y))
                        vertices.append(Vertex(x, y, p.id, q.id, h_edge, v_edge, depth))
    vertices.sort()
    return ArrangementProfile.from_vertices(vertices)


@contextmanager
def _gc_paused():
    # the sweep allocates one tuple per vertex and frees nothing; cyclic GC
    # passes over a large live heap would dominate the running time
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def analyze_sweep(f: Family) -> ArrangementProfile:
    """Left-to-right sweep in O((n + V) log n).

    Two Fenwick trees over y-ranks are maintained for the rectangles whose open
    x-interval contains the sweep position: one holds the active horizontal
    edges (for enumerating crossings at a vertical edge), the other holds +1 at
    each active bottom and -1 at each active top (prefix sums give depth).
    """
    require_general_position(f)
    with _gc_paused():
        return _sweep(f.rects)


def _sweep(rects) -> ArrangementProfile:
    n = len(rects)
    size = 2 * n
    ys = sorted([(r.y_min, r.id, BOTTOM) for r in rects] + [(r.y_max, r.id, TOP) for r in rects])
    rank_lo = [0] * n
    rank_hi = [0] * n
    y_at = [0] * (size + 1)
    owner_at = [0] * (size + 1)
    is_top = [False] * (size + 1)
    for i, (y, rid, role) in enumerate(ys, 1):
        y_at[i] = y
        owner_at[i] = rid
        if role == TOP:
            rank_hi[rid] = i
            is_top[i] = True
        else:
            rank_lo[rid] = i
    edges = [0] * (size + 1)
    depth_tree = [0] * (size + 1)
    top_bit = 1 << size.bit_length()

    def add(tree, i, delta):
        while i <= size:
            tree[i] += delta
            i += i & -i

    def prefix(tree, i):
        s = 0
        while i > 0:
            s += tree[i]
            i -= i & -i
        return s

    def kth(tree, k):
        # smallest rank whose edge-prefix count reaches k
        pos = 0
        step = top_bit
        while step:
            nxt = pos + step
            if nxt <= size and tree[nxt] < k:
                pos = nxt
                k -= tree[nxt]
            step >>= 1
        return pos + 1

    events = sorted([(r.x_min, r.id, LEFT) for r in rects] + [(r.x_max, r.id, RIGHT) for r in rects])
    vertices = []
    append = vertices.append
    for x, qid, v_edge in events:
        lo, hi = rank_lo[qid], rank_hi[qid]
        if v_edge == RIGHT:
            add(edges, lo, -1)
            add(edges, hi, -1)
            add(depth_tree, lo, -1)
            add(depth_tree, hi, 1)
        before = prefix(edges, lo)
        count = prefix(edges, hi - 1) - before
        for t in range(before + 1, before + count + 1):
            r = kth(edges, t)
            top = is_top[r]
            depth = prefix(depth_tree, r - 1) - (1 if top else 0)
            append(Vertex(x, y_at[r], owner_at[r], qid, TOP if top else BOTTOM, v_edge, depth))
        if v_edge == LEFT:
            add(edges, lo, 1)
            add(edges, hi, 1)
            add(depth_tree, lo, 1)
            add(depth_tree, hi, -1)
    return ArrangementProfile.from_vertices(vertices)


ENGINES = {"oracle": enumerate_vertices_oracle, "sweep": analyze_sweep}


def analyze(f: Family, engine: str = "sweep") -> ArrangementProfile:
    try:
        return ENGINES[engine](f)
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}") from None


def first_difference(a: ArrangementProfile, b: ArrangementProfile):
    """First vertex (in canonical order) where two profiles disagree, or None."""
    for va, vb in zip(a.vertices, b.vertices):
        if va != vb:
            return va, vb
    if len(a.vertices) != len(b.vertices):
        short = min(len(a.vertices), len(b.vertices))
        extra_a = a.vertices[short] if len(a.vertices) > short else None
        extra_b = b.vertices[short] if len(b.vertices) > short else None
        return extra_a, extra_b
    return None
