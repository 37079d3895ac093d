"""Greedy piercing lines, floors, and the packing number."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import NamedTuple

from .geometry import Family, intersects, require_general_position

EXACT_LIMIT = 64


class Counterexample(NamedTuple):
    check: str
    detail: str
    data: dict


@dataclass(frozen=True)
class PiercingStructure:
    """Greedy lines for one axis.

    For ``axis="horizontal"`` the lines are y-values through witness top
    edges and ``floor_of[r]`` is the floor of rect ``r``; for ``"vertical"``
    they are x-values through witness right edges. Indices are 1-based.
    """

    axis: str
    lines: tuple[int, ...]
    witnesses: tuple[int, ...]
    sentinel: int
    floor_of: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.lines)

    def line(self, i: int) -> int:
        """Line ``i`` (1-based); index ``q+1`` is the sentinel."""
        return self.sentinel if i == self.q + 1 else self.lines[i - 1]


def _span(r, axis):
    # (low, high) extent of r across the lines of the given axis
    return (r.y_min, r.y_max) if axis == "horizontal" else (r.x_min, r.x_max)


def greedy_lines(f: Family, axis: str = "horizontal") -> PiercingStructure:
    """Lowest top edge first, then the lowest top among rects entirely above the last line.

    The vertical construction mirrors it with right edges, scanning left to right.
    """
    if axis not in ("horizontal", "vertical"):
        raise ValueError(f"axis must be 'horizontal' or 'vertical', got {axis!r}")
    require_general_position(f)
    if not f.n:
        return PiercingStructure(axis, (), (), 0, ())
    by_high = sorted(f, key=lambda r: _span(r, axis)[1])
    lines, witnesses = [], []
    last = None
    for r in by_high:
        lo, hi = _span(r, axis)
        if last is None or lo > last:
            lines.append(hi)
            witnesses.append(r.id)
            last = hi
    sentinel = _span(by_high[-1], axis)[1] + 1
    floor_of = tuple(bisect_right(lines, _span(r, axis)[1]) for r in f)
    return PiercingStructure(axis, tuple(lines), tuple(witnesses), sentinel, floor_of)


def _meets(r, axis, value):
    lo, hi = _span(r, axis)
    return lo <= value <= hi


def check_floor_property(f: Family, ps: PiercingStructure) -> Counterexample | None:
    """Each rect meets the line of its floor and no line above it."""
    for r in f:
        i = ps.floor_of[r.id]
        if not 1 <= i <= ps.q:
            return Counterexample("floor_property", f"rect {r.id} has floor index {i} outside 1..{ps.q}",
                                  {"rect": r.id, "floor": i})
        if not _meets(r, ps.axis, ps.line(i)):
            return Counterexample("floor_property", f"rect {r.id} misses its floor line {i}",
                                  {"rect": r.id, "floor": i, "line": ps.line(i)})
        for j in range(i + 1, ps.q + 1):
            if _meets(r, ps.axis, ps.line(j)):
                return Counterexample("floor_property",
                                      f"rect {r.id} on floor {i} also meets higher line {j}",
                                      {"rect": r.id, "floor": i, "line_index": j})
    return None


def check_piercing(f: Family, ps: PiercingStructure) -> Counterexample | None:
    for r in f:
        if not any(_meets(r, ps.axis, v) for v in ps.lines):
            return Counterexample("piercing", f"rect {r.id} meets no {ps.axis} line", {"rect": r.id})
    return None


def intersection_masks(f: Family) -> list[int]:
    """Adjacency bitmasks of the intersection graph (no self loops)."""
    rects = f.rects
    masks = [0] * len(rects)
    for i, a in enumerate(rects):
        for j in range(i + 1, len(rects)):
            if intersects(a, rects[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


class ExactUnavailableError(ValueError):
    pass


class PackingResult(NamedTuple):
    nu: int
    witness: tuple[int, ...]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _cover_order(cand: int, adj: list[int]):
    """Greedy partition of ``cand`` into cliques of the intersection graph.

    Returns vertices with the running number of cliques used, in order of
    increasing clique index (the last entries carry the tightest bound).
    """
    order = []
    k = 0
    left = cand
    while left:
        k += 1
        # grow one clique: a vertex may join if it meets everything already in it
        room = left
        while room:
            v = (room & -room).bit_length() - 1
            order.append((v, k))
            left &= ~(1 << v)
            room &= adj[v]
            room &= ~(1 << v)
    return order


def packing_number_exact(f: Family, limit: int = EXACT_LIMIT) -> PackingResult:
    """Maximum pairwise-disjoint subfamily by branch and bound over bitsets.

    A clique cover of the candidate set bounds how many more disjoint rects
    can be added, which prunes the search.
    """
    if f.n > limit:
        raise ExactUnavailableError(
            f"exact packing number unavailable for n={f.n} > {limit}; use packing_bounds")
    require_general_position(f)
    n = f.n
    if n == 0:
        return PackingResult(0, ())
    adj = intersection_masks(f)
    full = (1 << n) - 1
    disjoint = [full & ~adj[v] & ~(1 << v) for v in range(n)]

    # seed the incumbent with the greedy witnesses, which are pairwise disjoint
    seeds = [greedy_lines(f, a).witnesses for a in ("horizontal", "vertical")]
    best = list(max(seeds, key=len))

    def expand(cand, chosen):
        nonlocal best
        order = _cover_order(cand, adj)
        for v, bound in reversed(order):
            if len(chosen) + bound <= len(best):
                return
            chosen.append(v)
            nxt = cand & disjoint[v]
            if nxt:
                expand(nxt, chosen)
            elif len(chosen) > len(best):
                best = list(chosen)
            chosen.pop()
            cand &= ~(1 << v)

    expand(full, [])
    return PackingResult(len(best), tuple(sorted(best)))


class PackingBounds(NamedTuple):
    lower: int
    exact: int | None


def packing_bounds(f: Family, limit: int = EXACT_LIMIT) -> PackingBounds:
    """Greedy lower bound, plus the exact value when ``n <= limit``."""
    lower = max(greedy_lines(f, "horizontal").q, greedy_lines(f, "vertical").q)
    exact = packing_number_exact(f, limit).nu if f.n <= limit else None
    return PackingBounds(lower, exact)
