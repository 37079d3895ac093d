"""Type-L vertices, their (A, h) contributions, inner/extremal labels and S-matrix."""
from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, replace

from .arrangement import ArrangementProfile
from .geometry import RIGHT, TOP, Family, Vertex
from .piercing import Counterexample, PiercingStructure

INNER, EXTREMAL = "inner", "extremal"


@dataclass(frozen=True)
class ContributionRecord:
    """A type-L vertex on the top edge of ``a_id`` and the right edge of ``b_id``.

    ``h_index`` is the rightmost vertical line meeting B (1-based), and
    ``floor_of_a`` the horizontal floor of A. ``kind`` is None until classified.
    """

    vertex: Vertex
    a_id: int
    b_id: int
    h_index: int
    floor_of_a: int
    kind: str | None = None

    @property
    def x(self) -> int:
        return self.vertex.x

    @property
    def depth(self) -> int:
        return self.vertex.depth


@dataclass(frozen=True)
class SMatrix:
    entries: dict[tuple[int, int], int]
    k: int

    def max_entry(self) -> int:
        return max(self.entries.values(), default=0)

    def total(self) -> int:
        return sum(self.entries.values())


class ContributionError(RuntimeError):
    """A right-edge owner is pierced by no vertical line; the piercing structure is broken."""


def extract_type_L(profile: ArrangementProfile, k: int) -> list[Vertex]:
    if k < 0:
        raise ValueError("k must be non-negative")
    return [v for v in profile.vertices if v.h_edge == TOP and v.v_edge == RIGHT and v.depth <= k]


def assign_contributions(f: Family, vertical: PiercingStructure, horizontal: PiercingStructure,
                         type_l) -> list[ContributionRecord]:
    lines = vertical.lines
    records = []
    for v in type_l:
        b = f[v.v_owner]
        j = bisect_right(lines, b.x_max)
        if j == 0 or lines[j - 1] < b.x_min:
            raise ContributionError(f"rect {b.id} (B of vertex {(v.x, v.y)}) meets no vertical line")
        records.append(ContributionRecord(v, v.h_owner, v.v_owner, j, horizontal.floor_of[v.h_owner]))
    return records


def _group_by_a(records):
    groups = defaultdict(list)
    for r in records:
        groups[r.a_id].append(r)
    for g in groups.values():
        g.sort(key=lambda r: r.x)
    return groups


def _has_witnesses(group, idx):
    me = group[idx]
    left = any(y.h_index != me.h_index for y in group[:idx] if y.x < me.x)
    right = any(z.h_index != me.h_index for z in group[idx + 1:] if z.x > me.x)
    return left and right


def classify_inner_extremal(records) -> list[ContributionRecord]:
    """Label each record inner or extremal by evaluating the definition literally.

    Inner: some record of the same A strictly to the left and some strictly to
    the right are both contributed by lines other than this record's line.
    Output keeps the input order.
    """
    kinds = {}
    for group in _group_by_a(records).values():
        for idx, rec in enumerate(group):
            kinds[id(rec)] = INNER if _has_witnesses(group, idx) else EXTREMAL
    return [replace(r, kind=kinds[id(r)]) for r in records]


def classify_inner_extremal_scan(records) -> list[ContributionRecord]:
    """Linear-per-rectangle equivalent of :func:`classify_inner_extremal`.

    A record is extremal exactly when every record to its left, or every
    record to its right, shares its line.
    """
    kinds = {}
    for group in _group_by_a(records).values():
        m = len(group)
        prefix = 1
        while prefix < m and group[prefix].h_index == group[0].h_index:
            prefix += 1
        suffix = 1
        while suffix < m and group[m - 1 - suffix].h_index == group[-1].h_index:
            suffix += 1
        for i, rec in enumerate(group):
            kinds[id(rec)] = EXTREMAL if i < prefix or i >= m - suffix else INNER
    return [replace(r, kind=kinds[id(r)]) for r in records]


def same_line_witness_count(records) -> int:
    """Inner records whose only witness pairs sit on one common line.

    Diagnostic for the reading that allows h' == h''; not asserted either way.
    """
    count = 0
    for group in _group_by_a(records).values():
        for idx, rec in enumerate(group):
            if rec.kind != INNER:
                continue
            lefts = {y.h_index for y in group[:idx] if y.h_index != rec.h_index}
            rights = {z.h_index for z in group[idx + 1:] if z.h_index != rec.h_index}
            if not any(a != b for a in lefts for b in rights):
                count += 1
    return count


def tabulate_S(records, k: int) -> SMatrix:
    entries = defaultdict(int)
    for r in records:
        if r.kind == INNER and r.depth <= k:
            entries[r.floor_of_a, r.h_index] += 1
    return SMatrix(dict(sorted(entries.items())), k)


def check_observation_2_2(records, k: int) -> Counterexample | None:
    """At most one record per (A, h, depth) with depth <= k."""
    seen = {}
    for r in records:
        if r.depth > k:
            continue
        key = (r.a_id, r.h_index, r.depth)
        if key in seen:
            return Counterexample("observation_2_2",
                                  f"A={r.a_id}, h={r.h_index}, depth={r.depth} contributes twice",
                                  {"a_id": r.a_id, "h_index": r.h_index, "depth": r.depth,
                                   "vertices": [list(seen[key].vertex[:2]), list(r.vertex[:2])]})
        seen[key] = r
    return None


def check_observation_2_3(f: Family, vertical: PiercingStructure, records) -> Counterexample | None:
    """An inner record on line i has A meeting lines i and i+1."""
    for r in records:
        if r.kind != INNER:
            continue
        a = f[r.a_id]
        i = r.h_index
        if i + 1 > vertical.q:
            return Counterexample("observation_2_3", f"inner record on last line {i} (A={r.a_id})",
                                  {"a_id": r.a_id, "h_index": i, "vertex": list(r.vertex[:2])})
        for j in (i, i + 1):
            if not a.x_min <= vertical.lines[j - 1] <= a.x_max:
                return Counterexample("observation_2_3", f"A={r.a_id} misses vertical line {j}",
                                      {"a_id": r.a_id, "h_index": i, "missed": j,
                                       "vertex": list(r.vertex[:2])})
    return None


def check_depth_monotone(records) -> Counterexample | None:
    """Per (A, h), depth strictly increases as x decreases."""
    groups = defaultdict(list)
    for r in records:
        groups[r.a_id, r.h_index].append(r)
    for (a, h), group in groups.items():
        group.sort(key=lambda r: -r.x)
        for prev, cur in zip(group, group[1:]):
            if cur.depth <= prev.depth:
                return Counterexample("depth_monotone",
                                      f"A={a}, h={h}: depth {cur.depth} at x={cur.x} not above {prev.depth} at x={prev.x}",
                                      {"a_id": a, "h_index": h})
    return None


def check_contribution_rank(records, k: int) -> Counterexample | None:
    """Per (A, h), the m-th record from the right has depth at least m - 1.

    Each record lies inside the B of every record to its right, so at most
    ``k + 1`` records per (A, h) can have depth <= k.
    """
    groups = defaultdict(list)
    for r in records:
        if r.depth <= k:
            groups[r.a_id, r.h_index].append(r)
    for (a, h), group in groups.items():
        group.sort(key=lambda r: -r.x)
        if len(group) > k + 1:
            return Counterexample("contribution_rank", f"A={a}, h={h} has {len(group)} > {k + 1} records",
                                  {"a_id": a, "h_index": h, "count": len(group)})
        for m, r in enumerate(group):
            if r.depth < m:
                return Counterexample("contribution_rank",
                                      f"A={a}, h={h}: record {m + 1} from the right has depth {r.depth} < {m}",
                                      {"a_id": a, "h_index": h, "x": r.x})
    return None


def count_observation_2_2_violations(records, k: int) -> int:
    """Number of (A, h, depth) keys carrying more than one record."""
    seen = defaultdict(int)
    for r in records:
        if r.depth <= k:
            seen[r.a_id, r.h_index, r.depth] += 1
    return sum(1 for c in seen.values() if c > 1)


def count_depth_monotone_violations(records) -> int:
    """Adjacent pairs (right to left, same A and h) whose depth fails to increase."""
    groups = defaultdict(list)
    for r in records:
        groups[r.a_id, r.h_index].append(r)
    bad = 0
    for group in groups.values():
        group.sort(key=lambda r: -r.x)
        bad += sum(1 for prev, cur in zip(group, group[1:]) if cur.depth <= prev.depth)
    return bad


def check_line_band(vertical: PiercingStructure, records) -> Counterexample | None:
    """Each record's x lies in [h_j, h_{j+1}) for its own line j."""
    for r in records:
        lo = vertical.line(r.h_index)
        hi = vertical.line(r.h_index + 1)
        if not lo <= r.x < hi:
            return Counterexample("line_band", f"vertex x={r.x} outside [{lo}, {hi}) for line {r.h_index}",
                                  {"a_id": r.a_id, "h_index": r.h_index, "x": r.x})
    return None


def extremal_per_rect(records) -> dict[int, int]:
    counts = defaultdict(int)
    for r in records:
        if r.kind == EXTREMAL:
            counts[r.a_id] += 1
    return dict(counts)


def check_extremal_lines(records) -> Counterexample | None:
    """No extremal record sits strictly between two records on other, different lines."""
    for a, group in _group_by_a(records).items():
        for idx, rec in enumerate(group):
            if rec.kind != EXTREMAL:
                continue
            lefts = {y.h_index for y in group[:idx]} - {rec.h_index}
            rights = {z.h_index for z in group[idx + 1:]} - {rec.h_index}
            if any(p != q for p in lefts for q in rights):
                return Counterexample("extremal_lines", f"extremal record of A={a} at x={rec.x} is enclosed",
                                      {"a_id": a, "x": rec.x})
    return None
