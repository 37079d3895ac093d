"""Exact rectangle primitives, the family container and general-position checks."""
from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

TOP, BOTTOM, LEFT, RIGHT = "top", "bottom", "left", "right"
VERTEX_TYPES = ((TOP, RIGHT), (TOP, LEFT), (BOTTOM, RIGHT), (BOTTOM, LEFT))


class GeneralPositionError(ValueError):
    """Raised when an analysis receives a family with coinciding edge coordinates."""

    def __init__(self, collisions):
        self.collisions = list(collisions)
        shown = "; ".join(str(c) for c in self.collisions[:5])
        more = "" if len(self.collisions) <= 5 else f" (+{len(self.collisions) - 5} more)"
        super().__init__(f"family is not in general position: {shown}{more}")


@dataclass(frozen=True, order=True)
class Rect:
    """Closed axis-parallel rectangle with integer edges."""

    id: int
    x_min: int
    y_min: int
    x_max: int
    y_max: int

    def __post_init__(self):
        for name in ("id", "x_min", "y_min", "x_max", "y_max"):
            # operator.index rejects floats and accepts numpy integers
            object.__setattr__(self, name, operator.index(getattr(self, name)))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"rectangle {self.id} has empty interior: {self.coords}")

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x_min, self.y_min, self.x_max, self.y_max)

    def __str__(self):
        return f"[{self.x_min},{self.x_max}]x[{self.y_min},{self.y_max}]"


class Family:
    """Ordered, immutable collection of rectangles with ids ``0..n-1``."""

    __slots__ = ("rects",)

    def __init__(self, rects: Iterable[Rect]):
        rects = tuple(rects)
        for i, r in enumerate(rects):
            if r.id != i:
                raise ValueError(f"rect ids must be 0..n-1 in order, got id {r.id} at {i}")
        object.__setattr__(self, "rects", rects)

    def __setattr__(self, name, value):
        raise AttributeError("Family is immutable")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[int]]) -> "Family":
        """Build from ``(x_min, y_min, x_max, y_max)`` rows."""
        return cls(Rect(i, *row) for i, row in enumerate(coords))

    @property
    def n(self) -> int:
        return len(self.rects)

    def coords(self) -> list[tuple[int, int, int, int]]:
        return [r.coords for r in self.rects]

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def __getitem__(self, i):
        return self.rects[i]

    def __eq__(self, other):
        return isinstance(other, Family) and self.rects == other.rects

    def __hash__(self):
        return hash(self.rects)

    def __repr__(self):
        return f"Family(n={self.n})"


class Vertex(NamedTuple):
    """Crossing of a horizontal edge of ``h_owner`` with a vertical edge of ``v_owner``.

    Field order makes tuple ordering equal to the canonical (x, y, ids) order.
    """

    x: int
    y: int
    h_owner: int
    v_owner: int
    h_edge: str
    v_edge: str
    depth: int

    @property
    def type(self) -> tuple[str, str]:
        return (self.h_edge, self.v_edge)


class Collision(NamedTuple):
    axis: str
    value: int
    first: tuple[int, str]
    second: tuple[int, str]

    def __str__(self):
        return (f"{self.axis}={self.value} shared by rect {self.first[0]} {self.first[1]} edge"
                f" and rect {self.second[0]} {self.second[1]} edge")


def intersects(a: Rect, b: Rect) -> bool:
    return (max(a.x_min, b.x_min) <= min(a.x_max, b.x_max)
            and max(a.y_min, b.y_min) <= min(a.y_max, b.y_max))


def contains_interior(r: Rect, px: int, py: int) -> bool:
    return r.x_min < px < r.x_max and r.y_min < py < r.y_max


def _edge_coords(f: Family, axis: str):
    if axis == "x":
        for r in f:
            yield r.x_min, r.id, LEFT
            yield r.x_max, r.id, RIGHT
    else:
        for r in f:
            yield r.y_min, r.id, BOTTOM
            yield r.y_max, r.id, TOP


def validate_general_position(f: Family) -> list[Collision]:
    """Return every colliding pair of edge coordinates; an empty list means valid."""
    collisions = []
    for axis in ("x", "y"):
        seen: dict[int, list[tuple[int, str]]] = {}
        for value, rid, role in _edge_coords(f, axis):
            owners = seen.setdefault(value, [])
            for prev in owners:
                collisions.append(Collision(axis, value, prev, (rid, role)))
            owners.append((rid, role))
    return collisions


def require_general_position(f: Family) -> None:
    collisions = validate_general_position(f)
    if collisions:
        raise GeneralPositionError(collisions)


def _rerank(values: list[tuple[int, int, int]]) -> dict[tuple[int, int], int]:
    # values: (coord, role, rid) with role 0 for max-edges so they sort first on ties
    order = sorted(values)
    return {(rid, role): 2 * rank for rank, (_, role, rid) in enumerate(order)}


def perturb_to_general_position(f: Family) -> Family:
    """Re-embed coordinates onto distinct even ranks.

    Coinciding coordinates are ordered max-edges first, then by rect id, so
    rectangles that only touch become disjoint.
    """
    xs = _rerank([(r.x_min, 1, r.id) for r in f] + [(r.x_max, 0, r.id) for r in f])
    ys = _rerank([(r.y_min, 1, r.id) for r in f] + [(r.y_max, 0, r.id) for r in f])
    return Family(Rect(r.id, xs[r.id, 1], ys[r.id, 1], xs[r.id, 0], ys[r.id, 0]) for r in f)


def reflect(f: Family, axis: str) -> Family:
    """Mirror the family.

    ``"vertical"`` mirrors across a vertical line (negates x, swapping left and
    right edges), ``"horizontal"`` negates y, ``"both"`` does both.
    """
    if axis not in ("horizontal", "vertical", "both"):
        raise ValueError(f"unknown reflection axis {axis!r}")
    fx = axis in ("vertical", "both")
    fy = axis in ("horizontal", "both")
    out = []
    for r in f:
        x0, x1 = (-r.x_max, -r.x_min) if fx else (r.x_min, r.x_max)
        y0, y1 = (-r.y_max, -r.y_min) if fy else (r.y_min, r.y_max)
        out.append(Rect(r.id, x0, y0, x1, y1))
    return Family(out)


def reflect_vertex_type(vtype: tuple[str, str], axis: str) -> tuple[str, str]:
    """Type that a vertex of type ``vtype`` takes after ``reflect(f, axis)``."""
    h, v = vtype
    if axis in ("horizontal", "both"):
        h = BOTTOM if h == TOP else TOP
    if axis in ("vertical", "both"):
        v = LEFT if v == RIGHT else RIGHT
    return (h, v)
