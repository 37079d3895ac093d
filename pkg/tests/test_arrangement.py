import pytest
from hypothesis import given, settings

from conftest import THREE_RECT, TWO_CORNER, families
from oracles import crossings_by_definition, on_union_boundary
from rectlevel.arrangement import (analyze, analyze_sweep, enumerate_vertices_oracle,
                                   first_difference, level_complexity)
from rectlevel.generators import gen_grid, gen_random
from rectlevel.geometry import Family, GeneralPositionError


def _as_tuples(profile):
    return sorted(tuple(v) for v in profile.vertices)


def _def_tuples(f):
    # reorder the oracle tuples to Vertex field order
    return sorted((x, y, h, v, he, ve, d) for x, y, h, v, he, ve, d in crossings_by_definition(f))


def test_single_rect_empty():
    p = enumerate_vertices_oracle(Family.from_coords([(0, 0, 1, 1)]))
    assert p.vertices == () and p.union_complexity == 0


def test_two_corner_vertices():
    p = enumerate_vertices_oracle(Family.from_coords(TWO_CORNER))
    assert [(v.x, v.y, v.type, v.depth) for v in p.vertices] == [
        (2, 3, ("top", "left"), 0),
        (4, 1, ("bottom", "right"), 0),
    ]
    assert p.union_complexity == 2


def test_three_rect_depths():
    p = enumerate_vertices_oracle(Family.from_coords(THREE_RECT))
    assert {(v.x, v.y): v.depth for v in p.vertices} == {(9, 2): 0, (2, 9): 0, (8, 2): 1, (2, 8): 1}
    assert p.union_complexity == 2
    assert level_complexity(p, 0) == 2
    assert level_complexity(p, 1) == 4
    assert level_complexity(p, 7) == 4


def test_engines_reject_invalid():
    f = Family.from_coords([(0, 0, 2, 2), (2, 3, 4, 5)])
    for engine in ("oracle", "sweep"):
        with pytest.raises(GeneralPositionError):
            analyze(f, engine)
    with pytest.raises(ValueError):
        analyze(Family.from_coords(TWO_CORNER), "fast")


def test_sweep_matches_oracle_two_corner():
    f = Family.from_coords(TWO_CORNER)
    assert analyze_sweep(f) == enumerate_vertices_oracle(f)


def test_grid3_union_complexity():
    assert analyze_sweep(gen_grid(3)).union_complexity == 36


@pytest.mark.parametrize("seed", range(40))
def test_sweep_matches_oracle_random(seed):
    f = gen_random(2 + seed, seed, span=None if seed % 2 else 6)
    a, b = enumerate_vertices_oracle(f), analyze_sweep(f)
    assert first_difference(a, b) is None
    assert a == b


@given(families(max_size=14))
def test_oracle_matches_definition(f):
    assert _as_tuples(enumerate_vertices_oracle(f)) == _def_tuples(f)


@given(families(max_size=14))
def test_profile_invariants(f):
    p = analyze_sweep(f)
    assert p.union_complexity == p.depth_histogram.get(0, 0)
    assert sum(p.depth_histogram.values()) == len(p.vertices)
    assert list(p.vertices) == sorted(p.vertices)
    for d, c in p.depth_histogram.items():
        assert sum(t.get(d, 0) for t in p.per_type_counts.values()) == c
    assert len(p.vertices) <= 4 * f.n * (f.n - 1)
    levels = [level_complexity(p, k) for k in range(p.max_depth + 2)]
    assert levels == sorted(levels)
    assert levels[-1] == len(p.vertices)
    for v in p.vertices:
        assert v.h_owner != v.v_owner
        h, q = f[v.h_owner], f[v.v_owner]
        assert h.x_min < v.x < h.x_max and q.y_min < v.y < q.y_max


@settings(max_examples=60)
@given(families(max_size=10))
def test_depth_zero_iff_on_union_boundary(f):
    for v in analyze_sweep(f).vertices:
        assert (v.depth == 0) == on_union_boundary(f, v.x, v.y)


def test_level_complexity_rejects_negative():
    with pytest.raises(ValueError):
        level_complexity(analyze_sweep(Family.from_coords(TWO_CORNER)), -1)
