import math

import pytest

from rectlevel.arrangement import analyze_sweep, enumerate_vertices_oracle, level_complexity
from rectlevel.generators import (GeneratorParameterError, gen_clustered, gen_grid, gen_random,
                                  gen_staircase, gen_tightness)
from rectlevel.geometry import intersects, validate_general_position
from rectlevel.instance_io import dumps
from rectlevel.piercing import packing_number_exact


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_grid(m):
    f = gen_grid(m)
    assert f.n == 2 * m
    assert validate_general_position(f) == []
    p = enumerate_vertices_oracle(f)
    assert p.union_complexity == 4 * m * m == len(p.vertices)
    assert packing_number_exact(f).nu == m


def test_grid_m1_all_depth_zero():
    p = enumerate_vertices_oracle(gen_grid(1))
    assert p.depth_histogram == {0: 4}


def test_staircase_m1_no_vertices():
    assert analyze_sweep(gen_staircase(1)).vertices == ()


def test_staircase_m2():
    f = gen_staircase(2)
    assert intersects(f[0], f[1])
    p = enumerate_vertices_oracle(f)
    assert p.depth_histogram == {0: 4}
    assert packing_number_exact(f).nu == 1


def test_staircase_shape():
    f = gen_staircase(9)
    assert validate_general_position(f) == []
    for a, b in zip(f, f[1:]):
        assert a.y_max - a.y_min > b.y_max - b.y_min
        assert a.x_max - a.x_min < b.x_max - b.x_min
    assert all(r.x_min < 0 < r.x_max and r.y_min < 0 < r.y_max for r in f)


@pytest.mark.parametrize("k", [0, 2])
def test_staircase_linear_growth(k):
    for m in (16, 32):
        a = level_complexity(analyze_sweep(gen_staircase(m)), k)
        b = level_complexity(analyze_sweep(gen_staircase(2 * m)), k)
        assert abs(b / a - 2) <= 0.2


def test_staircase_m8_k2():
    # pairs (i, j) with j - i - 1 <= k give 4 vertices each at depth j - i - 1
    m, k = 8, 2
    expected = 4 * sum(1 for i in range(m) for j in range(i + 1, m) if j - i - 1 <= k)
    assert level_complexity(enumerate_vertices_oracle(gen_staircase(m)), k) == expected


def test_tightness_32_6():
    f = gen_tightness(32, 6)
    assert f.n == 32
    assert validate_general_position(f) == []
    stair, grid = f.rects[:16], f.rects[16:]
    assert max(r.x_max for r in stair) < min(r.x_min for r in grid)
    assert packing_number_exact(f).nu == 5
    # 8 base slabs, 2 nested copies each
    for i in range(0, 16, 2):
        outer, inner = grid[i], grid[i + 1]
        assert outer.x_min < inner.x_min < inner.x_max < outer.x_max
        assert outer.y_min < inner.y_min < inner.y_max < outer.y_max


@pytest.mark.parametrize("n, p", [(30, 6), (8, 6), (16, 2)])
def test_tightness_bad_parameters(n, p):
    with pytest.raises(GeneratorParameterError):
        gen_tightness(n, p)


def test_tightness_divisibility_message():
    with pytest.raises(GeneratorParameterError, match=r"4\(p-2\)=16 must divide n"):
        gen_tightness(30, 6)


def test_random_deterministic():
    assert dumps(gen_random(40, 7)) == dumps(gen_random(40, 7))
    assert dumps(gen_random(40, 7)) != dumps(gen_random(40, 8))


def test_random_single():
    f = gen_random(1, 3)
    assert f.n == 1 and analyze_sweep(f).vertices == ()


@pytest.mark.parametrize("span", [None, 3, 20])
def test_random_valid(span):
    for seed in range(10):
        assert validate_general_position(gen_random(30, seed, span)) == []


def test_random_span_controls_density():
    n = 2000
    sparse = len(analyze_sweep(gen_random(n, 1, span=round(4 * math.sqrt(n)))).vertices)
    assert sparse < 10 * n


def test_clustered_extremes():
    f1 = gen_clustered(12, 1, 2)
    assert all(intersects(a, b) for a in f1 for b in f1)
    assert packing_number_exact(f1).nu == 1
    fn = gen_clustered(12, 12, 2)
    assert packing_number_exact(fn).nu == 12
    assert analyze_sweep(fn).union_complexity == 0


def test_clustered_24_4():
    f = gen_clustered(24, 4, 0)
    assert validate_general_position(f) == []
    assert packing_number_exact(f).nu == 4


def test_clustered_bad():
    with pytest.raises(GeneratorParameterError):
        gen_clustered(3, 4)
