import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import THREE_RECT
from rectlevel.estimator import FEATURE_NAMES, RectangleLevelAnalyzer, check_rects
from rectlevel.generators import gen_grid
from rectlevel.geometry import Family, GeneralPositionError


def test_check_rects_accepts_arrays_and_families():
    arr = np.array(THREE_RECT, dtype=np.int32)
    f = check_rects(arr)
    assert f.coords() == [tuple(r) for r in THREE_RECT]
    assert check_rects(f) is f


@pytest.mark.parametrize("bad, exc", [
    (np.zeros((2, 3), dtype=int), ValueError),
    (np.array([[0.0, 0.0, 1.0, 1.0]]), TypeError),
    (np.array([[True, False, True, True]]), TypeError),
    ([(0, 0, 2, 2), (2, 3, 4, 5)], GeneralPositionError),
])
def test_check_rects_rejects(bad, exc):
    with pytest.raises(exc):
        check_rects(bad)


def test_params_round_trip():
    est = RectangleLevelAnalyzer(k=2, engine="oracle")
    assert est.get_params() == {"k": 2, "engine": "oracle", "exact_limit": 64, "perturb": False}
    assert clone(est).get_params() == est.get_params()


def test_fit_three_rect():
    est = RectangleLevelAnalyzer(k=1).fit(THREE_RECT)
    assert est.profile_.union_complexity == 2
    assert est.level_complexity() == 4
    assert est.level_complexity(0) == 2
    assert est.report_.passed
    assert est.verify(0).measured_leq_k == 2


def test_fit_transform_features():
    est = RectangleLevelAnalyzer(k=0)
    X = est.fit_transform(gen_grid(2).coords())
    assert X.shape == (4, len(FEATURE_NAMES))
    assert X.dtype == np.int64
    # each slab crosses two others with 4 vertices per crossing
    assert list(X[:, 2]) == [8, 8, 8, 8]
    assert list(est.get_feature_names_out()) == list(FEATURE_NAMES)


def test_perturb_option():
    touching = [(0, 0, 2, 2), (2, 3, 4, 5)]
    with pytest.raises(GeneralPositionError):
        RectangleLevelAnalyzer().fit(touching)
    est = RectangleLevelAnalyzer(perturb=True).fit(touching)
    assert est.nu_ == 2


def test_not_fitted():
    with pytest.raises(NotFittedError):
        RectangleLevelAnalyzer().level_complexity()


@pytest.mark.parametrize("params", [{"k": -1}, {"engine": "gpu"}])
def test_bad_params(params):
    with pytest.raises(ValueError):
        RectangleLevelAnalyzer(**params).fit(THREE_RECT)


def test_empty_family():
    est = RectangleLevelAnalyzer().fit(Family([]))
    assert est.level_complexity() == 0
