"""Estimator-style front end so the analyzer composes with scikit-learn tooling."""
from __future__ import annotations

from collections import Counter

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .arrangement import ENGINES, level_complexity
from .bounds import InstanceAnalysis
from .classification import extract_type_L
from .geometry import Family, perturb_to_general_position, require_general_position
from .piercing import EXACT_LIMIT

FEATURE_NAMES = ("floor", "column", "boundary_vertices_leq_k", "type_l_top_edge_leq_k")


def check_rects(X, *, general_position: bool = True) -> Family:
    """Validate rectangle input and return a :class:`Family`.

    ``X`` is a Family or an integer array-like of shape ``(n, 4)`` with rows
    ``x_min, y_min, x_max, y_max``. Floats are rejected even when integral.
    """
    if isinstance(X, Family):
        f = X
    else:
        arr = np.asarray(X)
        if arr.size == 0:
            arr = arr.reshape(0, 4)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError(f"expected shape (n, 4), got {arr.shape}")
        if arr.dtype == bool or arr.dtype.kind not in "iuO":
            raise TypeError(f"rectangle coordinates must be integers, got dtype {arr.dtype}")
        f = Family.from_coords(arr.tolist())
    if general_position:
        require_general_position(f)
    return f


class RectangleLevelAnalyzer(BaseEstimator):
    """Level complexity, piercing lines, packing number and bound certificate of a family.

    Parameters
    ----------
    k : int
        Depth threshold used by ``report_`` and ``fit_transform``.
    engine : {"sweep", "oracle"}
    exact_limit : int
        Largest family for which the exact packing number is computed.
    perturb : bool
        Re-rank coordinates into general position instead of rejecting ties.

    Fitted attributes: ``family_``, ``profile_``, ``horizontal_``, ``vertical_``,
    ``nu_`` (None above ``exact_limit``), ``report_``.
    """

    def __init__(self, k=0, engine="sweep", exact_limit=EXACT_LIMIT, perturb=False):
        self.k = k
        self.engine = engine
        self.exact_limit = exact_limit
        self.perturb = perturb

    def _validate_params(self):
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {sorted(ENGINES)}, got {self.engine!r}")

    def fit(self, X, y=None):
        self._validate_params()
        f = check_rects(X, general_position=not self.perturb)
        if self.perturb:
            f = perturb_to_general_position(f)
        self.family_ = f
        self.n_rects_ = f.n
        self.analysis_ = InstanceAnalysis(f, self.engine, self.exact_limit)
        view = self.analysis_.views[0]
        self.profile_ = view.profile
        self.horizontal_ = view.horizontal
        self.vertical_ = view.vertical
        self.nu_ = self.analysis_.nu
        self.report_ = self.analysis_.report(self.k)
        return self

    def fit_transform(self, X, y=None):
        """Fit, then return one row of integer features per rectangle (see ``FEATURE_NAMES``)."""
        self.fit(X)
        k = self.k
        boundary = Counter()
        for v in self.profile_.vertices:
            if v.depth <= k:
                boundary[v.h_owner] += 1
                boundary[v.v_owner] += 1
        tops = Counter(v.h_owner for v in extract_type_L(self.profile_, k))
        out = np.zeros((self.n_rects_, len(FEATURE_NAMES)), dtype=np.int64)
        for r in self.family_:
            out[r.id] = (self.horizontal_.floor_of[r.id], self.vertical_.floor_of[r.id],
                         boundary[r.id], tops[r.id])
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(FEATURE_NAMES, dtype=object)

    def level_complexity(self, k=None) -> int:
        check_is_fitted(self, "profile_")
        return level_complexity(self.profile_, self.k if k is None else k)

    def verify(self, k=None, strict=False):
        """Bound certificate at ``k`` (defaults to the constructor's ``k``)."""
        check_is_fitted(self, "analysis_")
        return self.analysis_.report(self.k if k is None else k, strict=strict)
