"""Deterministic JSON report document."""
from __future__ import annotations

import json

from .arrangement import level_complexity
from .bounds import InstanceAnalysis

SCHEMA_VERSION = 1


def _str_keys(d):
    return {str(k): v for k, v in d.items()}


def build_report(analysis: InstanceAnalysis, ks, source: str = "") -> dict:
    """Assemble the report for every ``k`` in ``ks``; all numbers are integers."""
    ks = sorted(set(ks))
    f = analysis.family
    profile = analysis.profile
    view = analysis.views[0]
    reports = [analysis.report(k) for k in ks]
    packing = {"nu": analysis.nu,
               "lower": max(view.horizontal.q, view.vertical.q),
               "exact_available": analysis.nu is not None,
               "witness": list(analysis.packing.witness) if analysis.packing else None}
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": {"n": f.n, "source": source},
        "analysis": {
            "depth_histogram": _str_keys(profile.depth_histogram),
            "union_complexity": profile.union_complexity,
            "vertex_count": len(profile.vertices),
            "leq_k": {str(k): level_complexity(profile, k) for k in ks},
        },
        "piercing": {
            "q_h": view.horizontal.q,
            "q_v": view.vertical.q,
            "horizontal_lines": list(view.horizontal.lines),
            "vertical_lines": list(view.vertical.lines),
            "floors": list(view.horizontal.floor_of),
            "columns": list(view.vertical.floor_of),
        },
        "packing": packing,
        "classification": {
            str(r.k): {
                "per_type_counts": r.measured_X_leq_k_per_type,
                "inner_total": r.inner_total,
                "extremal_total": r.extremal_total,
                "s_max": r.diagnostics["s_max"],
                "diagnostics": r.diagnostics,
            } for r in reports
        },
        "checks": {str(r.k): {"passed": r.passed, "bound_values": r.bound_values,
                              "items": r.to_dict()["checks"]} for r in reports},
        "passed": all(r.passed for r in reports),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
