"""Closed-form level-complexity bounds and the per-instance certificate."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .arrangement import ArrangementProfile, analyze, level_complexity
from .classification import (EXTREMAL, INNER, assign_contributions, check_contribution_rank,
                             check_extremal_lines, check_line_band, check_observation_2_3,
                             classify_inner_extremal, classify_inner_extremal_scan,
                             count_depth_monotone_violations, count_observation_2_2_violations,
                             extract_type_L, extremal_per_rect, same_line_witness_count,
                             tabulate_S)
from .geometry import RIGHT, TOP, Family, reflect, reflect_vertex_type, require_general_position
from .piercing import (EXACT_LIMIT, ExactUnavailableError, check_floor_property, check_piercing,
                       greedy_lines, packing_number_exact)

REFLECTIONS = ("identity", "vertical", "horizontal", "both")


def _check_args(n, p, k):
    if n < 1 or p < 1 or k < 0:
        raise ValueError(f"need n >= 1, p >= 1, k >= 0; got n={n}, p={p}, k={k}")


def exact_bound_leq_k(n: int, p: int, k: int) -> int:
    """``8(k+1)n + 2(p-1)(p-3)(k+1)(k+2)`` with the quadratic product clamped at zero."""
    _check_args(n, p, k)
    return 8 * (k + 1) * n + 2 * max(0, (p - 1) * (p - 3)) * (k + 1) * (k + 2)


def exact_bound_X(n: int, p: int, k: int) -> int:
    """Bound on the type-L vertices of depth <= k: a quarter of :func:`exact_bound_leq_k`."""
    _check_args(n, p, k)
    return 2 * (k + 1) * n + max(0, (p - 1) * (p - 3)) * (k + 1) * (k + 2) // 2


def greedy_bound_X(n: int, q_h: int, q_v: int, k: int) -> int:
    """Type-L bound with the greedy line counts in place of ``p - 1``.

    Inner contributions can only come from interior vertical lines, so only
    ``q_v - 2`` lines per floor count.
    """
    return 2 * (k + 1) * n + q_h * max(0, q_v - 2) * (k + 1) * (k + 2) // 2


class Check(NamedTuple):
    name: str
    passed: bool | None  # None: skipped
    detail: str


class BoundCheckError(AssertionError):
    """A certificate check failed; ``dump`` holds the instance and the offending data."""

    def __init__(self, dump: dict):
        self.dump = dump
        failed = ", ".join(c["name"] for c in dump["failed_checks"])
        super().__init__(f"bound checks failed: {failed}")


@dataclass
class BoundReport:
    n: int
    k: int
    nu_exact: int | None
    q_h: int
    q_v: int
    measured_leq_k: int
    measured_X_leq_k_per_type: dict[str, int]
    inner_total: int
    extremal_total: int
    bound_values: dict[str, int]
    checks: list[Check]
    diagnostics: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    @property
    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "nu_exact": self.nu_exact,
            "q_h": self.q_h,
            "q_v": self.q_v,
            "measured_leq_k": self.measured_leq_k,
            "measured_X_leq_k_per_type": dict(self.measured_X_leq_k_per_type),
            "inner_total": self.inner_total,
            "extremal_total": self.extremal_total,
            "bound_values": dict(self.bound_values),
            "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks],
            "diagnostics": dict(self.diagnostics),
        }


def type_key(vtype) -> str:
    return f"{vtype[0]}_{vtype[1]}"


def _view_type(view_name: str) -> str:
    # type-L in a reflection is this vertex type of the original family
    return type_key(reflect_vertex_type((TOP, RIGHT), view_name))


@dataclass
class _View:
    """One reflection of the instance, with its arrangement and greedy lines."""

    name: str
    family: Family
    profile: ArrangementProfile
    horizontal: object
    vertical: object


class InstanceAnalysis:
    """Everything about a family that does not depend on ``k``, computed once.

    ``report(k)`` then derives the certificate for any depth threshold.
    """

    def __init__(self, f: Family, engine: str = "sweep", exact_limit: int = EXACT_LIMIT):
        require_general_position(f)
        self.family = f
        self.views = []
        for name in REFLECTIONS:
            g = f if name == "identity" else reflect(f, name)
            self.views.append(_View(name, g, analyze(g, engine),
                                    greedy_lines(g, "horizontal"), greedy_lines(g, "vertical")))
        try:
            self.packing = packing_number_exact(f, exact_limit)
        except ExactUnavailableError:
            self.packing = None

    @property
    def profile(self) -> ArrangementProfile:
        return self.views[0].profile

    @property
    def nu(self) -> int | None:
        return None if self.packing is None else self.packing.nu

    def records(self, view: _View, k: int, literal: bool = True):
        type_l = extract_type_L(view.profile, k)
        raw = assign_contributions(view.family, view.vertical, view.horizontal, type_l)
        return (classify_inner_extremal if literal else classify_inner_extremal_scan)(raw)

    def report(self, k: int, strict: bool = False) -> BoundReport:
        if k < 0:
            raise ValueError("k must be non-negative")
        f = self.family
        n = f.n
        nu = self.nu
        checks: list[Check] = []
        failures: list[dict] = []

        def add(name, cex_list, ok_detail):
            # cex_list: [(view name, Counterexample | None)]
            bad = [(vn, c) for vn, c in cex_list if c is not None]
            if bad:
                vn, c = bad[0]
                checks.append(Check(name, False, f"[{vn}] {c.detail}"))
                failures.append({"check": name, "reflection": vn, "detail": c.detail, "data": c.data})
            else:
                checks.append(Check(name, True, ok_detail))

        def add_cmp(name, measured, bound, what):
            ok = measured <= bound
            checks.append(Check(name, ok, f"{what} {measured} <= {bound}" if ok else f"{what} {measured} > {bound}"))
            if not ok:
                failures.append({"check": name, "measured": measured, "bound": bound})

        leq_k = level_complexity(self.profile, k)
        s_cap = (k + 1) * (k + 2) // 2
        per_type = {}
        inner_total = extremal_total = 0
        s_max = 0
        same_line = 0
        literal_2_2 = 0
        non_monotone = 0
        per_view_records = {}
        for view in self.views:
            recs = self.records(view, k)
            per_view_records[view.name] = recs
            per_type[_view_type(view.name)] = len(recs)
            inner_total += sum(1 for r in recs if r.kind == INNER)
            extremal_total += sum(1 for r in recs if r.kind == EXTREMAL)
            s_max = max(s_max, tabulate_S(recs, k).max_entry())
            same_line += same_line_witness_count(recs)
            literal_2_2 += count_observation_2_2_violations(recs, k)
            non_monotone += count_depth_monotone_violations(recs)

        views = self.views
        add("observation_2_1_horizontal",
            [(v.name, check_floor_property(v.family, v.horizontal)) for v in views],
            "every rect meets its floor line and no higher one")
        add("observation_2_1_vertical",
            [(v.name, check_floor_property(v.family, v.vertical)) for v in views],
            "every rect meets its column line and no later one")
        add("piercing",
            [(v.name, check_piercing(v.family, v.horizontal) or check_piercing(v.family, v.vertical))
             for v in views],
            "both greedy line sets pierce the family")
        add("observation_2_2_count",
            [(v.name, check_contribution_rank(per_view_records[v.name], k)) for v in views],
            "per (A, h): m-th record from the right has depth >= m-1, at most k+1 records")
        add("observation_2_3",
            [(v.name, check_observation_2_3(v.family, v.vertical, per_view_records[v.name])) for v in views],
            "inner contributions on line i meet lines i and i+1")
        add("line_band",
            [(v.name, check_line_band(v.vertical, per_view_records[v.name])) for v in views],
            "every contribution lies in [h_j, h_j+1)")
        add("extremal_lines",
            [(v.name, check_extremal_lines(per_view_records[v.name])) for v in views],
            "no extremal contribution is enclosed by two other lines")

        scan_mismatch = []
        for v in views:
            scan = classify_inner_extremal_scan(per_view_records[v.name])
            if [r.kind for r in scan] != [r.kind for r in per_view_records[v.name]]:
                scan_mismatch.append(v.name)
        checks.append(Check("classifier_equivalence", not scan_mismatch,
                            "literal and scan classifiers agree" if not scan_mismatch
                            else f"classifiers disagree on {scan_mismatch}"))

        add_cmp("proposition_2_4", s_max, s_cap, "max S entry")

        worst_extremal = max((c for v in views for c in extremal_per_rect(per_view_records[v.name]).values()),
                             default=0)
        add_cmp("extremal_per_rect", worst_extremal, 2 * (k + 1), "max extremal per rect")

        bound_values = {"S_entry": s_cap, "extremal_per_rect": 2 * (k + 1)}
        for v in views:
            g = greedy_bound_X(n, v.horizontal.q, v.vertical.q, k)
            bound_values[f"X_greedy_{v.name}"] = g
        worst_greedy = [(per_type[_view_type(v.name)], bound_values[f"X_greedy_{v.name}"], v.name)
                        for v in views]
        bad = [(m, b, vn) for m, b, vn in worst_greedy if m > b]
        if bad:
            m, b, vn = bad[0]
            checks.append(Check("equation_3_greedy", False, f"[{vn}] type-L {m} > {b}"))
            failures.append({"check": "equation_3_greedy", "reflection": vn, "measured": m, "bound": b})
        else:
            checks.append(Check("equation_3_greedy", True,
                                "type-L counts " + ", ".join(f"{vn}:{m}<={b}" for m, b, vn in worst_greedy)))

        if nu is None or n == 0:
            why = "empty family" if n == 0 else f"packing number unknown for n={n}"
            for name in ("equation_3", "theorem_2_5_leq_k", "packing_lower"):
                checks.append(Check(name, None, f"skipped: {why}"))
        else:
            p = nu + 1
            bx = exact_bound_X(n, p, k)
            bl = exact_bound_leq_k(n, p, k)
            bound_values["X_leq_k"] = bx
            bound_values["leq_k"] = bl
            worst = max(per_type.values(), default=0)
            add_cmp("equation_3", worst, bx, "max type-L count")
            add_cmp("theorem_2_5_leq_k", leq_k, bl, "level <= k")
            ok = all(v.horizontal.q <= nu and v.vertical.q <= nu for v in views)
            checks.append(Check("packing_lower", ok,
                                f"greedy line counts <= nu={nu}" if ok else f"a greedy line count exceeds nu={nu}"))

        x_total = sum(per_type.values())
        checks.append(Check("partition_reflections", x_total == leq_k,
                            f"sum of type-L counts over reflections {x_total} == level {leq_k}"))
        checks.append(Check("partition_inner_extremal", inner_total + extremal_total == x_total,
                            f"inner {inner_total} + extremal {extremal_total} == {x_total}"))
        # the identity arrangement's per-type tallies must match each reflection's type-L count
        mism = []
        for t_key, count in per_type.items():
            h, vv = t_key.split("_")
            direct = sum(c for d, c in self.profile.per_type_counts[h, vv].items() if d <= k)
            if direct != count:
                mism.append(f"{t_key}: {direct} vs {count}")
        checks.append(Check("reflection_types", not mism,
                            "per-type counts match reflections" if not mism else "; ".join(mism)))

        report = BoundReport(
            n=n, k=k, nu_exact=nu,
            q_h=views[0].horizontal.q, q_v=views[0].vertical.q,
            measured_leq_k=leq_k,
            measured_X_leq_k_per_type=per_type,
            inner_total=inner_total, extremal_total=extremal_total,
            bound_values=dict(sorted(bound_values.items())),
            checks=checks,
            diagnostics={
                "s_max": s_max,
                "inner_same_line_witnesses": same_line,
                # per-depth uniqueness and strict depth monotonicity per (A, h)
                # do not hold in general; tallied here, not asserted
                "observation_2_2_literal_violations": literal_2_2,
                "depth_monotone_violations": non_monotone,
            },
        )
        if strict and not report.passed:
            raise BoundCheckError({
                "instance": f.coords(),
                "k": k,
                "failed_checks": [c._asdict() for c in report.failed_checks],
                "counterexamples": failures,
            })
        return report


def verify(f: Family, k: int, engine: str = "sweep", exact_limit: int = EXACT_LIMIT,
           strict: bool = False) -> BoundReport:
    """Run the whole pipeline on ``f`` and every reflection and check each inequality at ``k``."""
    return InstanceAnalysis(f, engine, exact_limit).report(k, strict=strict)
