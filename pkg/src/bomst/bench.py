"""Experiment harness: strategy x instance grids, ratios, and CSV output.

The cost metric is the number of solutions visited by ranking sessions, which
is machine-independent; wall time is recorded but informational only.

Cost semantics per strategy family: a priori strategies are costed by fresh
per-group explorations (additive over the grouping, hence never below the
optimal grouping's cost and directly comparable to it), while dynamic
strategies are costed by their actual coverage-driven runs, whose ratios may
legitimately drop below 1.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from fractions import Fraction

from .geometry import Point, nd_bound
from .instances import Instance
from .optimal import DEFAULT_TAU, ExplorationCosts, OptimalGrouping, effectiveness_ratio, optimal_grouping
from .phase1 import dichotomic_search
from .phase2 import SearchState
from .ranking import SpanningTreeProblem
from .strategies import APRIORI_KINDS, StrategySpec, apriori_grouping, parse_strategy, solve

CSV_FIELDS = (
    "instance", "strategy", "solved", "enumerated", "y_n", "y_nse",
    "yn_bound", "optimal_cost", "ratio_num", "ratio_den", "ratio", "wall_ms",
)


@dataclass
class RunRecord:
    instance: str
    strategy: str
    solved: bool
    enumerated: int
    y_n: int
    y_nse: int
    yn_bound: int
    optimal_cost: int | None = None
    ratio: Fraction | None = None
    wall_ms: int = 0

    def __post_init__(self):
        if (self.optimal_cost is None) != (self.ratio is None):
            raise ValueError("ratio must be present exactly when optimal_cost is")


def yn_upper_bound(extremes: list[Point]) -> int:
    """|Y_NSE| plus the summed initial per-triangle bounds: an upper bound on
    the size of the full nondominated set."""
    return len(extremes) + sum(
        nd_bound(extremes[i], extremes[i + 1]) for i in range(len(extremes) - 1)
    )


def harmonic_mean(values) -> float | None:
    vals = [float(v) for v in values]
    if not vals:
        return None
    if any(v <= 0 for v in vals):
        raise ValueError("harmonic mean needs strictly positive values")
    return len(vals) / sum(1.0 / v for v in vals)


def apriori_fresh_cost(
    costs: ExplorationCosts, spec: StrategySpec, *, max_enumerations: int | None = None
) -> tuple[int, bool]:
    """Fresh-state cost of an a priori strategy's grouping on this instance."""
    state = SearchState.build(costs.problem, costs.extremes, costs.seed_points)
    total = 0
    for f, l in apriori_grouping(spec, state):
        remaining = None if max_enumerations is None else max_enumerations - total
        if remaining is not None and remaining <= 0:
            return total, False
        cost, completed = costs.cost(f, l, budget=remaining)
        total += cost
        if not completed:
            return total, False
    return total, True


def run_instance(
    name: str,
    instance: Instance,
    strategy: StrategySpec | str,
    *,
    optimal_cost: int | None = None,
    max_enumerations: int | None = None,
    costs: ExplorationCosts | None = None,
) -> RunRecord:
    spec = parse_strategy(strategy) if isinstance(strategy, str) else strategy
    problem = costs.problem if costs is not None else SpanningTreeProblem(instance)
    t0 = time.perf_counter()
    result = solve(problem, spec, max_enumerations=max_enumerations)
    solved = result.solved
    enumerated = result.enumerated
    if spec.kind in APRIORI_KINDS and len(result.extreme_set.points) > 1:
        if costs is None:
            costs = ExplorationCosts(problem, result.extreme_set.points)
        enumerated, fresh_ok = apriori_fresh_cost(costs, spec, max_enumerations=max_enumerations)
        solved = solved and fresh_ok
    wall_ms = int((time.perf_counter() - t0) * 1000)
    ratio = None if optimal_cost is None else effectiveness_ratio(enumerated, optimal_cost)
    return RunRecord(
        instance=name,
        strategy=spec.label,
        solved=solved,
        enumerated=enumerated,
        y_n=len(result.y_n),
        y_nse=len(result.extreme_set.points),
        yn_bound=yn_upper_bound(result.extreme_set.points),
        optimal_cost=optimal_cost,
        ratio=ratio,
        wall_ms=wall_ms,
    )


def run_grid(
    instances: list[tuple[str, Instance]],
    strategies: list[str],
    *,
    with_optimal: bool = False,
    tau: int = DEFAULT_TAU,
    max_enumerations: int | None = None,
) -> tuple[list[RunRecord], dict[str, OptimalGrouping]]:
    """One record per (instance, strategy); failures are recorded, not fatal.

    Returns the records sorted by (instance, strategy) plus the per-instance
    optimal groupings when requested.
    """
    specs = [parse_strategy(s) for s in strategies]
    records: list[RunRecord] = []
    optima: dict[str, OptimalGrouping] = {}
    for name, instance in instances:
        optimal_cost = None
        costs = None
        try:
            problem = SpanningTreeProblem(instance)
            extreme_set = dichotomic_search(problem)
            costs = ExplorationCosts(problem, extreme_set.points)
            if with_optimal:
                optima[name] = optimal_grouping(costs, tau)
                optimal_cost = optima[name].total_cost
            for spec in specs:
                records.append(
                    run_instance(
                        name, instance, spec,
                        optimal_cost=optimal_cost,
                        max_enumerations=max_enumerations,
                        costs=costs,
                    )
                )
        except Exception:
            for spec in specs:
                if not any(r.instance == name and r.strategy == spec.label for r in records):
                    records.append(RunRecord(name, spec.label, False, 0, 0, 0, 0))
    records.sort(key=lambda r: (r.instance, r.strategy))
    return records, optima


def write_csv(records: list[RunRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for r in records:
            if r.ratio is None:
                num = den = dec = ""
            else:
                num, den = r.ratio.numerator, r.ratio.denominator
                dec = f"{float(r.ratio):.6f}"
            writer.writerow([
                r.instance, r.strategy, int(r.solved), r.enumerated, r.y_n, r.y_nse,
                r.yn_bound, "" if r.optimal_cost is None else r.optimal_cost,
                num, den, dec, r.wall_ms,
            ])


def read_csv(path) -> list[RunRecord]:
    records: list[RunRecord] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header in {path}")
        for row in reader:
            records.append(
                RunRecord(
                    instance=row["instance"],
                    strategy=row["strategy"],
                    solved=bool(int(row["solved"])),
                    enumerated=int(row["enumerated"]),
                    y_n=int(row["y_n"]),
                    y_nse=int(row["y_nse"]),
                    yn_bound=int(row["yn_bound"]),
                    optimal_cost=int(row["optimal_cost"]) if row["optimal_cost"] else None,
                    ratio=Fraction(int(row["ratio_num"]), int(row["ratio_den"])) if row["ratio_num"] else None,
                    wall_ms=int(row["wall_ms"]),
                )
            )
    return records


def write_group_size_csv(optima: dict[str, OptimalGrouping], path, tau: int = DEFAULT_TAU) -> None:
    """Per-instance histogram of optimal group sizes 1..tau."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["instance", *(f"size_{k}" for k in range(1, tau + 1)), "average"])
        for name in sorted(optima):
            grouping = optima[name].grouping
            sizes = [l - f + 1 for f, l in grouping]
            hist = [sizes.count(k) for k in range(1, tau + 1)]
            avg = f"{sum(sizes) / len(sizes):.3f}" if sizes else ""
            writer.writerow([name, *hist, avg])
