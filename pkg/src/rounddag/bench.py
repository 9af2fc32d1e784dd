"""Experiment harness: sweeps over generators, budgets and seeds.

Results stream out as newline-delimited JSON records (one per trial) with a
CSV projection of per-cell means and standard errors for the plotting side.
The same master seed reproduces the same cohort of hidden DAGs for every
algorithm in a cell, so curves are comparable point by point.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .graphs import InvalidInputError
from .search import SearchConfig, ceil_log2, run_search
from .synth import FAMILIES, GeneratorConfig, generate
from .verify import verification_number_atomic


@dataclass(frozen=True)
class AlgorithmSpec:
    """A named rule turning the instance size into a round budget."""

    name: str
    k: int = 1

    def rounds_for(self, n: int) -> int:
        base = self.name
        if base == "adaptive_rlogn":
            return ceil_log2(n)
        if base == "adaptive_r2logn":
            return 2 * ceil_log2(n)
        if base == "adaptive_r3logn":
            return 3 * ceil_log2(n)
        if base == "adaptive_rn":
            return n
        if base.startswith("adaptive_r"):
            try:
                return int(base[len("adaptive_r") :])
            except ValueError as exc:
                raise InvalidInputError(f"bad algorithm name {base!r}") from exc
        raise InvalidInputError(f"unknown algorithm {base!r}")

    def checks_for(self, n: int) -> bool:
        # Budgets beyond ceil(log2 n) only pay off as checks.
        return self.rounds_for(n) > ceil_log2(n)


@dataclass(frozen=True)
class SweepCell:
    family: str
    n_values: tuple[int, ...]
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    cells: tuple[SweepCell, ...]
    algorithms: tuple[AlgorithmSpec, ...]
    trials: int = 100
    master_seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        cells = tuple(
            SweepCell(
                family=c["family"],
                n_values=tuple(int(x) for x in c["n_values"]),
                params=dict(c.get("params", {})),
            )
            for c in data.get("cells", [])
        )
        algorithms = tuple(
            AlgorithmSpec(name=a["name"], k=int(a.get("k", 1)))
            for a in data.get("algorithms", [])
        )
        if not cells or not algorithms:
            raise InvalidInputError("sweep spec needs non-empty cells and algorithms")
        for c in cells:
            if c.family not in FAMILIES:
                raise InvalidInputError(f"unknown family {c.family!r}")
        return cls(
            cells=cells,
            algorithms=algorithms,
            trials=int(data.get("trials", 100)),
            master_seed=int(data.get("master_seed", 0)),
        )


@dataclass
class TrialResult:
    family: str
    params: dict
    algorithm: str
    r: int
    k: int
    seed: int
    n: int
    intervention_count: int
    rounds_used: int
    checks_used: int
    nu1_reference: int
    wall_time_ns: int
    error: str | None = None

    def bound_constant(self) -> float:
        """Observed constant against r_eff * n**(1/r_eff) * nu1."""
        r_eff = max(1, min(self.r, ceil_log2(self.n)))
        denom = r_eff * self.n ** (1.0 / r_eff) * max(1, self.nu1_reference)
        return self.intervention_count / denom


def trial_seed(master_seed: int, trial: int) -> int:
    """Same cohort of DAGs for every algorithm: seeds depend on the trial only."""
    return (master_seed ^ (trial * 0x9E3779B97F4A7C15)) % 2**63


def _run_trial(args: tuple) -> TrialResult:
    family, n, params, algo_name, algo_k, seed = args
    config = GeneratorConfig(family=family, n=n, seed=seed, params=params)
    algo = AlgorithmSpec(name=algo_name, k=algo_k)
    r = algo.rounds_for(n)
    base = TrialResult(
        family=family,
        params=params,
        algorithm=algo_name,
        r=r,
        k=algo.k,
        seed=seed,
        n=n,
        intervention_count=-1,
        rounds_used=-1,
        checks_used=-1,
        nu1_reference=-1,
        wall_time_ns=-1,
    )
    try:
        hidden = generate(config)
        nu1, _ = verification_number_atomic(hidden.dag_copy())
        cfg = SearchConfig.for_instance(
            n, r, k=algo.k, checks_enabled=algo.checks_for(n)
        )
        start = time.perf_counter_ns()
        transcript = run_search(hidden, cfg)
        elapsed = time.perf_counter_ns() - start
        if not transcript.completed:
            raise AssertionError("search finished without full orientation")
        base.intervention_count = transcript.total_interventions
        base.rounds_used = transcript.rounds_used
        base.checks_used = transcript.checks_used
        base.nu1_reference = nu1
        base.wall_time_ns = elapsed
    except Exception as exc:  # record, never abort the sweep
        base.error = f"{type(exc).__name__}: {exc}"
    return base


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[TrialResult]:
    """One trial per (cell, n, algorithm, trial index), deterministic order."""
    jobs = []
    for cell in spec.cells:
        for n in cell.n_values:
            for algo in spec.algorithms:
                for t in range(spec.trials):
                    jobs.append(
                        (
                            cell.family,
                            n,
                            cell.params,
                            algo.name,
                            algo.k,
                            trial_seed(spec.master_seed, t),
                        )
                    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=8))
    else:
        results = [_run_trial(job) for job in jobs]
    return results


# -- persistence -------------------------------------------------------------


def write_ndjson(results: list[TrialResult], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for res in results:
            fh.write(json.dumps(asdict(res), sort_keys=True) + "\n")


def read_ndjson(path: str) -> list[TrialResult]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            out.append(TrialResult(**json.loads(line)))
    return out


SUMMARY_COLUMNS = (
    "family",
    "n",
    "algorithm",
    "r",
    "k",
    "trials",
    "mean_interventions",
    "stderr_interventions",
    "mean_time_ns",
    "stderr_time_ns",
    "mean_nu1",
    "max_bound_constant",
)


def summarize(results: list[TrialResult]) -> list[dict]:
    """Per-(family, n, algorithm, k) means and standard errors, stable order."""
    groups: dict[tuple, list[TrialResult]] = {}
    for res in results:
        if res.error is not None:
            continue
        groups.setdefault((res.family, res.n, res.algorithm, res.k), []).append(res)

    def stderr(values: list[float]) -> float:
        if len(values) < 2:
            return 0.0
        return float(np.std(values, ddof=1) / math.sqrt(len(values)))

    rows = []
    for key in sorted(groups):
        family, n, algorithm, k = key
        rs = groups[key]
        counts = [float(x.intervention_count) for x in rs]
        times = [float(x.wall_time_ns) for x in rs]
        rows.append(
            {
                "family": family,
                "n": n,
                "algorithm": algorithm,
                "r": rs[0].r,
                "k": k,
                "trials": len(rs),
                "mean_interventions": float(np.mean(counts)),
                "stderr_interventions": stderr(counts),
                "mean_time_ns": float(np.mean(times)),
                "stderr_time_ns": stderr(times),
                "mean_nu1": float(np.mean([x.nu1_reference for x in rs])),
                "max_bound_constant": max(x.bound_constant() for x in rs),
            }
        )
    return rows


def write_summary_csv(rows: list[dict], path: str) -> None:
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({col: row[col] for col in SUMMARY_COLUMNS})
