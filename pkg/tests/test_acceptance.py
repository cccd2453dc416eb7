"""Convergence thresholds of the named experiments at desk scale."""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Dict, List, Sequence, Tuple

from pytest import mark

from hyperlim import ExperimentRecord, run_experiment


params = mark.parametrize

Series = Dict[Tuple[str, int], Dict[int, float]]


def series(records: Sequence[ExperimentRecord], statistic: str) -> Series:
    """(model, seed) -> {n: value} for one statistic."""
    out: Series = defaultdict(dict)
    for r in records:
        if r.statistic == statistic:
            out[(r.model, r.seed)][r.n] = r.value
    return out


def decreasing_share(values: Series, model: str) -> float:
    """Share of seeds whose values strictly decrease in n."""
    runs: List[bool] = []
    for (m, _), by_n in values.items():
        if m != model:
            continue
        ordered = [by_n[n] for n in sorted(by_n)]
        runs.append(all(a > b for a, b in zip(ordered, ordered[1:])))
    assert runs
    return sum(runs) / len(runs)


@params("model", ["triangle", "er-uniform"])
def test_codegree_spectra_converge(model: str) -> None:
    """Codegree-section spectra approach (p^3, 0, 0) as n grows."""
    records = run_experiment(
        "spectral-convergence", sizes=[40, 80, 160], seeds=range(3)
    )
    distances = series(records, "pointwise-distance")
    assert decreasing_share(distances, model) >= 0.8

    at_160 = [v[160] for (m, _), v in distances.items() if m == model]
    # The triangle model's second eigenvalue decays like n^(-1/2) and still
    # sits near 0.02 at n = 160.
    limit = 0.02 if model == "er-uniform" else 0.025
    assert max(at_160) <= limit


def test_intersection_graphons_discriminate() -> None:
    """B separates T(n, p) from G(n, p^3; 3) at a small 1-cut distance."""
    records = run_experiment(
        "intersection-discrimination", sizes=[160], seeds=[0, 1]
    )
    pair = [r for r in records if r.model == "pair"]
    ratios = [r.value for r in pair if r.statistic == "mean-entry-ratio"]
    assert len(ratios) == 2
    assert all(1.8 <= v <= 2.2 for v in ratios)

    one_cut = [
        r for r in pair if r.statistic.startswith("one-cut-distance:")
    ]
    assert len(one_cut) == 2
    # 160 parts put the exact 1-cut norm out of reach.
    assert all(
        r.statistic == "one-cut-distance:heuristic:identity" for r in one_cut
    )
    assert all(r.value <= 0.05 for r in one_cut)


def test_random_walks_share_a_limit() -> None:
    """The three walks' spectra agree and approach the limit kernel."""
    records = run_experiment(
        "rw-equivalence", sizes=[40, 80, 160], seeds=range(10)
    )
    pairwise = series(records, "pairwise-distance")
    for model in {m for m, _ in pairwise}:
        assert decreasing_share(pairwise, model) >= 0.8
    assert all(v[160] <= 0.03 for v in pairwise.values())

    limit = series(records, "limit-distance")
    assert all(v[160] <= 0.05 for v in limit.values())


def test_lipschitz_audit_default_sweep() -> None:
    """Each continuity inequality gets at least 200 exactly audited pairs."""
    records = run_experiment("lipschitz-audit")
    slack = [r for r in records if r.statistic == "slack"]
    counts = Counter(r.model for r in slack)
    assert set(counts) == {"rw-kernel", "codegree-section", "intersection"}
    assert min(counts.values()) >= 200
    assert min(r.value for r in slack) >= -1e-12
    assert not [r for r in records if r.statistic.endswith("-lower")]
