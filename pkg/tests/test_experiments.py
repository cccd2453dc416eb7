"""Tests for the scripted experiments and their CSV tables."""

from __future__ import annotations

from collections import Counter
import math

from pytest import mark, raises

from hyperlim import (
    EXPERIMENTS,
    ExperimentRecord,
    InputError,
    __version__,
    records_to_csv,
    run_experiment,
)
from hyperlim._experiments import ALL_SEEDS, ks_distance


params = mark.parametrize


def test_records_to_csv() -> None:
    """Header, one line per record, then the metadata trailer."""
    records = [
        ExperimentRecord("demo", "er-uniform", 10, 0, "value", 1 / 3),
        ExperimentRecord("demo", "er-uniform", 10, ALL_SEEDS, "mean", 2.0),
    ]
    assert records_to_csv(records) == (
        "experiment,model,n,seed,statistic,value\n"
        "demo,er-uniform,10,0,value,0.333333333333\n"
        "demo,er-uniform,10,-1,mean,2\n"
        f"# version={__version__} seed-policy=philox-seedsequence\n"
    )


def test_records_sort_by_key() -> None:
    """Records order by (experiment, model, n, seed, statistic)."""
    a = ExperimentRecord("x", "m", 2, 1, "s", 0.0)
    b = ExperimentRecord("x", "m", 10, 0, "s", 0.0)
    c = ExperimentRecord("x", "m", 10, ALL_SEEDS, "t", 0.0)
    assert sorted([b, c, a]) == [a, c, b]


def test_ks_distance() -> None:
    """Point masses are compared with the binomial CDF."""
    assert ks_distance([0.0, 0.0], 1, 0.0) == 0.0
    assert abs(ks_distance([1.0], 1, 0.5) - 0.5) < 1e-12
    with raises(InputError):
        ks_distance([], 3, 0.5)


def test_unknown_experiment() -> None:
    """Unknown names and parameters are input errors."""
    with raises(InputError):
        run_experiment("no-such-experiment")
    with raises(InputError):
        run_experiment(
            "codegree-distribution", sizes=[6], seeds=[0], params={"m": 3}
        )


def test_registry_covers_every_experiment() -> None:
    """Every experiment name has a registered runner and sweep."""
    assert sorted(EXPERIMENTS) == [
        "codegree-distribution",
        "counting-lemma-audit",
        "intersection-discrimination",
        "lipschitz-audit",
        "rw-equivalence",
        "spectral-convergence",
    ]
    for experiment in EXPERIMENTS.values():
        assert experiment.sizes and experiment.seeds


def test_rows_are_sorted_and_deterministic() -> None:
    """Runs are sorted and repeat exactly."""
    kwargs = dict(sizes=[3, 2], seeds=[1, 0])
    first = run_experiment("counting-lemma-audit", **kwargs)
    assert first == sorted(first)
    assert first == run_experiment("counting-lemma-audit", **kwargs)
    assert records_to_csv(first) == records_to_csv(
        run_experiment("counting-lemma-audit", sizes=[2, 3], seeds=[0, 1])
    )


def test_counting_lemma_audit() -> None:
    """The counting lemma is never violated."""
    records = run_experiment(
        "counting-lemma-audit", sizes=[2, 3, 4], seeds=range(5)
    )
    assert len(records) == 3 * 5 * 3
    assert max(r.value for r in records) <= 1e-12


def test_lipschitz_audit() -> None:
    """All three continuity inequalities hold with nonnegative slack."""
    records = run_experiment("lipschitz-audit", sizes=[2, 3], seeds=range(3))
    slack = [r for r in records if r.statistic == "slack"]
    models = Counter(r.model for r in slack)
    assert models["codegree-section"] == 6
    # Hypergraphon pairs only run up to two parts, five draws per seed.
    assert models["intersection"] == 15
    assert {r.seed for r in slack if r.model == "intersection"} == set(
        range(15)
    )
    assert min(r.value for r in slack) >= -1e-12

    lhs = {
        (r.model, r.n, r.seed): r.value
        for r in records
        if r.statistic == "lhs"
    }
    for r in slack:
        assert lhs[(r.model, r.n, r.seed)] >= 0.0


def test_lipschitz_audit_tags_heuristic_rows() -> None:
    """Out of exact reach the 2-cut side is reported as a lower bound."""
    records = run_experiment(
        "lipschitz-audit",
        sizes=[3],
        seeds=[0],
        params={"intersection_max_parts": 3, "intersection_draws": 1},
    )
    stats = {r.statistic for r in records if r.model == "intersection"}
    assert stats == {"lhs", "rhs-lower", "slack-lower"}


def test_spectral_convergence() -> None:
    """Both models produce spectral statistics per size and seed."""
    records = run_experiment(
        "spectral-convergence", sizes=[12], seeds=[0, 1], params={"m": 2}
    )
    assert {r.model for r in records} == {"triangle", "er-uniform"}
    stats = {r.statistic for r in records}
    assert {"pointwise-distance", "top-eigenvalue"} <= stats
    for r in records:
        assert math.isfinite(r.value)
        assert r.value >= 0.0


def test_intersection_discrimination() -> None:
    """Per-model means and the pairwise comparison rows."""
    records = run_experiment(
        "intersection-discrimination", sizes=[10], seeds=[0]
    )
    pair = {r.statistic: r.value for r in records if r.model == "pair"}
    # Ten parts keep both norms exact; the overlay is the identity.
    assert set(pair) == {
        "mean-entry-ratio",
        "offdiag-ratio",
        "one-cut-distance:exact:identity",
        "cut-distance:exact:identity",
    }
    assert pair["one-cut-distance:exact:identity"] >= 0.0
    assert pair["cut-distance:exact:identity"] >= 0.0
    assert {r.model for r in records} == {"triangle", "er-uniform", "pair"}


def test_rw_equivalence() -> None:
    """Pairwise and limit distances for the three walks."""
    records = run_experiment("rw-equivalence", sizes=[12], seeds=[0])
    pairwise = [r for r in records if r.statistic == "pairwise-distance"]
    limit = [r for r in records if r.statistic == "limit-distance"]
    assert len(pairwise) == 3
    assert {r.model for r in limit} == {
        "incidence",
        "uniform-edge",
        "codegree-weighted",
    }
    for r in records:
        assert 0.0 <= r.value <= 2.0 + 1e-12


def test_rw_equivalence_rejects_uniform_p() -> None:
    """A single level has no top-level probability vector to split."""
    with raises(InputError):
        run_experiment(
            "rw-equivalence", sizes=[8], seeds=[0], params={"p": (0.0, 0.0)}
        )


def test_codegree_distribution() -> None:
    """One codegree row per seed plus two KS summary rows."""
    records = run_experiment(
        "codegree-distribution", sizes=[8], seeds=range(20)
    )
    per_seed = [r for r in records if r.seed != ALL_SEEDS]
    summary = {r.statistic: r.value for r in records if r.seed == ALL_SEEDS}
    assert len(per_seed) == 20
    assert all(0 <= r.value <= 6 for r in per_seed)
    assert set(summary) == {"ks-distance", "ks-distance-literal"}
    assert all(0.0 <= v <= 1.0 for v in summary.values())
    # Summary rows sort ahead of the per-seed rows.
    assert records[0].seed == ALL_SEEDS
