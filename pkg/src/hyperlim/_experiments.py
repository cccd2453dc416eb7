"""Scripted convergence experiments that emit ExperimentRecord tables."""

from __future__ import annotations

import csv
import inspect
import io
import itertools as it
from math import comb, factorial
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
)

from logrus import Logger
import numpy as np
from pydantic.dataclasses import dataclass
from scipy import stats

from . import __version__
from ._constants import (
    SEED_POLICY,
    ExperimentName,
    NormBound,
    RandomWalkVariant,
)
from ._contractions import (
    codegree_section,
    intersection_matrix,
    rw_matrices,
)
from ._cutnorm import (
    CutDistance,
    NormResult,
    cut_distance_upper,
    cut_norm_exact,
    one_cut_distance_upper,
    one_cut_norm,
    two_cut_norm,
)
from ._errors import CapacityError, InputError
from ._hom import DirectedGraph, directed_cycle, directed_path, t_density
from ._hypergraph import UniformHypergraph, codegree, decompose
from ._io import format_number
from ._random import (
    gen_nonuniform,
    gen_random_step,
    gen_triangle_hypergraph,
    gen_uniform_er,
)
from ._spectra import (
    Spectrum,
    pointwise_distance,
    spectrum_random_walk,
    spectrum_step_operator,
)
from ._step import (
    StepHypergraphon3,
    codegree_section_step,
    from_graph,
    from_hypergraph,
    intersection_graphon,
    limit_rw_kernel,
    random_walk_kernel,
)


logger = Logger(__name__)

# Rows that summarize every seed of a run carry this seed value.
ALL_SEEDS = -1

_RW_VARIANTS: Sequence[RandomWalkVariant] = (
    "incidence",
    "uniform-edge",
    "codegree-weighted",
)


@dataclass(frozen=True, order=True)
class ExperimentRecord:
    """One CSV row; (experiment, model, n, seed, statistic) is the key."""

    experiment: str
    model: str
    n: int
    seed: int
    statistic: str
    value: float


class Experiment(NamedTuple):
    """A registered experiment and its default sweep."""

    run: Callable[..., List[ExperimentRecord]]
    sizes: Sequence[int]
    seeds: Sequence[int]


def _three_uniform_models(
    n: int, p: float, seed: int
) -> Dict[str, UniformHypergraph]:
    return {
        "triangle": gen_triangle_hypergraph(n, p, seed),
        "er-uniform": gen_uniform_er(n, p**3, 3, seed),
    }


def spectral_convergence(
    sizes: Sequence[int],
    seeds: Sequence[int],
    *,
    p: float = 0.5,
    m: int = 3,
    eps: float = 0.01,
) -> List[ExperimentRecord]:
    """Codegree-section spectra of T(n, p) and G(n, p^3; 3) vs the limit."""
    name = "spectral-convergence"
    limit = Spectrum.from_values([p**3])
    rw_limit = Spectrum.from_values([1.0])

    records = []
    for n, seed in it.product(sizes, seeds):
        for model, H in _three_uniform_models(n, p, seed).items():
            W = from_graph(codegree_section(H))
            spectrum = spectrum_step_operator(W)
            rows = [
                ("pointwise-distance", pointwise_distance(spectrum, limit, m)),
                ("top-eigenvalue", float(spectrum.eigenvalues[0])),
            ]

            rw = random_walk_kernel(W, eps)
            if rw.assumption_holds:
                rw_spectrum = spectrum_step_operator(rw)
                rows.append(
                    (
                        "rw-kernel-distance",
                        pointwise_distance(rw_spectrum, rw_limit, m),
                    )
                )
            else:
                logger.debug(
                    "Skipping the random-walk spectrum below eps.",
                    model=model,
                    n=n,
                    seed=seed,
                )

            for statistic, value in rows:
                records.append(
                    ExperimentRecord(name, model, n, seed, statistic, value)
                )
    return records


def _ratio(a: float, b: float) -> float:
    """a / b, or NaN when b vanishes (an edgeless model)."""
    return a / b if b else float("nan")


def _distance_statistic(base: str, dist: CutDistance) -> str:
    """The statistic name base:method:overlay of a distance row."""
    return f"{base}:{dist.method}:{dist.overlay}"


def intersection_discrimination(
    sizes: Sequence[int],
    seeds: Sequence[int],
    *,
    p: float = 0.5,
    restarts: int = 10,
) -> List[ExperimentRecord]:
    """B(W) separates T(n, p) from G(n, p^3; 3) although W does not.

    Distances use the identity overlay, since both models are exchangeable.
    Their statistic names carry the norm method and overlay class, e.g.
    one-cut-distance:heuristic:identity. A heuristic inner norm makes the
    value an estimate rather than a certified upper bound.
    """
    name = "intersection-discrimination"
    records = []
    for n, seed in it.product(sizes, seeds):
        models = _three_uniform_models(n, p, seed)
        means = {}
        offdiag = {}
        graphons = {}
        for model, H in models.items():
            normalized = intersection_matrix(H).normalized
            B = normalized.weights
            mask = ~np.eye(n, dtype=bool)
            means[model] = float(B.mean())
            offdiag[model] = float(B[mask].mean())
            graphons[model] = from_graph(normalized)
            records.append(
                ExperimentRecord(
                    name, model, n, seed, "mean-entry", means[model]
                )
            )
            records.append(
                ExperimentRecord(
                    name, model, n, seed, "mean-offdiag", offdiag[model]
                )
            )

        one_cut = one_cut_distance_upper(
            from_hypergraph(models["triangle"]),
            from_hypergraph(models["er-uniform"]),
            seed=seed,
            max_iterations=0,
            restarts=restarts,
        )
        cut = cut_distance_upper(
            graphons["triangle"],
            graphons["er-uniform"],
            seed=seed,
            max_iterations=0,
            restarts=restarts,
        )
        for statistic, value in (
            (
                "mean-entry-ratio",
                _ratio(means["triangle"], means["er-uniform"]),
            ),
            (
                "offdiag-ratio",
                _ratio(offdiag["triangle"], offdiag["er-uniform"]),
            ),
            (_distance_statistic("one-cut-distance", one_cut), one_cut.value),
            (_distance_statistic("cut-distance", cut), cut.value),
        ):
            records.append(
                ExperimentRecord(name, "pair", n, seed, statistic, value)
            )
    return records


def _audit_rows(
    name: str,
    model: str,
    k: int,
    seed: int,
    lhs: float,
    rhs: float,
    bound: NormBound = "value",
) -> List[ExperimentRecord]:
    suffix = "" if bound == "value" else "-lower"
    return [
        ExperimentRecord(name, model, k, seed, "lhs", lhs),
        ExperimentRecord(name, model, k, seed, "rhs" + suffix, rhs),
        ExperimentRecord(name, model, k, seed, "slack" + suffix, rhs - lhs),
    ]


def _two_cut_bound(D: StepHypergraphon3, seed: int) -> NormResult:
    try:
        return two_cut_norm(D)
    except CapacityError:
        logger.warning(
            "Exact 2-cut norm is out of reach; using the heuristic lower"
            " bound.",
            k=D.k,
        )
        return two_cut_norm(D, "heuristic", seed=seed)


def lipschitz_audit(
    sizes: Sequence[int],
    seeds: Sequence[int],
    *,
    eps: float = 0.1,
    intersection_max_parts: int = 2,
    intersection_draws: int = 5,
) -> List[ExperimentRecord]:
    """Slack of the three contraction continuity inequalities.

    Sizes are part counts k. Each seed draws one random pair for the
    random-walk and codegree-section inequalities and `intersection_draws`
    pairs for the intersection inequality, whose rows carry the draw seed
    seed·intersection_draws + j. Where the exact 2-cut norm is out of reach
    the heuristic stands in and the rows read rhs-lower and slack-lower.
    """
    name = "lipschitz-audit"
    records: List[ExperimentRecord] = []
    for k, seed in it.product(sizes, seeds):
        U = gen_random_step(k, 2, 2 * seed)
        W = gen_random_step(k, 2, 2 * seed + 1)
        K_U, K_W = random_walk_kernel(U, eps), random_walk_kernel(W, eps)
        if K_U.assumption_holds and K_W.assumption_holds:
            lhs = cut_norm_exact(K_W.kernel - K_U.kernel)
            rhs = (2 / eps) * cut_norm_exact(W - U)
            records.extend(_audit_rows(name, "rw-kernel", k, seed, lhs, rhs))
        else:
            logger.debug("Skipping pair below eps.", k=k, seed=seed, eps=eps)

        U3 = gen_random_step(k, 3, 2 * seed)
        W3 = gen_random_step(k, 3, 2 * seed + 1)
        lhs = cut_norm_exact(
            codegree_section_step(W3) - codegree_section_step(U3)
        )
        rhs = one_cut_norm(W3 - U3).value / factorial(3 - 2)
        records.extend(
            _audit_rows(name, "codegree-section", k, seed, lhs, rhs)
        )

        if k > intersection_max_parts:
            continue
        for j in range(intersection_draws):
            draw = seed * intersection_draws + j
            UH = gen_random_step(k, 3, 2 * draw, "sigma-invariant")
            WH = gen_random_step(k, 3, 2 * draw + 1, "sigma-invariant")
            lhs = cut_norm_exact(
                intersection_graphon(WH) - intersection_graphon(UH)
            )
            norm = _two_cut_bound(WH - UH, draw)
            records.extend(
                _audit_rows(
                    name, "intersection", k, draw, lhs, norm.value, norm.bound
                )
            )
    return records


def rw_equivalence(
    sizes: Sequence[int],
    seeds: Sequence[int],
    *,
    p: Sequence[float] = (0.3, 0.4),
    m: int = 5,
) -> List[ExperimentRecord]:
    """The three hypergraph random walks share one limit kernel.

    Reports pairwise spectral distances among the walks and each walk's
    distance to the limit kernel of the top level.
    """
    name = "rw-equivalence"
    records = []
    for n, seed in it.product(sizes, seeds):
        H = gen_nonuniform(n, p, seed)
        spectra = {}
        for variant in _RW_VARIANTS:
            D, A = rw_matrices(H, variant)
            spectra[variant] = spectrum_random_walk(D, A)

        levels = decompose(H)
        limit = limit_rw_kernel(
            levels.levels[levels.rank], degree_normalization="hypergraph"
        )
        limit_spectrum = spectrum_step_operator(limit)

        for a, b in it.combinations(_RW_VARIANTS, 2):
            value = pointwise_distance(spectra[a], spectra[b], m)
            records.append(
                ExperimentRecord(
                    name, f"{a}:{b}", n, seed, "pairwise-distance", value
                )
            )
        for variant in _RW_VARIANTS:
            value = pointwise_distance(spectra[variant], limit_spectrum, m)
            records.append(
                ExperimentRecord(
                    name, variant, n, seed, "limit-distance", value
                )
            )
    return records


def _counting_test_graphs() -> Dict[str, DirectedGraph]:
    return {
        "directed-cycle-3": directed_cycle(3),
        "directed-cycle-4": directed_cycle(4),
        "directed-path-3": directed_path(3),
    }


def counting_lemma_audit(
    sizes: Sequence[int], seeds: Sequence[int]
) -> List[ExperimentRecord]:
    """|t(F,U) - t(F,W)| - |E(F)|·‖U - W‖ for random directed step pairs."""
    name = "counting-lemma-audit"
    records = []
    for k, seed in it.product(sizes, seeds):
        U = gen_random_step(k, 2, 2 * seed, "none")
        W = gen_random_step(k, 2, 2 * seed + 1, "none")
        norm = cut_norm_exact(U - W)
        for model, F in _counting_test_graphs().items():
            lhs = abs(t_density(F, U) - t_density(F, W))
            violation = lhs - len(F.arcs) * norm
            records.append(
                ExperimentRecord(name, model, k, seed, "violation", violation)
            )
    return records


def ks_distance(sample: Iterable[float], trials: int, p: float) -> float:
    """Kolmogorov–Smirnov distance from a sample to Binomial(trials, p)."""
    values = np.sort(np.asarray(list(sample), dtype=np.float64))
    if values.size == 0:
        raise InputError("Cannot compare an empty sample.")
    support = np.arange(trials + 1)
    empirical = np.searchsorted(values, support, side="right") / values.size
    expected = stats.binom.cdf(support, trials, p)
    return float(np.max(np.abs(empirical - expected)))


def codegree_distribution(
    sizes: Sequence[int],
    seeds: Sequence[int],
    *,
    p: float = 0.5,
    r: int = 3,
) -> List[ExperimentRecord]:
    """Codegree of the pair (0, 1) in G(N, p; r) across seeds.

    The summary rows compare the sample with Binomial(C(N-2, r-2), p) and
    with the Binomial(C(N, r), p) parameterization.
    """
    name = "codegree-distribution"
    records = []
    for N in sizes:
        sample = []
        for seed in seeds:
            value = float(codegree(gen_uniform_er(N, p, r, seed), 0, 1))
            sample.append(value)
            records.append(
                ExperimentRecord(
                    name, "er-uniform", N, seed, "codegree", value
                )
            )

        for statistic, trials in (
            ("ks-distance", comb(N - 2, r - 2)),
            ("ks-distance-literal", comb(N, r)),
        ):
            records.append(
                ExperimentRecord(
                    name,
                    "er-uniform",
                    N,
                    ALL_SEEDS,
                    statistic,
                    ks_distance(sample, trials, p),
                )
            )
    return records


EXPERIMENTS: Dict[ExperimentName, Experiment] = {
    "spectral-convergence": Experiment(
        spectral_convergence, (40, 80, 160, 200), tuple(range(20))
    ),
    "intersection-discrimination": Experiment(
        intersection_discrimination, (40, 80, 160), tuple(range(3))
    ),
    "lipschitz-audit": Experiment(
        lipschitz_audit, (2, 3, 4, 5, 6), tuple(range(50))
    ),
    "rw-equivalence": Experiment(
        rw_equivalence, (40, 80, 160), tuple(range(10))
    ),
    "counting-lemma-audit": Experiment(
        counting_lemma_audit, (2, 3, 4, 5), tuple(range(50))
    ),
    "codegree-distribution": Experiment(
        codegree_distribution, (30,), tuple(range(500))
    ),
}


def experiment_parameters(name: str) -> List[str]:
    """The keyword parameters a registered experiment accepts."""
    if name not in EXPERIMENTS:
        raise InputError(
            f"Unknown experiment {name!r}; choose one of"
            f" {sorted(EXPERIMENTS)}."
        )
    run = EXPERIMENTS[name].run  # type: ignore[index]
    return sorted(
        p.name
        for p in inspect.signature(run).parameters.values()
        if p.kind is inspect.Parameter.KEYWORD_ONLY
    )


def run_experiment(
    name: str,
    *,
    sizes: Optional[Sequence[int]] = None,
    seeds: Optional[Sequence[int]] = None,
    params: Optional[Mapping[str, Any]] = None,
) -> List[ExperimentRecord]:
    """Runs a registered experiment; rows come back sorted by key."""
    allowed = experiment_parameters(name)
    experiment = EXPERIMENTS[name]  # type: ignore[index]
    params = dict(params or {})
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise InputError(
            f"Experiment {name!r} does not take the parameter(s) {unknown};"
            f" it accepts {allowed}."
        )

    sizes = sorted(set(sizes or experiment.sizes))
    seeds = sorted(set(seeds or experiment.seeds))
    logger.info(
        "Running the %s experiment...", name, sizes=sizes, seeds=len(seeds)
    )
    records = sorted(experiment.run(sizes, seeds, **params))
    logger.info("Finished the %s experiment.", name, rows=len(records))
    return records


def records_to_csv(records: Iterable[ExperimentRecord]) -> str:
    """Header row, one row per record, then the metadata comment line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["experiment", "model", "n", "seed", "statistic", "value"])
    for record in records:
        writer.writerow(
            [
                record.experiment,
                record.model,
                record.n,
                record.seed,
                record.statistic,
                format_number(record.value),
            ]
        )
    buffer.write(f"# version={__version__} seed-policy={SEED_POLICY}\n")
    return buffer.getvalue()
