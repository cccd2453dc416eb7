"""Contains the clack runner functions."""

from __future__ import annotations

import functools
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from clack.types import ClackRunner
from eris import ErisError, Err, Ok, Result
from logrus import Logger

from ._config import (
    Config,
    ContractConfig,
    CutnormConfig,
    ExperimentConfig,
    GenConfig,
    HomConfig,
    SpectrumConfig,
)
from ._constants import (
    EXIT_DATA_ERROR,
    EXIT_OK,
    EXIT_USAGE_ERROR,
    PROJECT_NAME,
)
from ._contractions import (
    codegree_section,
    intersection_matrix,
    p_weighted_adjacency,
)
from ._cutnorm import (
    cut_distance_upper,
    cut_norm_exact,
    cut_norm_heuristic,
    one_cut_distance_upper,
    one_cut_norm,
)
from ._errors import HyperlimError
from ._experiments import (
    experiment_parameters,
    records_to_csv,
    run_experiment as run_named,
)
from ._hom import verify_intersection_identity, verify_subdivision_identity
from ._hypergraph import as_uniform
from ._io import (
    format_number,
    is_step_text,
    matrix_to_csv,
    read_graph,
    read_hypergraph,
    read_step,
    read_text,
    spectrum_to_csv,
)
from ._random import gen_nonuniform, gen_triangle_hypergraph, gen_uniform_er
from ._spectra import rw_spectra, spectrum_step_operator
from ._step import StepKernel, from_graph


logger = Logger(__name__)

# The ALL_RUNNERS list is populated later by the `register_runner` decorator.
ALL_RUNNERS: List[ClackRunner] = []


def register_runner(runner: ClackRunner) -> ClackRunner:
    """Register a clack runner function.

    Numerical errors escaping the runner are logged and mapped to the exit
    code their class carries.
    """

    @functools.wraps(runner)
    def wrapped(cfg: Any) -> int:
        try:
            return runner(cfg)
        except HyperlimError as e:
            logger.error(
                "The %r command failed.",
                cfg.command,
                error_type=type(e).__name__,
                error=str(e),
            )
            print(f"{PROJECT_NAME}: error: {e}", file=sys.stderr)
            return e.exit_code

    ALL_RUNNERS.append(wrapped)
    return wrapped


def _usage_error(cfg: Config, message: str) -> int:
    print(
        f"usage: {PROJECT_NAME} {cfg.command} ...\n"
        f"{PROJECT_NAME} {cfg.command}: error: {message}",
        file=sys.stderr,
    )
    return EXIT_USAGE_ERROR


def _data_error(message: str, result: Result[Any, ErisError]) -> int:
    assert isinstance(result, Err)
    e = result.err()
    logger.error(message, error=e.to_json())
    print(f"{PROJECT_NAME}: error: {e}", file=sys.stderr)
    return EXIT_DATA_ERROR


def _seed(cfg: Config) -> int:
    return 0 if cfg.seed is None else cfg.seed


def _reject_seed(cfg: Config, hint: str = "") -> Optional[int]:
    """Usage error for --seed on a command that draws nothing at random."""
    if cfg.seed is None:
        return None
    return _usage_error(cfg, f"--seed has no effect on this command{hint}")


def _emit(cfg: Config, text: str) -> None:
    """Writes `text` to --out when given, else to STDOUT."""
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        cfg.out.write_text(text)
        logger.info("Wrote output file.", path=str(cfg.out))


def _render(x: Union[int, float, Fraction]) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return format_number(x)


@register_runner
def run_gen(cfg: GenConfig) -> int:
    """Clack runner for the 'gen' subcommand."""
    if not cfg.p:
        return _usage_error(cfg, "the following arguments are required: --p")
    if cfg.model != "nonuniform" and len(cfg.p) != 1:
        return _usage_error(
            cfg, f"model {cfg.model!r} takes exactly one --p value"
        )

    if cfg.model == "er-uniform":
        H = gen_uniform_er(cfg.n, cfg.p[0], cfg.r, _seed(cfg)).base
    elif cfg.model == "triangle":
        H = gen_triangle_hypergraph(cfg.n, cfg.p[0], _seed(cfg)).base
    else:
        H = gen_nonuniform(cfg.n, cfg.p, _seed(cfg))

    logger.info(
        "Generated hypergraph.",
        model=cfg.model,
        n=cfg.n,
        seed=_seed(cfg),
        edges=len(H.edges),
    )
    _emit(cfg, H.to_text())
    if cfg.out is not None:
        print(f"edges={len(H.edges)}")
    return EXIT_OK


@register_runner
def run_contract(cfg: ContractConfig) -> int:
    """Clack runner for the 'contract' subcommand."""
    ec = _reject_seed(cfg)
    if ec is not None:
        return ec

    if cfg.kind == "p-weighted" and not cfg.p:
        return _usage_error(cfg, "--kind p-weighted requires --p")

    H_r = read_hypergraph(cfg.input_path)
    if isinstance(H_r, Err):
        return _data_error("Unable to read the input hypergraph.", H_r)
    H = H_r.ok()

    if cfg.kind == "codegree":
        matrix = codegree_section(as_uniform(H)).weights
    elif cfg.kind == "intersection-raw":
        matrix = intersection_matrix(as_uniform(H)).raw.weights
    elif cfg.kind == "intersection-normalized":
        matrix = intersection_matrix(as_uniform(H)).normalized.weights
    else:
        assert cfg.p is not None
        matrix = p_weighted_adjacency(H, cfg.p).weights

    _emit(cfg, matrix_to_csv(matrix))
    return EXIT_OK


@register_runner
def run_hom(cfg: HomConfig) -> int:
    """Clack runner for the 'hom' subcommand."""
    ec = _reject_seed(cfg)
    if ec is not None:
        return ec

    F_r = read_graph(cfg.pattern_path)
    if isinstance(F_r, Err):
        return _data_error("Unable to read the pattern graph.", F_r)

    H_r = read_hypergraph(cfg.input_path)
    if isinstance(H_r, Err):
        return _data_error("Unable to read the host hypergraph.", H_r)

    verify = (
        verify_subdivision_identity
        if cfg.via == "codegree"
        else verify_intersection_identity
    )
    check = verify(
        F_r.ok(), as_uniform(H_r.ok()), cfg.r, exact=cfg.exact
    )
    _emit(
        cfg,
        f"lhs={_render(check.lhs)} rhs={_render(check.rhs)}"
        f" equal={str(check.equal).lower()}\n",
    )
    return EXIT_OK


@register_runner
def run_cutnorm(cfg: CutnormConfig) -> int:
    """Clack runner for the 'cutnorm' subcommand."""
    W_r = read_step(cfg.input_path)
    if isinstance(W_r, Err):
        return _data_error("Unable to read the STEP file.", W_r)
    W = W_r.ok()

    if cfg.other is not None:
        U_r = read_step(cfg.other)
        if isinstance(U_r, Err):
            return _data_error("Unable to read the second STEP file.", U_r)
        U = U_r.ok()
        if type(U) is not type(W):
            return _usage_error(
                cfg, "both STEP files must be kernels or both tensors"
            )

        kwargs: Dict[str, Any] = dict(
            seed=_seed(cfg), restarts=cfg.restarts, cap=cfg.cut_norm_cap
        )
        if isinstance(W, StepKernel):
            assert isinstance(U, StepKernel)
            dist = cut_distance_upper(W, U, cfg.blowup, **kwargs)
        else:
            assert not isinstance(U, StepKernel)
            dist = one_cut_distance_upper(W, U, cfg.blowup, **kwargs)

        _emit(
            cfg,
            f"{format_number(dist.value)} method={dist.method} bound=upper"
            f" overlay={dist.overlay}\n",
        )
        return EXIT_OK

    if isinstance(W, StepKernel):
        if cfg.mode == "exact":
            value = cut_norm_exact(W, cap=cfg.cut_norm_cap)
            line = f"{format_number(value)} method=exact bound=value"
        else:
            estimate = cut_norm_heuristic(W, cfg.restarts, _seed(cfg))
            line = (
                f"{format_number(estimate.value)} method=heuristic"
                " bound=lower"
            )
    else:
        result = one_cut_norm(
            W,
            cfg.mode,
            seed=_seed(cfg),
            restarts=cfg.restarts,
            cap=cfg.cut_norm_cap,
        )
        line = (
            f"{format_number(result.value)} method={result.method}"
            f" bound={result.bound}"
        )

    _emit(cfg, line + "\n")
    return EXIT_OK


def _load_kernel(cfg: SpectrumConfig) -> Result[StepKernel, ErisError]:
    """Reads a STEP kernel, or a uniform hypergraph's codegree section."""
    text_r = read_text(cfg.input_path)
    if isinstance(text_r, Err):
        return text_r

    if is_step_text(text_r.ok()):
        W_r = read_step(cfg.input_path)
        if isinstance(W_r, Err):
            return W_r
        W = W_r.ok()
        if not isinstance(W, StepKernel):
            return Err(
                f"Expected an order-2 STEP kernel, got order {W.order}."
            )
        if not W.symmetric:
            return Err("Expected a symmetric STEP kernel.")
        return Ok(W)

    H_r = read_hypergraph(cfg.input_path)
    if isinstance(H_r, Err):
        return H_r
    try:
        G = codegree_section(as_uniform(H_r.ok()))
    except HyperlimError as e:
        return Err(f"Unable to contract the hypergraph: {e}")
    return Ok(from_graph(G))


@register_runner
def run_spectrum(cfg: SpectrumConfig) -> int:
    """Clack runner for the 'spectrum' subcommand."""
    ec = _reject_seed(cfg)
    if ec is not None:
        return ec

    if cfg.operator != "adjacency" and cfg.eps is None:
        return _usage_error(cfg, f"--operator {cfg.operator} requires --eps")

    W_r = _load_kernel(cfg)
    if isinstance(W_r, Err):
        return _data_error("Unable to load a step kernel.", W_r)
    W = W_r.ok()

    if cfg.operator == "adjacency":
        spectrum = spectrum_step_operator(W)
    else:
        assert cfg.eps is not None
        kernel_spectrum, laplacian_spectrum = rw_spectra(W, cfg.eps)
        spectrum = (
            kernel_spectrum
            if cfg.operator == "rw-kernel"
            else laplacian_spectrum
        )

    _emit(cfg, spectrum_to_csv(spectrum))
    return EXIT_OK


@register_runner
def run_experiment(cfg: ExperimentConfig) -> int:
    """Clack runner for the 'experiment' subcommand."""
    ec = _reject_seed(cfg, "; use --seeds")
    if ec is not None:
        return ec

    params: Dict[str, Any] = {}
    if cfg.p and cfg.name == "rw-equivalence":
        params["p"] = tuple(cfg.p)
    elif cfg.p:
        if len(cfg.p) != 1:
            return _usage_error(
                cfg, f"experiment {cfg.name!r} takes exactly one --p value"
            )
        params["p"] = cfg.p[0]
    if cfg.eps is not None:
        params["eps"] = cfg.eps
    if cfg.m is not None:
        params["m"] = cfg.m

    accepted = experiment_parameters(cfg.name)
    for key in params:
        if key not in accepted:
            return _usage_error(
                cfg, f"experiment {cfg.name!r} does not take --{key}"
            )

    records = run_named(
        cfg.name, sizes=cfg.sizes, seeds=cfg.seeds, params=params
    )
    _emit(cfg, records_to_csv(records))
    return EXIT_OK
