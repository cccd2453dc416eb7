"""Hypergraph limits: contractions, cut norms, spectra and experiments.

Examples:
    # Writes a seeded 3-uniform Erdos-Renyi hypergraph to STDOUT.
    hyperlim gen er-uniform --n 20 --p 0.5 --r 3 --seed 7

    # Writes the triangle hypergraph T(10, 1) to a file and prints its edge
    # count (all 120 triples).
    hyperlim gen triangle --n 10 --p 1.0 --seed 1 --out t10.txt

    # Rank-3 hypergraph with level probabilities p_2=0.3 and p_3=0.4.
    hyperlim gen nonuniform --n 40 --p 0.3 0.4 --seed 3

    # Codegree-section matrix of a hypergraph as CSV.
    hyperlim contract t10.txt --kind codegree

    # p-weighted adjacency matrix of a rank-3 hypergraph.
    hyperlim contract h.txt --kind p-weighted --p 0.5 0.5

    # Checks hom(F_1, H) against the codegree-section identity.
    hyperlim hom triangle.txt t10.txt --via codegree

    # Exact cut norm of a step kernel, or a cut distance bound for two.
    hyperlim cutnorm w.step
    hyperlim cutnorm u.step --other w.step --blowup 2

    # Random-walk Laplacian spectrum of a hypergraph's codegree section.
    hyperlim spectrum t10.txt --operator rw-laplacian --eps 0.05

    # Runs a named experiment and writes its CSV table.
    hyperlim experiment lipschitz-audit --sizes 2 3 --seeds 0 1 2 --out a.csv
"""

# NOTE: The above docstring is used by clack for the command-line --help
#   message. This module is used to define clack configuration classes and the
#   clack parser function.
from __future__ import annotations

import argparse
from pathlib import Path
from typing import Any, List, Literal, Optional, Sequence

import clack
from typist import literal_to_list

from ._constants import (
    DEFAULT_CUT_NORM_CAP,
    DEFAULT_RESTARTS,
    ContractKind,
    ExperimentName,
    GenModel,
    HomVia,
    NormMode,
    OutputFormat,
    SpectrumOperator,
)


ContractCommand = Literal["contract"]
CutnormCommand = Literal["cutnorm"]
ExperimentCommand = Literal["experiment"]
GenCommand = Literal["gen"]
HomCommand = Literal["hom"]
SpectrumCommand = Literal["spectrum"]
Command = Literal[
    ContractCommand,
    CutnormCommand,
    ExperimentCommand,
    GenCommand,
    HomCommand,
    SpectrumCommand,
]  # available CLI sub-commands


class Config(clack.Config):
    """Base configuration class."""

    command: Command

    # --- OPTIONS
    out: Optional[Path] = None
    output_format: OutputFormat = "csv"
    seed: Optional[int] = None

    # --- CONFIG
    cut_norm_cap: int = DEFAULT_CUT_NORM_CAP
    restarts: int = DEFAULT_RESTARTS


class GenConfig(Config):
    """Config for the 'gen' subcommand."""

    command: GenCommand

    # --- ARGS
    model: GenModel

    # --- OPTIONS
    n: int = 20
    p: Optional[List[float]] = None
    r: int = 3


class ContractConfig(Config):
    """Config for the 'contract' subcommand."""

    command: ContractCommand

    # --- ARGS
    input_path: Path

    # --- OPTIONS
    kind: ContractKind = "codegree"
    p: Optional[List[float]] = None


class HomConfig(Config):
    """Config for the 'hom' subcommand."""

    command: HomCommand

    # --- ARGS
    pattern_path: Path
    input_path: Path

    # --- OPTIONS
    exact: bool = True
    r: Optional[int] = None
    via: HomVia = "codegree"


class CutnormConfig(Config):
    """Config for the 'cutnorm' subcommand."""

    command: CutnormCommand

    # --- ARGS
    input_path: Path

    # --- OPTIONS
    blowup: int = 1
    mode: NormMode = "exact"
    other: Optional[Path] = None


class SpectrumConfig(Config):
    """Config for the 'spectrum' subcommand."""

    command: SpectrumCommand

    # --- ARGS
    input_path: Path

    # --- OPTIONS
    eps: Optional[float] = None
    operator: SpectrumOperator = "adjacency"


class ExperimentConfig(Config):
    """Config for the 'experiment' subcommand."""

    command: ExperimentCommand

    # --- ARGS
    name: ExperimentName

    # --- OPTIONS
    eps: Optional[float] = None
    m: Optional[int] = None
    p: Optional[List[float]] = None
    seeds: Optional[List[int]] = None
    sizes: Optional[List[int]] = None


def _add_global_options(
    parser: argparse.ArgumentParser, *, suppress: bool = False
) -> None:
    """Adds --seed, --out and --format.

    Subparsers register them with SUPPRESS defaults so a value given before
    the subcommand is not overwritten.
    """
    extra: dict[str, Any] = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--seed",
        type=int,
        help=(
            "Seed of the random choices made by 'gen' and 'cutnorm'."
            " Defaults to 0."
        ),
        **extra,
    )
    parser.add_argument(
        "--out",
        type=Path,
        help="Write the result to this file instead of STDOUT.",
        **extra,
    )
    choices = literal_to_list(OutputFormat)
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=choices,
        help=f"Output format. Choose from one of {choices}.",
        **extra,
    )


def clack_parser(argv: Sequence[str]) -> dict[str, Any]:
    """Parses the command-line arguments of every subcommand."""
    parser = clack.Parser()
    _add_global_options(parser)

    new_command = clack.new_command_factory(parser)

    ### setup the 'gen' subcommand...
    gen_parser = new_command(
        "gen", help="Generate a seeded random hypergraph."
    )
    _add_global_options(gen_parser, suppress=True)

    choices = literal_to_list(GenModel)
    gen_parser.add_argument(
        "model",
        metavar="MODEL",
        choices=choices,
        help=f"The random model. Choose from one of {choices}.",
    )
    gen_parser.add_argument("--n", type=int, help="Number of vertices.")
    gen_parser.add_argument(
        "--p",
        type=float,
        nargs="+",
        help=(
            "Edge probability. The 'nonuniform' model takes one probability"
            " per level r = 2..R."
        ),
    )
    gen_parser.add_argument(
        "--r", type=int, help="Uniformity of the 'er-uniform' model."
    )

    ### setup the 'contract' subcommand...
    contract_parser = new_command(
        "contract",
        help="Contract a hypergraph's adjacency tensor to a matrix (CSV).",
    )
    _add_global_options(contract_parser, suppress=True)
    contract_parser.add_argument(
        "input_path", metavar="IN", type=Path, help="Hypergraph text file."
    )
    choices = literal_to_list(ContractKind)
    contract_parser.add_argument(
        "--kind",
        choices=choices,
        help=f"The contraction. Choose from one of {choices}.",
    )
    contract_parser.add_argument(
        "--p",
        type=float,
        nargs="+",
        help="Level weights p_2..p_R for the 'p-weighted' contraction.",
    )

    ### setup the 'hom' subcommand...
    hom_parser = new_command(
        "hom",
        help=(
            "Check a homomorphism identity between a graph F and a uniform"
            " hypergraph H."
        ),
    )
    _add_global_options(hom_parser, suppress=True)
    hom_parser.add_argument(
        "pattern_path", metavar="F", type=Path, help="Simple graph file."
    )
    hom_parser.add_argument(
        "input_path", metavar="H", type=Path, help="Hypergraph text file."
    )
    choices = literal_to_list(HomVia)
    hom_parser.add_argument(
        "--via",
        choices=choices,
        help=f"The identity to check. Choose from one of {choices}.",
    )
    hom_parser.add_argument(
        "--r",
        type=int,
        help="Expected r of the identity (inferred from H when omitted).",
    )
    hom_parser.add_argument(
        "--float",
        dest="exact",
        action="store_false",
        help="Compare in floating point instead of exact arithmetic.",
    )

    ### setup the 'cutnorm' subcommand...
    cutnorm_parser = new_command(
        "cutnorm",
        help=(
            "Cut norm of a STEP file, or a cut distance upper bound when"
            " --other is given."
        ),
    )
    _add_global_options(cutnorm_parser, suppress=True)
    cutnorm_parser.add_argument(
        "input_path", metavar="FILE", type=Path, help="STEP file."
    )
    cutnorm_parser.add_argument(
        "--other", type=Path, help="Second STEP file for a distance bound."
    )
    choices = literal_to_list(NormMode)
    cutnorm_parser.add_argument(
        "--mode",
        choices=choices,
        help=f"Norm computation. Choose from one of {choices}.",
    )
    cutnorm_parser.add_argument(
        "--restarts", type=int, help="Restarts of the heuristic."
    )
    cutnorm_parser.add_argument(
        "--blowup",
        type=int,
        help="Refine every part this many times before overlay search.",
    )

    ### setup the 'spectrum' subcommand...
    spectrum_parser = new_command(
        "spectrum",
        help="Spectrum of a step kernel or a hypergraph's codegree section.",
    )
    _add_global_options(spectrum_parser, suppress=True)
    spectrum_parser.add_argument(
        "input_path",
        metavar="IN",
        type=Path,
        help="STEP file or hypergraph text file.",
    )
    choices = literal_to_list(SpectrumOperator)
    spectrum_parser.add_argument(
        "--operator",
        choices=choices,
        help=f"The operator. Choose from one of {choices}.",
    )
    spectrum_parser.add_argument(
        "--eps",
        type=float,
        help="Minimum degree for the random-walk operators.",
    )

    ### setup the 'experiment' subcommand...
    experiment_parser = new_command(
        "experiment", help="Run a named experiment and emit its CSV table."
    )
    _add_global_options(experiment_parser, suppress=True)
    choices = literal_to_list(ExperimentName)
    experiment_parser.add_argument(
        "name",
        metavar="NAME",
        choices=choices,
        help=f"The experiment. Choose from one of {choices}.",
    )
    experiment_parser.add_argument(
        "--sizes", type=int, nargs="+", help="Sizes (n, N or k) to sweep."
    )
    experiment_parser.add_argument(
        "--seeds", type=int, nargs="+", help="Seeds to sweep."
    )
    experiment_parser.add_argument(
        "--p", type=float, nargs="+", help="Model probability (or vector)."
    )
    experiment_parser.add_argument(
        "--eps", type=float, help="Minimum degree for random-walk kernels."
    )
    experiment_parser.add_argument(
        "--m", type=int, help="Number of top eigenvalues compared."
    )

    args = parser.parse_args(argv[1:])
    kwargs = clack.filter_cli_args(args)

    return kwargs
