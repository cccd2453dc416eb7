"""Text formats: hypergraphs, simple graphs, STEP files and CSV tables."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Iterable, Union

from eris import ErisError, Err, Ok, Result
import numpy as np
from typist import PathLike

from ._constants import MATRIX_DIGITS, REPORT_DIGITS
from ._errors import InputError
from ._hom import SimpleGraph
from ._hypergraph import Hypergraph, WeightedGraph
from ._spectra import Spectrum
from ._step import Partition, StepKernel, StepTensor

StepObject = Union[StepKernel, StepTensor]


def format_number(x: float, digits: int = REPORT_DIGITS) -> str:
    """Decimal rendering with `digits` significant digits."""
    return f"{float(x):.{digits}g}"


def _join(values: Iterable[Any], sep: str, digits: int) -> str:
    return sep.join(format_number(x, digits) for x in values)


def read_text(path: PathLike) -> Result[str, ErisError]:
    """Reads a whole text file, or an error naming the path."""
    path = Path(path)
    try:
        return Ok(path.read_text())
    except OSError as e:
        return Err(f"Unable to read {str(path)!r}: {e}")


def read_hypergraph(path: PathLike) -> Result[Hypergraph, ErisError]:
    """Reads a file in the hypergraph text format."""
    text_r = read_text(path)
    if isinstance(text_r, Err):
        return text_r

    H_r = Hypergraph.from_text(text_r.ok())
    if isinstance(H_r, Err):
        err: Err[Any, ErisError] = Err(
            f"Unable to parse the hypergraph file {str(path)!r}."
        )
        return err.chain(H_r)
    return H_r


def read_graph(path: PathLike) -> Result[SimpleGraph, ErisError]:
    """Reads a file in the simple graph text format."""
    text_r = read_text(path)
    if isinstance(text_r, Err):
        return text_r

    F_r = SimpleGraph.from_text(text_r.ok())
    if isinstance(F_r, Err):
        err: Err[Any, ErisError] = Err(
            f"Unable to parse the graph file {str(path)!r}."
        )
        return err.chain(F_r)
    return F_r


def matrix_to_csv(A: Union[WeightedGraph, np.ndarray]) -> str:
    """One row per line, 17 significant digits, comma-separated, no header."""
    matrix = A.weights if isinstance(A, WeightedGraph) else np.asarray(A)
    return "".join(_join(row, ",", MATRIX_DIGITS) + "\n" for row in matrix)


def spectrum_to_csv(S: Spectrum) -> str:
    """One eigenvalue per line, descending, 17 significant digits."""
    return "".join(
        format_number(x, MATRIX_DIGITS) + "\n" for x in S.eigenvalues
    )


def step_to_text(W: StepObject) -> str:
    """Renders `STEP <order> <k>`, the part weights, then row-major values."""
    order = 2 if isinstance(W, StepKernel) else W.order
    lines = [
        f"STEP {order} {W.k}",
        _join(W.weights, " ", MATRIX_DIGITS),
    ]
    flat = W.values.reshape(W.k, -1)
    lines.extend(_join(row, " ", MATRIX_DIGITS) for row in flat)
    return "\n".join(lines) + "\n"


def step_from_text(text: str) -> Result[StepObject, ErisError]:
    """Parses a STEP file.

    Order-2 data becomes a StepKernel (flagged symmetric when its values
    are); higher orders become a StepTensor.
    """
    tokens = text.split()
    if len(tokens) < 3 or tokens[0] != "STEP":
        return Err("STEP text must start with a 'STEP <order> <k>' header.")

    try:
        order, k = int(tokens[1]), int(tokens[2])
    except ValueError:
        return Err(f"Bad STEP header: {' '.join(tokens[:3])!r}")
    if order < 2 or k < 1:
        return Err(f"STEP header needs order >= 2 and k >= 1: {order}, {k}")

    expected = k + k**order
    body = tokens[3:]
    if len(body) != expected:
        return Err(
            f"STEP body has {len(body)} numbers; order={order}, k={k} needs"
            f" {expected}."
        )

    try:
        numbers = np.array([float(tok) for tok in body])
    except ValueError as e:
        return Err(f"STEP body contains a non-numeric token: {e}")

    try:
        partition = Partition(weights=numbers[:k])
        values = numbers[k:].reshape((k,) * order)
        if order == 2:
            step: StepObject = StepKernel(
                partition=partition,
                values=values,
                symmetric=bool(np.array_equal(values, values.T)),
            )
        else:
            step = StepTensor(partition=partition, order=order, values=values)
    except InputError as e:
        return Err(f"Invalid STEP data: {e}")
    return Ok(step)


def read_step(path: PathLike) -> Result[StepObject, ErisError]:
    """Reads and parses a STEP file."""
    text_r = read_text(path)
    if isinstance(text_r, Err):
        return text_r

    step_r = step_from_text(text_r.ok())
    if isinstance(step_r, Err):
        err: Err[Any, ErisError] = Err(
            f"Unable to parse the STEP file {str(path)!r}."
        )
        return err.chain(step_r)
    return step_r


def is_step_text(text: str) -> bool:
    """True iff the first non-comment token is the STEP header keyword."""
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.split()[0] == "STEP"
    return False

