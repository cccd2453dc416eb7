"""Tests for the text and CSV formats."""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from eris import Err
import numpy as np
from numpy.testing import assert_array_equal
from pytest import mark, param

from hyperlim import (
    Partition,
    Spectrum,
    StepKernel,
    StepTensor,
    WeightedGraph,
    matrix_to_csv,
    read_graph,
    read_hypergraph,
    read_step,
    spectrum_to_csv,
    step_from_text,
    step_to_text,
)
from hyperlim._io import format_number, is_step_text


params = mark.parametrize

WriteFile = Callable[[str, str], Path]


def test_format_number() -> None:
    """Significant-digit rendering."""
    assert format_number(0.0) == "0"
    assert format_number(1 / 3) == "0.333333333333"
    assert format_number(1 / 3, 17) == "0.33333333333333331"
    assert format_number(12) == "12"


def test_matrix_to_csv() -> None:
    """Rows of comma-separated values without a header."""
    G = WeightedGraph.from_matrix(np.array([[0.0, 0.5], [0.5, 0.0]]))
    assert matrix_to_csv(G) == "0,0.5\n0.5,0\n"
    assert matrix_to_csv(np.array([[1 / 3]])) == "0.33333333333333331\n"


def test_spectrum_to_csv() -> None:
    """One eigenvalue per line, descending."""
    S = Spectrum.from_values([-1.0, 2.0, -1.0])
    assert spectrum_to_csv(S) == "2\n-1\n-1\n"


def test_step_to_text() -> None:
    """Header, part weights, then row-major values."""
    W = StepKernel(
        partition=Partition.equal(2),
        values=np.array([[0.5, 0.25], [0.25, 1.0]]),
    )
    assert step_to_text(W) == "STEP 2 2\n0.5 0.5\n0.5 0.25\n0.25 1\n"


def test_step_from_text_kernel() -> None:
    """Order-2 data becomes a kernel flagged by its own symmetry."""
    W = step_from_text("STEP 2 2\n0.25 0.75\n0 1\n0 0\n").ok()
    assert isinstance(W, StepKernel)
    assert not W.symmetric
    assert_array_equal(W.weights, [0.25, 0.75])
    assert_array_equal(W.values, [[0.0, 1.0], [0.0, 0.0]])

    W = step_from_text("STEP 2 1\n1\n0.5\n").ok()
    assert isinstance(W, StepKernel) and W.symmetric


def test_step_from_text_tensor() -> None:
    """Higher orders become step tensors."""
    T = step_from_text("STEP 3 1\n1\n0.125\n").ok()
    assert isinstance(T, StepTensor)
    assert T.order == 3
    assert T.values[0, 0, 0] == 0.125


def test_step_text_preserves_values() -> None:
    """17 significant digits reproduce every double."""
    W = StepKernel(
        partition=Partition(weights=np.array([0.1, 0.2, 0.7])),
        values=np.array(
            [[1 / 3, 0.1, 2 / 7], [0.1, 0.0, 1e-9], [2 / 7, 1e-9, 1.0]]
        ),
    )
    parsed = step_from_text(step_to_text(W)).ok()
    assert_array_equal(parsed.weights, W.weights)
    assert_array_equal(parsed.values, W.values)


@params(
    "text",
    [
        param("", id="empty"),
        param("STEP\n", id="short-header"),
        param("STEP two 2\n", id="bad-order"),
        param("STEP 1 2\n0.5 0.5\n0 0\n", id="order-one"),
        param("STEP 2 2\n0.5 0.5\n0 0\n0\n", id="short-body"),
        param("STEP 2 1\n1\nx\n", id="non-numeric"),
        param("STEP 2 2\n0.5 0.6\n0 0\n0 0\n", id="weights-not-summing"),
        param("STEP 2 2\n1 0\n0 0\n0 0\n", id="zero-weight"),
        param("STEP 3 2\n0.5 0.5\n0 1\n0 0\n0 0\n0 0\n", id="asym-tensor"),
    ],
)
def test_step_from_text_errors(text: str) -> None:
    """Malformed STEP text is reported as an Err result."""
    assert isinstance(step_from_text(text), Err)


def test_is_step_text() -> None:
    """Sniffing skips blank lines and comments."""
    assert is_step_text("# kernel\n\nSTEP 2 1\n1\n0\n")
    assert not is_step_text("N 3\n0 1 2\n")
    assert not is_step_text("")


def test_read_files(write_file: WriteFile) -> None:
    """The readers parse files on disk."""
    H = read_hypergraph(write_file("h.txt", "N 3\n0 1 2\n")).ok()
    assert H.edges == ((0, 1, 2),)

    F = read_graph(write_file("f.txt", "N 2\n0 1\n")).ok()
    assert F.edges == ((0, 1),)

    W = read_step(write_file("w.step", "STEP 2 1\n1\n0.5\n")).ok()
    assert isinstance(W, StepKernel)


def test_read_errors(tmp_path: Path, write_file: WriteFile) -> None:
    """Missing and malformed files give Err results."""
    missing = tmp_path / "missing.txt"
    assert isinstance(read_hypergraph(missing), Err)
    assert isinstance(read_graph(missing), Err)
    assert isinstance(read_step(missing), Err)

    assert isinstance(read_hypergraph(write_file("h.txt", "N 3\n0 3\n")), Err)
    assert isinstance(read_graph(write_file("f.txt", "N 2\n0 0\n")), Err)
    assert isinstance(read_step(write_file("w.step", "STEP 2 1\n")), Err)
