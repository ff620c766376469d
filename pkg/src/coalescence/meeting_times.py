"""
Pairwise meeting times of two coalescing random walkers.

For i != j the meeting times satisfy

    tau_ij = 1 + (1/(2 k_i)) sum_{l in N(i)} tau_lj + (1/(2 k_j)) sum_{l in N(j)} tau_il

with tau_ii = 0. In matrix form, with W = D^-1 A and tau symmetric, the
off-diagonal part of tau - (W tau + (W tau)^T) / 2 equals one. Three solvers
are offered; convergence is always judged on the true max-abs residual of
that equation.
"""
import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Union

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from config import Config
from errors import DisconnectedGraphError, GraphError, ProblemSizeError, SolverConvergenceError
from graph_core import Graph, component_sizes

logger = logging.getLogger(__name__)

METHODS = ('auto', 'direct', 'gauss-seidel', 'cg')

_DUMP_HEADER = struct.Struct('<qdd')

# Dense W beats CSR products above this edge density
_DENSE_WALK_DENSITY = 0.1

# CG recomputes the true residual this often
_CG_REPLACE_EVERY = 25


@dataclass(frozen=True, eq=False)
class MeetingTimes:
    """
    Symmetric table of meeting times.

    Attributes:
        n: Node count
        tau: n x n read-only array, zero diagonal
        solver_residual: Max-abs residual of the pair equations at termination
        tolerance: Residual target the solve was run with
        method: Solver that produced the table
        iterations: Sweeps or CG iterations used (1 for the direct solve)
        residual_trace: Residuals recorded while iterating
    """
    n: int
    tau: np.ndarray
    solver_residual: float
    tolerance: float
    method: str = 'direct'
    iterations: int = 1
    residual_trace: List[float] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.tau.flags.writeable = False

    def upper_triangle(self) -> np.ndarray:
        """tau_ij for i < j in row-major order"""
        return self.tau[np.triu_indices(self.n, k=1)]


def _walk_operator(g: Graph):
    density = 2.0 * g.edge_count / max(g.n * (g.n - 1), 1)
    return g.transition_matrix(dense=density > _DENSE_WALK_DENSITY)


def _apply_pair_operator(walk, x: np.ndarray) -> np.ndarray:
    """offdiag(X - (W X + (W X)^T) / 2) for symmetric X"""
    wx = walk @ x
    y = x - 0.5 * (wx + wx.T)
    np.fill_diagonal(y, 0.0)
    return y


def pair_residual(g: Graph, tau: np.ndarray) -> float:
    """Max-abs residual of the meeting-time equations for a candidate table"""
    walk = _walk_operator(g)
    rhs = np.ones((g.n, g.n))
    np.fill_diagonal(rhs, 0.0)
    return float(np.abs(rhs - _apply_pair_operator(walk, tau)).max())


def _pair_index(n: int) -> np.ndarray:
    """Symmetric map (i, j) -> unordered pair index, -1 on the diagonal"""
    index = -np.ones((n, n), dtype=np.int64)
    rows, cols = np.triu_indices(n, k=1)
    index[rows, cols] = np.arange(len(rows))
    index[cols, rows] = index[rows, cols]
    return index


def _pair_system(g: Graph) -> sparse.csc_matrix:
    """
    Sparse matrix of the N(N-1)/2 pair equations.

    Equation {e, o} receives -1/(2 k_e) on unknown {l, o} for every neighbor l
    of e with l != o, once for each endpoint e.
    """
    n = g.n
    index = _pair_index(n)
    adjacency = g.adjacency_matrix().tocoo()
    ends, hops = adjacency.row, adjacency.col
    weights = -0.5 / g.degrees[ends].astype(np.float64)

    others = np.arange(n)
    rows = index[ends[:, None], others[None, :]]
    cols = index[hops[:, None], others[None, :]]
    keep = (rows >= 0) & (cols >= 0)
    values = np.broadcast_to(weights[:, None], rows.shape)[keep]

    size = n * (n - 1) // 2
    system = sparse.coo_matrix((values, (rows[keep], cols[keep])), shape=(size, size))
    return (system + sparse.identity(size, format='coo')).tocsc()


def _solve_direct(g: Graph) -> np.ndarray:
    system = _pair_system(g)
    rhs = np.ones(system.shape[0])
    lu = splu(system)
    x = lu.solve(rhs)
    x += lu.solve(rhs - system @ x)

    tau = np.zeros((g.n, g.n))
    rows, cols = np.triu_indices(g.n, k=1)
    tau[rows, cols] = x
    tau[cols, rows] = x
    return tau


def _solve_cg(g: Graph, tolerance: float, max_iterations: int, trace: List[float]):
    """
    Conjugate gradients on the pair operator in matrix form.

    The operator is symmetric positive definite under the inner product
    <X, Y> = sum_ij k_i k_j X_ij Y_ij, which is used throughout.
    """
    walk = _walk_operator(g)
    k = g.degrees.astype(np.float64)
    weight = np.outer(k, k)

    rhs = np.ones((g.n, g.n))
    np.fill_diagonal(rhs, 0.0)
    x = np.zeros_like(rhs)
    r = rhs.copy()
    p = r.copy()
    rr = float(np.sum(weight * r * r))

    for iteration in range(1, max_iterations + 1):
        ap = _apply_pair_operator(walk, p)
        alpha = rr / float(np.sum(weight * p * ap))
        x += alpha * p
        r -= alpha * ap

        if iteration % _CG_REPLACE_EVERY == 0 or np.abs(r).max() <= tolerance:
            r = rhs - _apply_pair_operator(walk, x)
            residual = float(np.abs(r).max())
            trace.append(residual)
            if residual <= tolerance:
                return x, residual, iteration

        rr_next = float(np.sum(weight * r * r))
        if rr_next == 0.0:
            return x, 0.0, iteration
        p = r + (rr_next / rr) * p
        rr = rr_next

    residual = float(np.abs(rhs - _apply_pair_operator(walk, x)).max())
    trace.append(residual)
    return x, residual, max_iterations


def _solve_gauss_seidel(
    g: Graph, tolerance: float, max_sweeps: int, omega: float, trace: List[float]
):
    """
    Row-block Gauss-Seidel sweeps.

    Row i of the table is refreshed from the latest values of every other row
    and mirrored into column i before row i + 1 is visited.
    """
    walk = g.transition_matrix()
    n = g.n
    mean_field_start = n * (g.degrees.mean() ** 2) / np.mean(g.degrees.astype(np.float64) ** 2)
    tau = np.full((n, n), max(mean_field_start - 1.0, 1.0))
    np.fill_diagonal(tau, 0.0)

    rows = [walk.getrow(i) for i in range(n)]
    for sweep in range(1, max_sweeps + 1):
        for i in range(n):
            row = tau[i]
            from_neighbors_of_i = (rows[i] @ tau).ravel()
            from_neighbors_of_j = walk @ row
            updated = 1.0 + 0.5 * (from_neighbors_of_i + from_neighbors_of_j)
            updated[i] = 0.0
            if omega != 1.0:
                updated = (1.0 - omega) * row + omega * updated
            tau[i, :] = updated
            tau[:, i] = updated

        residual = pair_residual(g, tau)
        trace.append(residual)
        if residual <= tolerance:
            return tau, residual, sweep

    return tau, trace[-1], max_sweeps


def meeting_times(
    g: Graph,
    tolerance: float = Config.SOLVER_TOLERANCE,
    max_sweeps: int = Config.SOLVER_MAX_SWEEPS,
    method: str = Config.SOLVER_METHOD,
    omega: float = Config.GAUSS_SEIDEL_OMEGA,
) -> MeetingTimes:
    """
    Solve the meeting-time equations on a connected graph.

    Args:
        g: Connected graph with n >= 2
        tolerance: Max-abs residual target
        max_sweeps: Iteration cap for the iterative methods
        method: 'auto', 'direct', 'gauss-seidel' or 'cg'; 'auto' factorizes
            the pair system for small graphs and runs CG otherwise
        omega: Relaxation factor for Gauss-Seidel (< 1 damps)

    Returns:
        MeetingTimes whose residual is at most tolerance

    Raises:
        DisconnectedGraphError: graph has more than one component
        SolverConvergenceError: residual target missed; carries the residual trace
    """
    if method not in METHODS:
        raise ValueError(f"unknown solver method '{method}', expected one of {METHODS}")
    if g.n < 2:
        raise GraphError(f"meeting times need at least 2 nodes, got {g.n}")
    if g.n > Config.MEMORY_CAP_N:
        raise ProblemSizeError(
            f"n={g.n} exceeds the meeting-time memory cap of {Config.MEMORY_CAP_N} nodes"
        )
    sizes = component_sizes(g)
    if len(sizes) > 1:
        raise DisconnectedGraphError(sizes, context="meeting times")

    if method == 'auto':
        method = 'direct' if g.n <= Config.DIRECT_SOLVER_MAX_N else 'cg'

    trace: List[float] = []
    if method == 'direct':
        tau = _solve_direct(g)
        residual = pair_residual(g, tau)
        trace.append(residual)
        iterations = 1
    elif method == 'cg':
        tau, residual, iterations = _solve_cg(g, tolerance, max_sweeps, trace)
    else:
        tau, residual, iterations = _solve_gauss_seidel(g, tolerance, max_sweeps, omega, trace)

    tau = 0.5 * (tau + tau.T)
    np.fill_diagonal(tau, 0.0)

    if residual > tolerance:
        logger.error(
            f"Meeting-time solve ({method}) stopped at residual {residual:.3e} "
            f"after {iterations} iterations (target {tolerance:.1e})"
        )
        raise SolverConvergenceError(
            f"{method} solver did not reach residual {tolerance:.1e} on n={g.n} "
            f"(best {min(trace):.3e} after {iterations} iterations)",
            residual_trace=trace,
        )

    logger.debug(f"Meeting times n={g.n}: {method}, {iterations} iterations, residual {residual:.2e}")
    return MeetingTimes(
        n=g.n,
        tau=tau,
        solver_residual=residual,
        tolerance=tolerance,
        method=method,
        iterations=iterations,
        residual_trace=trace,
    )


def save_meeting_times(mt: MeetingTimes, path: Union[str, Path]) -> Path:
    """
    Write the binary table dump.

    Layout: int64 n, float64 tolerance, float64 residual, then tau_ij for
    i < j in row-major order, all little-endian.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'wb') as fh:
            fh.write(_DUMP_HEADER.pack(mt.n, mt.tolerance, mt.solver_residual))
            fh.write(mt.upper_triangle().astype('<f8').tobytes())
        logger.info(f"Wrote meeting-time table for n={mt.n} to {path}")
        return path
    except Exception as e:
        logger.error(f"Failed to write meeting-time table {path}: {e}")
        raise


def load_meeting_times(path: Union[str, Path]) -> MeetingTimes:
    """Read a table written by save_meeting_times"""
    path = Path(path)
    try:
        blob = path.read_bytes()
        n, tolerance, residual = _DUMP_HEADER.unpack_from(blob)
        expected = _DUMP_HEADER.size + 8 * (n * (n - 1) // 2)
        if len(blob) != expected:
            raise ValueError(f"expected {expected} bytes for n={n}, found {len(blob)}")

        upper = np.frombuffer(blob, dtype='<f8', offset=_DUMP_HEADER.size)
        tau = np.zeros((n, n))
        rows, cols = np.triu_indices(n, k=1)
        tau[rows, cols] = upper
        tau[cols, rows] = upper
        return MeetingTimes(n=n, tau=tau, solver_residual=residual, tolerance=tolerance, method='loaded')
    except Exception as e:
        logger.error(f"Failed to read meeting-time table {path}: {e}")
        raise
