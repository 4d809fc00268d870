"""Newton relaxation for two-point boundary value problems.

Finite-difference equations on an M-point mesh are linearised into one
3x7 block per coupling: columns 0-2 differentiate with respect to the
unknowns at point k-1, columns 3-5 with respect to point k, and column
6 carries the residual E.  Block k = 1 holds the left boundary
condition (its meaningful rows are the last N_LEFT), blocks k = 2..M
couple adjacent mesh points, and the sentinel block k = M+1 holds the
right boundary conditions (rows 0..N_RIGHT-1, derivatives in columns
3-5).

The linear system S*delta = -E is block tridiagonal; it is solved by
the usual forward pivot/eliminate/reduce sweep followed by
back-substitution, never materialising the dense matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .grid import Mesh, RelaxConfig, SolutionGrid

N_VARS = 3
N_LEFT = 1                      # boundary conditions pinned at x = 0
N_RIGHT = N_VARS - N_LEFT
_RHS = 2 * N_VARS               # residual column index


class SingularBlockError(ArithmeticError):
    """Raised when elimination hits a zero pivot in block k (1-based)."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"singular block at k={k}")


@dataclass(frozen=True)
class DifferenceBlock:
    """One linearised block: 3x7 matrix [dE/dy_(k-1) | dE/dy_k | E]."""

    s: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        if s.shape != (N_VARS, 2 * N_VARS + 1):
            raise ValueError("block must be 3 x 7")
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class RelaxOutcome:
    grid: SolutionGrid
    iterations: int
    final_err: float
    converged: bool


def _as_rows(block, k: int) -> list[list[float]]:
    """Block contents as mutable rows with the residual sign flipped to RHS."""
    s = getattr(block, "s", block)
    s = np.asarray(s, dtype=float)
    if s.shape != (N_VARS, 2 * N_VARS + 1):
        raise ValueError(f"block {k} must be 3 x 7")
    rows = s.tolist()
    for row in rows:
        row[_RHS] = -row[_RHS]
    return rows


def _absorb(rows, row_ids, kill_col, coup_cols, rel) -> None:
    """Substitute a solved relation for the variable living in kill_col."""
    c0, c1 = coup_cols
    for i in row_ids:
        row = rows[i]
        f = row[kill_col]
        if f != 0.0:
            row[c0] -= f * rel[0]
            row[c1] -= f * rel[1]
            row[_RHS] -= f * rel[2]
            row[kill_col] = 0.0


def _gauss_jordan(rows, row_ids, sub_cols, trail_cols, k) -> dict[int, int]:
    """Diagonalise the square sub-block, returning column -> pivot row.

    Pivots are chosen scaled-partial style: each unassigned row offers
    its largest |entry| over sub_cols, weighted by the row's initial
    scale; ties keep the lowest row and column index.  A zero scale or
    zero pivot means the block cannot determine its variables.
    """
    active = list(sub_cols) + list(trail_cols) + [_RHS]
    scale = {}
    for i in row_ids:
        big = max(abs(rows[i][c]) for c in sub_cols)
        if not big > 0.0:
            raise SingularBlockError(k)
        scale[i] = 1.0 / big

    assign: dict[int, int] = {}
    free = list(row_ids)
    for _ in sub_cols:
        best = 0.0
        prow = pcol = -1
        for i in free:
            big = 0.0
            jp = -1
            for c in sub_cols:
                if c in assign:
                    continue
                v = abs(rows[i][c])
                if v > big:
                    big = v
                    jp = c
            if big * scale[i] > best:
                best = big * scale[i]
                prow, pcol = i, jp
        if prow < 0 or rows[prow][pcol] == 0.0:
            raise SingularBlockError(k)
        piv = rows[prow]
        inv = 1.0 / piv[pcol]
        for c in active:
            piv[c] *= inv
        piv[pcol] = 1.0
        for i in row_ids:
            if i == prow:
                continue
            row = rows[i]
            f = row[pcol]
            if f != 0.0:
                for c in active:
                    row[c] -= f * piv[c]
                row[pcol] = 0.0
        assign[pcol] = prow
        free.remove(prow)
    return assign


def solve_block_system(blocks: Sequence) -> np.ndarray:
    """Solve S*delta = -E for the corrections, block by block.

    blocks must hold M+1 entries ordered left boundary, M-1 interior
    couplings, right boundary.  Returns the 3 x M correction array.
    Raises SingularBlockError (with the 1-based block index) when a
    stage cannot determine its variables.
    """
    m = len(blocks) - 1
    if m < 2:
        raise ValueError("need a boundary block at each end and at least one interior block")

    # rels[idx] holds stage idx's solved relations; each entry is
    # (c1, c2, r) meaning delta = r - c1*d1 - c2*d2 with (d1, d2) the
    # trailing variables of the stage's rightmost point.  The relation
    # for variable 0 of point idx is always last.
    rels: list[list[tuple[float, float, float]]] = [[] for _ in range(m)]

    rows = _as_rows(blocks[0], 1)
    assign = _gauss_jordan(rows, range(N_VARS - N_LEFT, N_VARS),
                           sub_cols=(N_VARS,), trail_cols=(4, 5), k=1)
    row = rows[assign[N_VARS]]
    rels[0].append((row[4], row[5], row[_RHS]))

    for idx in range(1, m):
        rows = _as_rows(blocks[idx], idx + 1)
        _absorb(rows, range(N_VARS), kill_col=0, coup_cols=(1, 2),
                rel=rels[idx - 1][-1])
        assign = _gauss_jordan(rows, range(N_VARS), sub_cols=(1, 2, 3),
                               trail_cols=(4, 5), k=idx + 1)
        for c in (1, 2, 3):
            row = rows[assign[c]]
            rels[idx].append((row[4], row[5], row[_RHS]))

    rows = _as_rows(blocks[m], m + 1)
    _absorb(rows, range(N_RIGHT), kill_col=N_VARS, coup_cols=(4, 5),
            rel=rels[m - 1][-1])
    assign = _gauss_jordan(rows, range(N_RIGHT), sub_cols=(4, 5),
                           trail_cols=(), k=m + 1)

    dy = np.empty((N_VARS, m))
    dy[1, m - 1] = rows[assign[4]][_RHS]
    dy[2, m - 1] = rows[assign[5]][_RHS]
    for idx in range(m - 1, 0, -1):
        d1 = dy[1, idx]
        d2 = dy[2, idx]
        r0, r1, r2 = rels[idx]
        dy[1, idx - 1] = r0[2] - r0[0] * d1 - r0[1] * d2
        dy[2, idx - 1] = r1[2] - r1[0] * d1 - r1[1] * d2
        dy[0, idx] = r2[2] - r2[0] * d1 - r2[1] * d2
    rel = rels[0][0]
    dy[0, 0] = rel[2] - rel[0] * dy[1, 0] - rel[1] * dy[2, 0]
    return dy


def _exactly_solved(blocks) -> bool:
    """True when every meaningful residual entry is exactly zero.

    Such a grid already solves the discrete system, so the Newton
    correction is zero by definition and no elimination is needed; the
    Jacobian may legitimately be singular there (on the all-zero trivial
    solution the energy column vanishes entirely).
    """
    def rhs(block):
        return np.asarray(getattr(block, "s", block), dtype=float)[:, _RHS]

    if np.any(rhs(blocks[0])[N_VARS - N_LEFT:] != 0.0):
        return False
    for block in blocks[1:-1]:
        if np.any(rhs(block) != 0.0):
            return False
    return not np.any(rhs(blocks[-1])[:N_RIGHT] != 0.0)


def relax(problem: Callable[[int, SolutionGrid], DifferenceBlock],
          mesh: Mesh, initial: SolutionGrid,
          config: RelaxConfig) -> RelaxOutcome:
    """Iterate damped Newton steps until the correction norm drops below conv.

    problem(k, grid) must return the difference block for k = 1..M+1;
    the engine requests blocks in that order exactly once per sweep.
    Each sweep solves for the raw corrections, measures
    err = mean(|delta|/scalv), damps by fac = slowc/max(slowc, err), and
    applies y += fac*delta before testing err < conv.  A grid whose
    residuals are all exactly zero converges immediately with zero
    correction.  Non-convergence (itmax exhausted, or a step that would
    leave the finite domain) is reported through the outcome, not raised.
    """
    if initial.m != mesh.m:
        raise ValueError("initial grid does not match the mesh")
    y = np.array(initial.y, dtype=float)
    nvar = N_VARS * mesh.m
    err = math.inf
    for it in range(1, config.itmax + 1):
        grid = SolutionGrid(y)
        blocks = [problem(k, grid) for k in range(1, mesh.m + 2)]
        if _exactly_solved(blocks):
            return RelaxOutcome(grid, it, 0.0, True)
        dy = solve_block_system(blocks)
        err = float(sum(np.abs(dy[j]).sum() / config.scalv[j]
                        for j in range(N_VARS))) / nvar
        if not math.isfinite(err):
            return RelaxOutcome(grid, it, math.inf, False)
        fac = config.slowc / max(config.slowc, err)
        stepped = y + fac * dy
        if not np.isfinite(stepped).all():
            return RelaxOutcome(grid, it, err, False)
        y = stepped
        if err < config.conv:
            return RelaxOutcome(SolutionGrid(y), it, err, True)
    return RelaxOutcome(SolutionGrid(y), config.itmax, err, False)
