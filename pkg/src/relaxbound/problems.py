"""Difference blocks for the compactified radial Schrodinger equation.

Both potentials share the first-order system y1' = y2, y3' = 0 plus a
second-order equation written at interval midpoints.  With x the
compactified coordinate, xb the interval midpoint, and overbars denoting
point averages, the interior residuals are

    E1 = y1_k - y1_(k-1) - h*y2b
    E2 = y2_k - y2_(k-1) + (2h/(1-xb))*y2b + (h/(1-xb)^4)*B*y1b
    E3 = y3_k - y3_(k-1)

where B collects the potential and centrifugal terms:

    Coulomb:  B = 2*mu*a0^2*(y3b + ((1-xb)/xb)*e^2/a0) - ((1-xb)/xb)^2*l*(l+1)
    Linear:   B = 2*mu*(y3b - (xb/(1-xb))*lambda)       - ((1-xb)/xb)^2*l*(l+1)

Boundary conditions: y1 = 0 at x = 0 (block k=1) and y1 = y2 = 0 at
x = 1 (sentinel block k=M+1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Mesh, Potential, ProblemSpec, RelaxConfig, SolutionGrid
from .relax import DifferenceBlock, RelaxOutcome, relax


@dataclass(frozen=True)
class MidpointState:
    """Averages over one mesh interval, evaluated at its midpoint."""

    xbar: float
    y1: float
    y2: float
    y3: float

    def __post_init__(self):
        if not 0.0 < self.xbar < 1.0:
            raise ValueError("midpoint must lie strictly inside (0, 1)")

    @classmethod
    def at(cls, k: int, mesh: Mesh, grid: SolutionGrid) -> "MidpointState":
        """Midpoint state of the interval joining mesh points k-1 and k (1-based)."""
        p, i = k - 2, k - 1
        y = grid.y
        return cls(xbar=0.5 * (mesh.x[p] + mesh.x[i]),
                   y1=0.5 * (y[0, p] + y[0, i]),
                   y2=0.5 * (y[1, p] + y[1, i]),
                   y3=0.5 * (y[2, p] + y[2, i]))


def _check_k(k: int, mesh: Mesh) -> None:
    if not 1 <= k <= mesh.m + 1:
        raise IndexError(f"block index k={k} outside 1..{mesh.m + 1}")


def _boundary_block(k: int, mesh: Mesh, grid: SolutionGrid) -> DifferenceBlock:
    s = np.zeros((3, 7))
    if k == 1:
        # y1 = 0 at x = 0; only the last row of the block is meaningful.
        s[2, 3] = 1.0
        s[2, 6] = grid.y[0, 0]
    else:
        # y1 = y2 = 0 at x = 1.
        s[0, 3] = 1.0
        s[0, 6] = grid.y[0, -1]
        s[1, 4] = 1.0
        s[1, 6] = grid.y[1, -1]
    return DifferenceBlock(s)


def _interior_block(k: int, mesh: Mesh, grid: SolutionGrid,
                    mid: MidpointState, mu_eff: float,
                    bracket: float) -> DifferenceBlock:
    """Assemble E and its exact derivatives for interval k-1 -> k.

    mu_eff is the mass factor multiplying (y3b + potential): mu*a0^2
    for the Bohr-rescaled Coulomb problem, mu for the linear one.
    """
    p, i = k - 2, k - 1
    h = mesh.h
    y = grid.y
    omx = 1.0 - mid.xbar
    omx4 = omx ** 4

    s = np.zeros((3, 7))
    s[0, 0] = -1.0
    s[0, 1] = -0.5 * h
    s[0, 3] = 1.0
    s[0, 4] = -0.5 * h
    s[0, 6] = y[0, i] - y[0, p] - h * mid.y2

    d_wave = 0.5 * h * bracket / omx4
    d_energy = h * mu_eff * mid.y1 / omx4
    s[1, 0] = d_wave
    s[1, 1] = -1.0 + h / omx
    s[1, 2] = d_energy
    s[1, 3] = d_wave
    s[1, 4] = 1.0 + h / omx
    s[1, 5] = d_energy
    s[1, 6] = (y[1, i] - y[1, p] + 2.0 * h / omx * mid.y2
               + h / omx4 * bracket * mid.y1)

    s[2, 2] = -1.0
    s[2, 5] = 1.0
    s[2, 6] = y[2, i] - y[2, p]
    return DifferenceBlock(s)


def coulomb_block(k: int, mesh: Mesh, grid: SolutionGrid,
                  spec: ProblemSpec) -> DifferenceBlock:
    """Difference block k for the Bohr-rescaled Coulomb equation."""
    _check_k(k, mesh)
    if k == 1 or k == mesh.m + 1:
        return _boundary_block(k, mesh, grid)
    mid = MidpointState.at(k, mesh, grid)
    ratio = (1.0 - mid.xbar) / mid.xbar
    mu_eff = spec.mu * spec.a0 * spec.a0
    bracket = (2.0 * mu_eff * (mid.y3 + ratio * spec.coupling / spec.a0)
               - ratio * ratio * spec.l * (spec.l + 1))
    return _interior_block(k, mesh, grid, mid, mu_eff, bracket)


def linear_block(k: int, mesh: Mesh, grid: SolutionGrid,
                 spec: ProblemSpec) -> DifferenceBlock:
    """Difference block k for the linear confining potential."""
    _check_k(k, mesh)
    if k == 1 or k == mesh.m + 1:
        return _boundary_block(k, mesh, grid)
    mid = MidpointState.at(k, mesh, grid)
    ratio = (1.0 - mid.xbar) / mid.xbar
    bracket = (2.0 * spec.mu * (mid.y3 - mid.xbar / (1.0 - mid.xbar) * spec.coupling)
               - ratio * ratio * spec.l * (spec.l + 1))
    return _interior_block(k, mesh, grid, mid, spec.mu, bracket)


def block_builder(mesh: Mesh, spec: ProblemSpec):
    """Bind mesh and physics into the (k, grid) callback relax expects."""
    fn = coulomb_block if spec.kind is Potential.COULOMB else linear_block

    def build(k: int, grid: SolutionGrid) -> DifferenceBlock:
        return fn(k, mesh, grid, spec)

    return build


def level_guess(spec: ProblemSpec, e_guess: float) -> float:
    """Eigenvalue actually placed on the grid for a given guess.

    Coulomb guesses are quoted at the ground-state scale and divided by
    (n+l)^2 for the target level; linear guesses are used directly.
    """
    if spec.kind is Potential.COULOMB:
        return e_guess / (spec.n + spec.l) ** 2
    return e_guess


def initial_guess(spec: ProblemSpec, mesh: Mesh, e_guess: float) -> SolutionGrid:
    """Half-wave starting profile with the right number of interior nodes.

    Coulomb states use n - l half-waves (n - l >= 1 required), linear
    states use n.  The x = 1 endpoint is forced to zero so the starting
    grid satisfies the right boundary conditions exactly.
    """
    if spec.kind is Potential.COULOMB:
        waves = spec.n - spec.l
        if waves < 1:
            raise ValueError("Coulomb states need n - l >= 1")
    else:
        waves = spec.n
    arg = waves * np.pi * mesh.x
    y = np.empty((3, mesh.m))
    y[0] = np.sin(arg) ** 2
    y[1] = 2.0 * waves * np.pi * np.sin(arg) * np.cos(arg)
    y[2] = level_guess(spec, e_guess)
    y[0, -1] = 0.0
    y[1, -1] = 0.0
    return SolutionGrid(y)


def default_config(spec: ProblemSpec, e_guess: float) -> RelaxConfig:
    """Reference iteration controls: conv per potential, eigenvalue-scaled error."""
    conv = 1e-5 if spec.kind is Potential.COULOMB else 1e-6
    scale = abs(level_guess(spec, e_guess))
    return RelaxConfig(itmax=100, conv=conv, slowc=1.0,
                       scalv=(1.0, 1.0, scale if scale > 0.0 else 1.0))


def solve_bound_state(spec: ProblemSpec, mesh: Mesh, e_guess: float,
                      config: RelaxConfig | None = None) -> RelaxOutcome:
    """Relax from the standard initial guess; convenience wrapper."""
    if config is None:
        config = default_config(spec, e_guess)
    start = initial_guess(spec, mesh, e_guess)
    return relax(block_builder(mesh, spec), mesh, start, config)
