"""Recovery of rotation curves from their Lie quadratics.

A non-degenerate quadratic determines its cubic up to left translation
through a single quadrature: with the moving frame adapted to
(V'', V''') and the phase angle

    phi(t) = sqrt(c) * integral_{t0}^{t} (c - <C, V''(s)>) / |V'''(s)|^2 ds,

the curve y(t) = plane_rotation(phi(t)) @ frame_from_pair(V''(t), V'''(t))
satisfies x(t) = x0 y(t0)^T y(t).  For nearly constant quadratics both the
phase and the frame have closed-form counterparts built from the
second-order approximant, which yields a quadrature-free approximation to
the cubic itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .algebra import frame_from_pair, plane_rotation, rotation_error
from .approximants import ApproxParams, second_approximant
from .errors import DegenerateB, DegenerateThirdDerivative
from .quadratic import QuadraticTrajectory, RotationTrajectory

THIRD_DERIV_TOL = 1e-10   # |V'''| below this makes the quadrature singular
ACCEL_TOL = 1e-12         # c below this means a reparameterised geodesic


@dataclass(frozen=True)
class ReconstructionInput:
    """A quadratic trajectory plus the initial rotation it should lift to.

    Requires non-degenerate acceleration (c > ACCEL_TOL) and a third
    derivative bounded away from zero on the whole grid; quadratics
    violating the latter are reparameterised geodesics for which the
    quadrature does not apply.
    """

    trajectory: QuadraticTrajectory
    x0: np.ndarray
    t0: float = None  # type: ignore[assignment]

    def __post_init__(self):
        x0 = np.asarray(self.x0, dtype=float)
        if x0.shape != (3, 3) or rotation_error(x0) > 1e-8:
            raise ValueError("x0 is not a rotation matrix")
        object.__setattr__(self, "x0", x0)
        if self.t0 is None:
            object.__setattr__(self, "t0", self.trajectory.t0)
        elif abs(self.t0 - self.trajectory.t0) > 1e-12:
            raise ValueError("t0 must coincide with the trajectory start")
        if self.trajectory.c <= ACCEL_TOL:
            raise ValueError("degenerate acceleration: c is (nearly) zero")
        v3 = self.trajectory.third_derivative_grid()
        min_v3 = float(np.min(np.linalg.norm(v3, axis=1)))
        if min_v3 <= THIRD_DERIV_TOL:
            raise DegenerateThirdDerivative(
                f"|V'''| dips to {min_v3:.3g} on the grid")

    @cached_property
    def _phase_spline(self) -> CubicHermiteSpline:
        """Cumulative phase on the grid by per-interval Simpson, densified
        through a Hermite spline with the exact integrand as derivative."""
        traj = self.trajectory
        grid = traj.grid
        mids = 0.5 * (grid[:-1] + grid[1:])
        g_nodes = self._integrand(grid)
        g_mids = self._integrand(mids)
        h = np.diff(grid)
        increments = h / 6.0 * (g_nodes[:-1] + 4.0 * g_mids + g_nodes[1:])
        phase = np.concatenate([[0.0], np.cumsum(increments)])
        return CubicHermiteSpline(grid, math.sqrt(traj.c) * phase,
                                  math.sqrt(traj.c) * g_nodes)

    def _integrand(self, times) -> np.ndarray:
        traj = self.trajectory
        v2 = np.atleast_2d(traj.eval(times, 2))
        v3 = np.atleast_2d(traj.eval(times, 3))
        norms = np.einsum("ij,ij->i", v3, v3)
        if float(np.min(norms)) <= THIRD_DERIV_TOL ** 2:
            raise DegenerateThirdDerivative("|V'''| dips below tolerance")
        return (traj.c - v2 @ traj.C) / norms


def rotation_phase(recon: ReconstructionInput, t) -> float | np.ndarray:
    """The quadrature phase phi(t); phi(t0) = 0."""
    out = recon._phase_spline(t)
    return float(out) if np.ndim(t) == 0 else out


def reconstruct_cubic(recon: ReconstructionInput) -> RotationTrajectory:
    """Lift the quadratic to its rotation curve on the trajectory grid.

    x(t) = x0 y(t0)^T y(t) with y the phased moving frame; the initial
    sample is x0 itself.
    """
    traj = recon.trajectory
    grid = traj.grid
    v2 = traj.v2
    v3 = traj.third_derivative_grid()
    phases = rotation_phase(recon, grid)
    rots = np.empty((grid.size, 3, 3))
    y0 = plane_rotation(phases[0]) @ frame_from_pair(v2[0], v3[0])
    anchor = recon.x0 @ y0.T
    rots[0] = recon.x0
    for k in range(1, grid.size):
        y = plane_rotation(phases[k]) @ frame_from_pair(v2[k], v3[k])
        rots[k] = anchor @ y
    return RotationTrajectory(grid=grid, rotations=rots)


def rotation_phase_approx(p: ApproxParams, t: float) -> float:
    """Closed-form first-order phase for a nearly constant quadratic:

    phi_hat(t) = delta sqrt(rho^2 + 1) ((t - t0) beta
        + (a11 (cos(gamma - u) - cos gamma)
           + a12 (sin(gamma - u) - sin gamma)) / d^2),
    with u = d (t - t0); requires beta > 0.
    """
    if p.beta <= 0.0 or p.b_degenerate:
        raise DegenerateB("closed-form phase requires beta > 0")
    d = p.frame.d
    tau = t - p.t0
    u = d * tau
    osc = (p.a11 * (math.cos(p.gamma - u) - math.cos(p.gamma))
           + p.a12 * (math.sin(p.gamma - u) - math.sin(p.gamma))) / d ** 2
    return p.delta * math.sqrt(p.rho ** 2 + 1.0) * (tau * p.beta + osc)


def approx_cubic(p: ApproxParams, x0, t: float) -> np.ndarray:
    """Quadrature-free first-order approximation to the rotation curve.

    Assembles the phased moving frame from the second and third
    derivatives of the second-order approximant and anchors it at x0; the
    value at t0 is x0 exactly.
    """
    if p.beta <= 0.0 or p.b_degenerate:
        raise DegenerateB("closed-form cubic requires beta > 0")
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (3, 3) or rotation_error(x0) > 1e-8:
        raise ValueError("x0 is not a rotation matrix")
    if t == p.t0:
        return x0.copy()
    y0 = plane_rotation(rotation_phase_approx(p, p.t0)) @ frame_from_pair(
        second_approximant(p, p.t0, 2), second_approximant(p, p.t0, 3))
    y = plane_rotation(rotation_phase_approx(p, t)) @ frame_from_pair(
        second_approximant(p, t, 2), second_approximant(p, t, 3))
    return x0 @ y0.T @ y


def so3_distance(r1, r2) -> tuple[float, float]:
    """(Frobenius distance, geodesic angle) between two rotations."""
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    fro = float(np.linalg.norm(r1 - r2))
    cos_angle = 0.5 * (float(np.trace(r1.T @ r2)) - 1.0)
    angle = math.acos(min(1.0, max(-1.0, cos_angle)))
    return fro, angle
