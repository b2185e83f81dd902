"""Exact 3D linear algebra for so(3) and SO(3).

Vectors in so(3) are identified with Euclidean 3-vectors through the
adjoint map, so the Lie bracket is the cross product and the Euclidean
inner product is ad-invariant.  Rotations are plain 3x3 arrays acting on
column vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateFrame, NotNearRotation, ZeroDirection

GRAM_RTOL = 1e-12          # relative Gram-determinant floor for frame_from_pair
FRAME_TOL = 1e-12          # orthonormality tolerance for Frame validation
ORTHO_GUARD = 0.1          # Frobenius defect beyond which renormalize refuses


def as_vector(v) -> np.ndarray:
    """Coerce to a finite float 3-vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite components")
    return arr


def bracket(u, v) -> np.ndarray:
    """Lie bracket on so(3) ~ E^3: the cross product u x v."""
    u = as_vector(u)
    v = as_vector(v)
    return np.array([
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ])


def ad_matrix(v) -> np.ndarray:
    """Skew-symmetric matrix with ad_matrix(v) @ w == bracket(v, w)."""
    x, y, z = as_vector(v)
    return np.array([
        [0.0, -z, y],
        [z, 0.0, -x],
        [-y, x, 0.0],
    ])


def rot_exp(v) -> np.ndarray:
    """Matrix exponential of ad_matrix(v) by the closed Rodrigues form.

    The two trigonometric coefficients are written through sinc, so the
    zero-angle limit is exact rather than a truncated series.
    """
    v = as_vector(v)
    theta = math.sqrt(float(v @ v))
    k = ad_matrix(v)
    a = np.sinc(theta / np.pi)                    # sin(theta)/theta
    b = 0.5 * np.sinc(theta / (2.0 * np.pi)) ** 2  # (1 - cos(theta))/theta^2
    return np.eye(3) + a * k + b * (k @ k)


def rotation_error(r) -> float:
    """Max of the entrywise orthogonality defect |R^T R - I| and |det R - 1|."""
    r = np.asarray(r, dtype=float)
    ortho = float(np.max(np.abs(r.T @ r - np.eye(3))))
    return max(ortho, abs(float(np.linalg.det(r)) - 1.0))


def renormalize(r) -> np.ndarray:
    """Snap a slightly drifted matrix back onto SO(3).

    Modified Gram-Schmidt on the rows followed by a determinant sign fix;
    idempotent on exact rotations.  Refuses matrices whose orthogonality
    defect exceeds ORTHO_GUARD in Frobenius norm.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {r.shape}")
    defect = float(np.linalg.norm(r.T @ r - np.eye(3)))
    if not defect < ORTHO_GUARD:
        raise NotNearRotation(f"orthogonality defect {defect:.3g} >= {ORTHO_GUARD}")
    q = np.array(r)
    q[0] /= np.linalg.norm(q[0])
    q[1] -= (q[1] @ q[0]) * q[0]
    q[1] /= np.linalg.norm(q[1])
    q[2] -= (q[2] @ q[0]) * q[0] + (q[2] @ q[1]) * q[1]
    q[2] /= np.linalg.norm(q[2])
    if np.linalg.det(q) < 0.0:
        q[2] = -q[2]
    return q


@dataclass(frozen=True)
class Frame:
    """Positively oriented orthonormal triple (f0, f1, f2) with scale d > 0.

    f0 is the unit axis of the underlying constant angular velocity and d
    its magnitude, so the base velocity is d * f0.  The pair (f1, f2)
    spans the plane orthogonal to f0 with bracket(f0, f1) == f2 and
    bracket(f2, f0) == f1.
    """

    f0: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    d: float

    def __post_init__(self):
        object.__setattr__(self, "f0", as_vector(self.f0))
        object.__setattr__(self, "f1", as_vector(self.f1))
        object.__setattr__(self, "f2", as_vector(self.f2))
        object.__setattr__(self, "d", float(self.d))
        if not self.d > 0.0:
            raise ValueError("frame scale d must be positive")
        basis = np.array([self.f0, self.f1, self.f2])
        if np.max(np.abs(basis @ basis.T - np.eye(3))) > FRAME_TOL:
            raise ValueError("frame vectors are not orthonormal")
        if (np.max(np.abs(bracket(self.f0, self.f1) - self.f2)) > FRAME_TOL
                or np.max(np.abs(bracket(self.f2, self.f0) - self.f1)) > FRAME_TOL):
            raise ValueError("frame is not positively oriented")

    @property
    def base(self) -> np.ndarray:
        """The constant angular velocity d * f0 the frame is adapted to."""
        return self.d * self.f0

    @cached_property
    def matrix(self) -> np.ndarray:
        """Orthogonal matrix with columns f0, f1, f2."""
        return np.column_stack([self.f0, self.f1, self.f2])

    def to_frame(self, v) -> np.ndarray:
        """Coordinates of v in the (f0, f1, f2) basis."""
        return self.matrix.T @ as_vector(v)

    def from_frame(self, coords) -> np.ndarray:
        """Vector with the given (f0, f1, f2) coordinates."""
        return self.matrix @ as_vector(coords)

    def perp_complex(self, v) -> complex:
        """The f0-orthogonal part of v encoded as <v,f1> + i <v,f2>.

        On this plane ad(f0) acts as multiplication by i, which turns the
        transverse endomorphism algebra into complex scalar arithmetic.
        """
        v = as_vector(v)
        return complex(v @ self.f1, v @ self.f2)

    def from_complex(self, z: complex) -> np.ndarray:
        """Inverse of perp_complex (the f0 component is zero)."""
        return z.real * self.f1 + z.imag * self.f2


def frame_from_axis(axis) -> Frame:
    """Deterministic orthonormal frame adapted to a nonzero axis vector.

    f0 is the normalized axis; f1 is the projection onto the f0-orthogonal
    plane of the standard basis vector least aligned with f0 (lowest index
    on ties); f2 completes the positively oriented triple.
    """
    v = as_vector(axis)
    d = float(np.linalg.norm(v))
    if d <= 1e-12:
        raise ZeroDirection("axis norm is below 1e-12")
    f0 = v / d
    idx = int(np.argmin(np.abs(f0)))
    e = np.zeros(3)
    e[idx] = 1.0
    f1 = e - f0[idx] * f0
    f1 /= np.linalg.norm(f1)
    f2 = bracket(f0, f1)
    return Frame(f0, f1, f2, d)


def axial_rotation(frame: Frame, t: float, t0: float) -> np.ndarray:
    """One-parameter rotation family exp(-d (t - t0) ad(f0)).

    Fixes f0 and rotates the transverse plane clockwise at rate d; in
    frame coordinates the matrix has rows (1,0,0), (0,cos u,sin u),
    (0,-sin u,cos u) with u = d (t - t0).
    """
    return rot_exp(-frame.d * (t - t0) * frame.f0)


def plane_rotation(angle: float) -> np.ndarray:
    """Clockwise rotation by `angle` in the first two coordinates."""
    c = math.cos(angle)
    s = math.sin(angle)
    return np.array([
        [c, s, 0.0],
        [-s, c, 0.0],
        [0.0, 0.0, 1.0],
    ])


def frame_from_pair(x1, x2) -> np.ndarray:
    """Rotation whose rows are an orthonormal frame adapted to (x1, x2).

    Rows are, in order: the normalized x1-orthogonal part of x2, the
    normalized cross product x1 x x2, and x1 / |x1|.  Requires the pair to
    be linearly independent; each row is invariant under positive scaling
    of either input.
    """
    x1 = as_vector(x1)
    x2 = as_vector(x2)
    n1sq = float(x1 @ x1)
    n2sq = float(x2 @ x2)
    dot = float(x1 @ x2)
    gram = n1sq * n2sq - dot * dot
    if gram <= GRAM_RTOL * n1sq * n2sq or n1sq == 0.0:
        raise DegenerateFrame(
            f"Gram determinant {gram:.3g} below tolerance for norms "
            f"{math.sqrt(n1sq):.3g}, {math.sqrt(n2sq):.3g}")
    n1 = math.sqrt(n1sq)
    sg = math.sqrt(gram)
    return np.array([
        (n1 * x2 - (dot / n1) * x1) / sg,
        bracket(x1, x2) / sg,
        x1 / n1,
    ])


def moving_frame(w, dw, t: float) -> np.ndarray:
    """frame_from_pair applied to a curve and its derivative at time t."""
    return frame_from_pair(w(t), dw(t))
