import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from so3cubics.algebra import (Frame, ad_matrix, axial_rotation, bracket,
                               frame_from_axis, frame_from_pair, moving_frame,
                               plane_rotation, renormalize, rot_exp,
                               rotation_error)
from so3cubics.errors import DegenerateFrame, NotNearRotation, ZeroDirection

component = st.floats(-2.0, 2.0, allow_nan=False)
vectors = st.tuples(component, component, component).map(np.array)
nonzero_vectors = vectors.filter(lambda v: np.linalg.norm(v) > 0.1)
unit_vectors = nonzero_vectors.map(lambda v: v / np.linalg.norm(v))


# ------------------------------------------------------------------ bracket

def test_bracket_canonical():
    np.testing.assert_allclose(bracket([1, 0, 0], [0, 1, 0]), [0, 0, 1])


def test_bracket_self_vanishes():
    v = np.array([0.3, -1.2, 0.7])
    np.testing.assert_allclose(bracket(v, v), np.zeros(3))


@given(nonzero_vectors)
def test_bracket_frame_closure(axis):
    frame = frame_from_axis(axis)
    np.testing.assert_allclose(bracket(frame.f0, frame.f1), frame.f2, atol=1e-12)
    np.testing.assert_allclose(bracket(frame.f2, frame.f0), frame.f1, atol=1e-12)


@given(unit_vectors, unit_vectors, unit_vectors)
def test_jacobi_identity(u, v, w):
    total = (bracket(u, bracket(v, w)) + bracket(v, bracket(w, u))
             + bracket(w, bracket(u, v)))
    assert np.max(np.abs(total)) < 1e-12


@given(unit_vectors, unit_vectors, unit_vectors)
def test_ad_invariance(u, v, w):
    lhs = bracket(u, v) @ w
    rhs = -(v @ bracket(u, w))
    assert abs(lhs - rhs) < 1e-12


# ---------------------------------------------------------------- ad_matrix

def test_ad_matrix_zero():
    np.testing.assert_array_equal(ad_matrix([0, 0, 0]), np.zeros((3, 3)))


def test_ad_matrix_action():
    np.testing.assert_allclose(ad_matrix([1, 0, 0]) @ [0, 1, 0], [0, 0, 1])


def test_ad_matrix_skew():
    m = ad_matrix([1, 2, 3])
    np.testing.assert_array_equal(m.T, -m)


@given(vectors, vectors)
def test_ad_matrix_matches_bracket(u, v):
    np.testing.assert_allclose(ad_matrix(u) @ v, bracket(u, v), atol=1e-12)


# ------------------------------------------------------------------ rot_exp

def test_rot_exp_zero():
    np.testing.assert_array_equal(rot_exp([0, 0, 0]), np.eye(3))


def test_rot_exp_half_turn():
    np.testing.assert_allclose(rot_exp([math.pi, 0, 0]),
                               np.diag([1.0, -1.0, -1.0]), atol=1e-15)


def test_rot_exp_subgroup_property():
    v = np.array([0.1, 0.2, 0.3])
    np.testing.assert_allclose(rot_exp(3 * v), rot_exp(v) @ rot_exp(2 * v), atol=1e-14)


@given(unit_vectors, st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
def test_rot_exp_one_parameter(v, t, s):
    lhs = rot_exp((t + s) * v)
    rhs = rot_exp(t * v) @ rot_exp(s * v)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(vectors)
def test_rot_exp_is_rotation(v):
    assert rotation_error(rot_exp(v)) < 1e-12


# ----------------------------------------------------------- axial_rotation

def test_axial_rotation_identity_at_start():
    frame = frame_from_axis([0.4, -0.3, 1.1])
    np.testing.assert_allclose(axial_rotation(frame, 2.5, 2.5), np.eye(3), atol=1e-15)


def test_axial_rotation_frame_coordinates_quarter_turn():
    frame = frame_from_axis([0.3, -1.2, 0.4])
    t = (math.pi / 2) / frame.d
    m = frame.matrix.T @ axial_rotation(frame, t, 0.0) @ frame.matrix
    expected = np.array([[1, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=float)
    np.testing.assert_allclose(m, expected, atol=1e-12)


@given(nonzero_vectors, st.floats(-4.0, 4.0))
def test_axial_rotation_fixes_axis(axis, t):
    frame = frame_from_axis(axis)
    np.testing.assert_allclose(axial_rotation(frame, t, 0.0) @ frame.f0, frame.f0,
                               atol=1e-12)


@given(nonzero_vectors, st.floats(-4.0, 4.0))
def test_axial_rotation_commutes_with_axis_bracket(axis, t):
    frame = frame_from_axis(axis)
    im = ad_matrix(frame.f0)
    e = axial_rotation(frame, t, 0.0)
    assert np.max(np.abs(im @ e - e @ im)) < 1e-12


@given(nonzero_vectors)
def test_axis_bracket_squares_to_minus_one_transverse(axis):
    frame = frame_from_axis(axis)
    im2 = ad_matrix(frame.f0) @ ad_matrix(frame.f0)
    np.testing.assert_allclose(im2 @ frame.f1, -frame.f1, atol=1e-12)
    np.testing.assert_allclose(im2 @ frame.f2, -frame.f2, atol=1e-12)


# ------------------------------------------------------------ plane_rotation

def test_plane_rotation_zero():
    np.testing.assert_array_equal(plane_rotation(0.0), np.eye(3))


def test_plane_rotation_quarter_turn():
    expected = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=float)
    np.testing.assert_allclose(plane_rotation(math.pi / 2), expected, atol=1e-16)


def test_plane_rotation_inverse():
    np.testing.assert_allclose(plane_rotation(1.3) @ plane_rotation(-1.3),
                               np.eye(3), atol=1e-15)


def test_plane_rotation_composition():
    np.testing.assert_allclose(plane_rotation(0.4) @ plane_rotation(0.9),
                               plane_rotation(1.3), atol=1e-15)


# ----------------------------------------------------------- frame_from_pair

def test_frame_from_pair_canonical():
    np.testing.assert_allclose(frame_from_pair([0, 0, 1], [1, 0, 0]), np.eye(3),
                               atol=1e-15)


def test_frame_from_pair_scale_invariance():
    np.testing.assert_allclose(frame_from_pair([0, 0, 2], [5, 0, 0]), np.eye(3),
                               atol=1e-15)


def test_frame_from_pair_direct_formula():
    # row-by-row evaluation for x1=(1,1,0), x2=(0,1,0)
    s = frame_from_pair([1, 1, 0], [0, 1, 0])
    r = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(s[0], [-r, r, 0.0], atol=1e-15)
    np.testing.assert_allclose(s[1], [0.0, 0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(s[2], [r, r, 0.0], atol=1e-15)
    assert rotation_error(s) < 1e-14


@given(nonzero_vectors, nonzero_vectors)
def test_frame_from_pair_is_rotation_or_degenerate(x1, x2):
    # full 1e-12 orthogonality is claimed away from the degeneracy
    # boundary; cancellation in the Gram determinant degrades the rows
    # like eps / (relative Gram)
    n1sq = float(x1 @ x1)
    n2sq = float(x2 @ x2)
    gram = n1sq * n2sq - float(x1 @ x2) ** 2
    assume(gram > 1e-2 * n1sq * n2sq)
    s = frame_from_pair(x1, x2)
    assert rotation_error(s) < 1e-12
    np.testing.assert_allclose(s[2], x1 / np.linalg.norm(x1), atol=1e-12)


def test_frame_from_pair_near_boundary_still_near_orthogonal():
    # relative Gram 1e-8: defect bounded by ~eps / 1e-8
    s = frame_from_pair([1.0, 0.0, 0.0], [1.0, 1e-4, 0.0])
    assert rotation_error(s) < 1e-6


def test_frame_from_pair_rejects_parallel():
    with pytest.raises(DegenerateFrame):
        frame_from_pair([1, 2, 0], [2, 4, 0])
    with pytest.raises(DegenerateFrame):
        frame_from_pair([1, 0, 0], [0, 0, 0])


# -------------------------------------------------------------- moving_frame

def test_moving_frame_substitution():
    w = lambda t: np.array([math.cos(t), math.sin(t), 0.0])
    dw = lambda t: np.array([-math.sin(t), math.cos(t), 0.0])
    np.testing.assert_allclose(moving_frame(w, dw, 0.0),
                               frame_from_pair([1, 0, 0], [0, 1, 0]), atol=1e-15)


def test_moving_frame_constant_curve_degenerate():
    w = lambda t: np.array([1.0, 0.0, 0.0])
    dw = lambda t: np.zeros(3)
    with pytest.raises(DegenerateFrame):
        moving_frame(w, dw, 0.3)


def test_moving_frame_on_second_approximant_derivatives():
    from so3cubics.approximants import fit_params, second_approximant
    delta = 0.05
    params = fit_params([1, 0, 0], delta, [1.0, delta, 0.0],
                        [0.0, 0.0, delta / 2], np.full(3, delta / 4))
    s = moving_frame(lambda t: second_approximant(params, t, 2),
                     lambda t: second_approximant(params, t, 3), 1.0)
    assert rotation_error(s) < 1e-12


# ------------------------------------------------------------ frame_from_axis

def test_frame_from_axis_canonical():
    frame = frame_from_axis([1, 0, 0])
    np.testing.assert_allclose(frame.f0, [1, 0, 0])
    np.testing.assert_allclose(frame.f1, [0, 1, 0])
    np.testing.assert_allclose(frame.f2, [0, 0, 1])
    assert frame.d == 1.0


def test_frame_from_axis_scaled():
    frame = frame_from_axis([0, 0, 2])
    np.testing.assert_allclose(frame.f0, [0, 0, 1])
    assert frame.d == 2.0
    assert abs(frame.f1 @ frame.f0) < 1e-15


def test_frame_from_axis_diagonal_direction():
    frame = frame_from_axis(np.ones(3) / math.sqrt(3.0))
    basis = np.array([frame.f0, frame.f1, frame.f2])
    np.testing.assert_allclose(basis @ basis.T, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(bracket(frame.f0, frame.f1), frame.f2, atol=1e-12)


def test_frame_from_axis_rejects_zero():
    with pytest.raises(ZeroDirection):
        frame_from_axis([0.0, 0.0, 1e-13])


def test_frame_validates_orthonormality():
    with pytest.raises(ValueError):
        Frame([1, 0, 0], [0.5, 0.5, 0], [0, 0, 1], 1.0)
    with pytest.raises(ValueError):
        # orthonormal but negatively oriented
        Frame([1, 0, 0], [0, 0, 1], [0, 1, 0], 1.0)


# --------------------------------------------------------------- renormalize

def test_renormalize_fixes_exact_rotation():
    r = rot_exp([0.4, -0.2, 0.8])
    np.testing.assert_allclose(renormalize(r), r, atol=1e-14)


def test_renormalize_small_perturbation():
    skew = np.array([[0.0, 1.0, -0.5], [-1.0, 0.0, 0.3], [0.5, -0.3, 0.0]])
    r = np.eye(3) + 1e-6 * skew
    out = renormalize(r)
    assert rotation_error(out) < 1e-12


def test_renormalize_rejects_far_matrix():
    with pytest.raises(NotNearRotation):
        renormalize(2.0 * np.eye(3))


def test_renormalize_after_long_integration(fig1_trajectory):
    from so3cubics.quadratic import integrate_cubic
    # 1e4 raw RK4 steps of x' = x ad(V) on [0, 5] at half step
    rt = integrate_cubic(np.eye(3), fig1_trajectory, 5e-4, renorm_every=0)
    final = renormalize(rt.rotations[-1])
    assert abs(np.linalg.det(final) - 1.0) < 1e-12
