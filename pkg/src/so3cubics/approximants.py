"""Closed-form approximants to nearly constant Lie quadratics in so(3).

A quadratic close to a constant velocity D = d f0 is approximated to first
order by

    V1(t) = D + delta (q(t) f0 + A0 + (t - t0) A1 + e(t) B)

with q quadratic, A0, A1, B in the plane orthogonal to f0, and e(t) the
axial rotation exp(-d (t - t0) ad(f0)).  The second-order approximant adds
(delta^2 / 2)(f2(t) f0 + v2(t)) whose ingredients are polynomial and
trigonometric: the transverse endomorphism algebra is spanned by the
identity, ad(f0), e, and ad(f0) e, and running integrals of polynomial
multiples of e close up under an integration-by-parts recursion.

All transverse arithmetic is done in complex form (the plane orthogonal
to f0 with ad(f0) acting as i), which keeps every coefficient formula a
few lines long and makes derivatives exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .algebra import Frame, ad_matrix, as_vector, axial_rotation, bracket, frame_from_axis
from .errors import DegenerateB
from .quadratic import QuadraticIVP

B_DEGENERACY_TOL = 1e-12   # per-delta transverse V'' below this flags beta = 0


# ---------------------------------------------------------------------------
# polynomial x axial-rotation calculus (transverse plane, complex form)
# ---------------------------------------------------------------------------

def _ibp_weights(coeffs: np.ndarray, d: float) -> np.ndarray:
    """Coefficients w with int_0^tau p(s) exp(-i d s) ds
    = w(tau) exp(-i d tau) - w(0), by repeated integration by parts:
    w = sum_k (-1)^k (i/d)^(k+1) p^(k)."""
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    w = np.zeros_like(coeffs)
    term = coeffs
    factor = 1j / d
    sign = 1.0
    while term.size and np.any(term != 0.0):
        w[: term.size] += sign * factor * term
        term = npoly.polyder(term)
        factor *= 1j / d
        sign = -sign
    return w


@dataclass(frozen=True)
class _PolyExp:
    """Complex function p(tau) exp(-i d tau) + r(tau) with polynomial p, r.

    Closed under differentiation and under running integration from 0,
    which is all the second-order correction formulas need.
    """

    d: float
    pe: np.ndarray   # coefficients of the exp-carrying polynomial, low to high
    pp: np.ndarray   # coefficients of the plain polynomial

    @staticmethod
    def make(d: float, pe=(0,), pp=(0,)) -> "_PolyExp":
        return _PolyExp(d, np.atleast_1d(np.asarray(pe, dtype=complex)),
                        np.atleast_1d(np.asarray(pp, dtype=complex)))

    def __call__(self, tau: float) -> complex:
        return (complex(npoly.polyval(tau, self.pe)) * np.exp(-1j * self.d * tau)
                + complex(npoly.polyval(tau, self.pp)))

    def deriv(self) -> "_PolyExp":
        pe = npoly.polyder(self.pe) if self.pe.size > 1 else np.zeros(1, complex)
        pe = npoly.polyadd(pe, -1j * self.d * self.pe)
        pp = npoly.polyder(self.pp) if self.pp.size > 1 else np.zeros(1, complex)
        return _PolyExp(self.d, np.atleast_1d(pe), np.atleast_1d(pp))

    def integ(self) -> "_PolyExp":
        """Running integral from 0."""
        w = _ibp_weights(self.pe, self.d)
        pp = npoly.polyint(self.pp)
        pp = npoly.polyadd(pp, [-complex(npoly.polyval(0.0, w))])
        return _PolyExp(self.d, w, np.atleast_1d(pp))


def _shifted_poly(coeffs) -> np.ndarray:
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if coeffs.size > 4:
        raise ValueError("polynomial degree must be at most 3")
    return coeffs


def integrate_poly_axial(frame: Frame, coeffs, t: float, t0: float,
                         repeat: int = 1) -> np.ndarray:
    """Running integral I(p e) from t0, as a linear map on so(3).

    `coeffs` holds p in powers of (t - t0), lowest first, degree <= 3;
    e is the axial rotation of the frame.  The closed form comes from the
    integration-by-parts recursion
        I(p e) = (ad(f0)/d)(p e - p(t0) - I(p' e)),
    applied until the polynomial derivative vanishes.  `repeat` iterates
    the running integral, e.g. repeat=2 gives I(I(p e)).
    """
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    coeffs = _shifted_poly(coeffs)
    tau = t - t0
    perp = _PolyExp.make(frame.d, pe=coeffs)
    axial = np.asarray(coeffs, dtype=float)
    for _ in range(repeat):
        perp = perp.integ()
        axial = npoly.polyint(axial)
    w = perp(tau)
    s = float(npoly.polyval(tau, axial))
    p0 = np.outer(frame.f0, frame.f0)
    return w.real * (np.eye(3) - p0) + w.imag * ad_matrix(frame.f0) + s * p0


# ---------------------------------------------------------------------------
# parameters of the approximants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxParams:
    """Parameter set of the first/second-order approximants.

    q(t) = c0 + c1 (t - t0) + c2 (t - t0)^2 is the axial polynomial;
    (a01, a02) and (a11, a12) are the frame coordinates of the transverse
    affine coefficients A0, A1; B = beta (cos gamma f1 + sin gamma f2) is
    the transverse oscillatory coefficient.  `b_degenerate` marks a fitted
    parameter set whose transverse V'' vanished (beta = 0), for which the
    closed-form reconstruction formulas do not apply.
    """

    delta: float
    frame: Frame
    t0: float
    c0: float
    c1: float
    c2: float
    a01: float
    a02: float
    a11: float
    a12: float
    beta: float
    gamma: float
    b_degenerate: bool = False

    def __post_init__(self):
        if not self.delta > 0.0:
            raise ValueError("delta must be positive")
        if self.beta < 0.0:
            raise ValueError("beta must be nonnegative")
        if not 0.0 <= self.gamma < 2.0 * math.pi:
            raise ValueError("gamma must lie in [0, 2*pi)")

    @property
    def q_coeffs(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2])

    @property
    def a0_vec(self) -> np.ndarray:
        return self.a01 * self.frame.f1 + self.a02 * self.frame.f2

    @property
    def a1_vec(self) -> np.ndarray:
        return self.a11 * self.frame.f1 + self.a12 * self.frame.f2

    @property
    def b_vec(self) -> np.ndarray:
        return self.beta * (math.cos(self.gamma) * self.frame.f1
                            + math.sin(self.gamma) * self.frame.f2)

    @property
    def rho(self) -> float:
        """-2 c2 / (d^2 beta); only defined for beta > 0."""
        if self.beta <= 0.0:
            raise DegenerateB("rho is undefined for beta = 0")
        return -2.0 * self.c2 / (self.frame.d ** 2 * self.beta)

    @property
    def c_hat(self) -> float:
        """Squared acceleration of the first-order approximant."""
        return self.delta ** 2 * (4.0 * self.c2 ** 2 + self.frame.d ** 4 * self.beta ** 2)

    @property
    def C_hat(self) -> np.ndarray:
        """First-order bracket constant delta (2 c2 f0 - d a12 f1 + d a11 f2)."""
        f = self.frame
        return self.delta * (2.0 * self.c2 * f.f0 - f.d * self.a12 * f.f1
                             + f.d * self.a11 * f.f2)

    # complex shorthands for the transverse coefficients
    @property
    def _a0c(self) -> complex:
        return complex(self.a01, self.a02)

    @property
    def _a1c(self) -> complex:
        return complex(self.a11, self.a12)

    @property
    def _bc(self) -> complex:
        return self.beta * np.exp(1j * self.gamma)

    def to_dict(self) -> dict:
        f = self.frame
        return {
            "delta": self.delta,
            "t0": self.t0,
            "frame": {"f0": list(f.f0), "f1": list(f.f1), "f2": list(f.f2), "d": f.d},
            "q": [self.c0, self.c1, self.c2],
            "a0": [self.a01, self.a02],
            "a1": [self.a11, self.a12],
            "beta": self.beta,
            "gamma": self.gamma,
            "b_degenerate": self.b_degenerate,
        }

    @staticmethod
    def from_dict(data: dict) -> "ApproxParams":
        f = data["frame"]
        frame = Frame(np.array(f["f0"]), np.array(f["f1"]), np.array(f["f2"]), f["d"])
        return ApproxParams(
            delta=data["delta"], frame=frame, t0=data["t0"],
            c0=data["q"][0], c1=data["q"][1], c2=data["q"][2],
            a01=data["a0"][0], a02=data["a0"][1],
            a11=data["a1"][0], a12=data["a1"][1],
            beta=data["beta"], gamma=data["gamma"],
            b_degenerate=data.get("b_degenerate", False),
        )


def fit_params(base, delta: float, v0, v1, v2, t0: float = 0.0) -> ApproxParams:
    """Match the first-order approximant to initial data (V, V', V'') at t0.

    Splitting the scaled perturbations (v0 - base)/delta, v1/delta,
    v2/delta into axial and transverse parts determines, in order: the
    axial polynomial coefficients; B from the transverse V''; then A1 and
    A0 by back-substitution.  When the transverse V'' vanishes the set is
    returned with beta = 0 and flagged `b_degenerate` instead of raising.
    """
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    frame = frame_from_axis(base)
    d = frame.d
    p0 = (as_vector(v0) - frame.base) / delta
    p1 = as_vector(v1) / delta
    p2 = as_vector(v2) / delta
    if not (np.all(np.isfinite(p0)) and np.all(np.isfinite(p1)) and np.all(np.isfinite(p2))):
        raise ValueError("scaled perturbations are not finite")

    c0 = float(p0 @ frame.f0)
    c1 = float(p1 @ frame.f0)
    c2 = 0.5 * float(p2 @ frame.f0)
    perp0 = frame.perp_complex(p0)
    perp1 = frame.perp_complex(p1)
    perp2 = frame.perp_complex(p2)

    degenerate = abs(perp2) <= B_DEGENERACY_TOL
    if degenerate:
        beta, gamma, bc = 0.0, 0.0, 0j
    else:
        bc = -perp2 / d ** 2
        beta = abs(bc)
        gamma = math.atan2(bc.imag, bc.real) % (2.0 * math.pi)
    a1c = perp1 + d * 1j * bc
    a0c = perp0 - bc
    return ApproxParams(
        delta=delta, frame=frame, t0=t0,
        c0=c0, c1=c1, c2=c2,
        a01=a0c.real, a02=a0c.imag,
        a11=a1c.real, a12=a1c.imag,
        beta=beta, gamma=gamma,
        b_degenerate=degenerate,
    )


# ---------------------------------------------------------------------------
# first-order approximant
# ---------------------------------------------------------------------------

def first_approximant(p: ApproxParams, t: float, deriv: int = 0) -> np.ndarray:
    """V1 and its first three t-derivatives in closed form.

    The axial-rotation derivative is taken analytically: e' = -d ad(f0) e,
    and ad(f0)^2 = -1 on the transverse plane.
    """
    f = p.frame
    tau = t - p.t0
    eb = axial_rotation(f, t, p.t0) @ p.b_vec
    if deriv == 0:
        q = p.c0 + p.c1 * tau + p.c2 * tau * tau
        return f.base + p.delta * (q * f.f0 + p.a0_vec + tau * p.a1_vec + eb)
    if deriv == 1:
        dq = p.c1 + 2.0 * p.c2 * tau
        return p.delta * (dq * f.f0 + p.a1_vec - f.d * bracket(f.f0, eb))
    if deriv == 2:
        return p.delta * (2.0 * p.c2 * f.f0 - f.d ** 2 * eb)
    if deriv == 3:
        return p.delta * f.d ** 3 * bracket(f.f0, eb)
    raise ValueError("derivative order must be in 0..3")


def taylor2_baseline(ivp: QuadraticIVP, t: float) -> np.ndarray:
    """Degree-2 Taylor polynomial of the quadratic from its initial jet."""
    tau = t - ivp.t0
    return ivp.v0 + tau * ivp.v1 + 0.5 * tau * tau * ivp.v2


# ---------------------------------------------------------------------------
# second-order correction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EndomorphismSet:
    """The five transverse kernels of the second-order correction at one
    time, as matrices on so(3): l0, l1 weight A0, A1 inside the axial
    component; m0, m1, mb weight A0, A1, B inside the transverse one.
    Each is a combination of the identity, ad(f0), the axial rotation e,
    and ad(f0) e with polynomial coefficients in u = d (t - t0)."""

    l0: np.ndarray
    l1: np.ndarray
    m0: np.ndarray
    m1: np.ndarray
    mb: np.ndarray
    u: float


def endomorphisms(frame: Frame, t: float, t0: float) -> EndomorphismSet:
    """Evaluate the correction kernels at time t."""
    d = frame.d
    u = d * (t - t0)
    eye = np.eye(3)
    im = ad_matrix(frame.f0)
    e = axial_rotation(frame, t, t0)
    ie = im @ e
    l0 = (-u * eye + (u * u / 2.0 - 1.0) * im + ie) / d
    l1 = ((u * u / 2.0 - 3.0) * eye + 2.0 * u * im + 3.0 * e + u * ie) / d ** 2
    m0 = ((u * u / 2.0 - 1.0) * eye + u * im + e) / d ** 3
    m1 = ((u ** 3 / 6.0 - u) * eye + (u * u / 2.0 - 1.0) * im + ie) / d ** 4
    mb = (2.0 * (e - eye) + u * (im @ (e + eye))) / d ** 3
    return EndomorphismSet(l0=l0, l1=l1, m0=m0, m1=m1, mb=mb, u=u)


def second_correction(p: ApproxParams, t: float) -> tuple[float, np.ndarray]:
    """The pair (f2, v2): axial scalar and transverse vector of the
    second-order correction.

    f2 = -2 <[A0, l0 B] + [A1, l1 B], f0>;
    v2 = 2 q'' (m0 A0 + m1 A1 - mb B) + 2 d^2 ad(f0) I(I(I(q) e)) B,
    with the double running integral evaluated by the integration-by-parts
    closed form (integrate_poly_axial on the antiderivative of q).
    """
    f = p.frame
    ends = endomorphisms(f, t, p.t0)
    a0, a1, b = p.a0_vec, p.a1_vec, p.b_vec
    f2 = -2.0 * float((bracket(a0, ends.l0 @ b) + bracket(a1, ends.l1 @ b)) @ f.f0)
    iq = npoly.polyint(p.q_coeffs)
    g2 = integrate_poly_axial(f, iq, t, p.t0, repeat=2)
    v2 = (4.0 * p.c2 * (ends.m0 @ a0 + ends.m1 @ a1 - ends.mb @ b)
          + 2.0 * f.d ** 2 * (ad_matrix(f.f0) @ (g2 @ b)))
    return f2, v2


class _CorrectionDerivatives:
    """The pair (f2, v2) in transverse complex form, built once per
    parameter set so that any derivative order is exact.

    Each kernel becomes a _PolyExp in tau = t - t0 by encoding the
    identity as 1, ad(f0) as i and the axial rotation as exp(-i d tau);
    the polynomial coefficients below are the kernel formulas expanded in
    powers of tau.  Then f2(tau) = Im(F(tau)) for a single _PolyExp F, and
    v2 is the frame decoding of another.
    """

    def __init__(self, p: ApproxParams):
        d = p.frame.d
        # kernel weighting A0 in the axial component
        l0 = _PolyExp.make(d, pe=[1j / d], pp=[-1j / d, -1.0, 0.5j * d])
        # kernel weighting A1 in the axial component
        l1 = _PolyExp.make(d, pe=[3.0 / d ** 2, 1j / d],
                           pp=[-3.0 / d ** 2, 2j / d, 0.5])
        # kernels weighting A0, A1, B in the transverse component
        m0 = _PolyExp.make(d, pe=[1.0 / d ** 3],
                           pp=[-1.0 / d ** 3, 1j / d ** 2, 0.5 / d])
        m1 = _PolyExp.make(d, pe=[1j / d ** 4],
                           pp=[-1j / d ** 4, -1.0 / d ** 3, 0.5j / d ** 2, 1.0 / (6.0 * d)])
        mb = _PolyExp.make(d, pe=[2.0 / d ** 3, 1j / d ** 2],
                           pp=[-2.0 / d ** 3, 1j / d ** 2])

        a0c, a1c, bc = p._a0c, p._a1c, p._bc
        scale = lambda pexp, z: _PolyExp(d, pexp.pe * z, pexp.pp * z)
        add = lambda x, y: _PolyExp(d, npoly.polyadd(x.pe, y.pe), npoly.polyadd(x.pp, y.pp))

        self.f2 = scale(add(scale(l0, np.conj(a0c) * bc), scale(l1, np.conj(a1c) * bc)), -2.0)
        iq = npoly.polyint(np.asarray(p.q_coeffs, dtype=complex))
        g2 = _PolyExp.make(d, pe=iq).integ().integ()
        v2 = add(add(scale(m0, 4.0 * p.c2 * a0c), scale(m1, 4.0 * p.c2 * a1c)),
                 scale(mb, -4.0 * p.c2 * bc))
        self.v2 = add(v2, scale(g2, 2j * d ** 2 * bc))

    def eval(self, frame: Frame, tau: float, deriv: int) -> tuple[float, np.ndarray]:
        f2 = self.f2
        v2 = self.v2
        for _ in range(deriv):
            f2 = f2.deriv()
            v2 = v2.deriv()
        return f2(tau).imag, frame.from_complex(v2(tau))


def second_correction_deriv2(p: ApproxParams, t: float) -> tuple[float, np.ndarray]:
    """Second derivatives (f2'', v2'') in their explicit closed form:

    f2'' = <2 d [A0, ad(f0)(e - 1) B] + 2 [A1, (e - 1 + u ad(f0) e) B], f0>
    v2'' = -(4 c2 / d)(e - 1) A0
           + (4 c2 / d^2)(u - ad(f0)(e - 1)) A1
           + 2 (2 c2 (t - t0) + d^2 Iq(t)) ad(f0) e B
    with u = d (t - t0) and Iq the antiderivative of q vanishing at t0.
    """
    f = p.frame
    d = f.d
    tau = t - p.t0
    u = d * tau
    eye = np.eye(3)
    im = ad_matrix(f.f0)
    e = axial_rotation(f, t, p.t0)
    a0, a1, b = p.a0_vec, p.a1_vec, p.b_vec
    f2 = float((2.0 * d * bracket(a0, im @ ((e - eye) @ b))
                + 2.0 * bracket(a1, (e - eye + u * (im @ e)) @ b)) @ f.f0)
    iq = float(npoly.polyval(tau, npoly.polyint(p.q_coeffs)))
    v2 = (-(4.0 * p.c2 / d) * ((e - eye) @ a0)
          + (4.0 * p.c2 / d ** 2) * ((u * eye - im @ (e - eye)) @ a1)
          + 2.0 * (2.0 * p.c2 * tau + d ** 2 * iq) * (im @ (e @ b)))
    return f2, v2


def second_correction_deriv3(p: ApproxParams, t: float) -> tuple[float, np.ndarray]:
    """Third derivatives (f2''', v2'''), by analytic differentiation of the
    second-derivative closed form."""
    f = p.frame
    d = f.d
    tau = t - p.t0
    u = d * tau
    eye = np.eye(3)
    im = ad_matrix(f.f0)
    e = axial_rotation(f, t, p.t0)
    a0, a1, b = p.a0_vec, p.a1_vec, p.b_vec
    eb = e @ b
    f2 = float((2.0 * d ** 2 * bracket(a0, eb) + 2.0 * d * u * bracket(a1, eb)) @ f.f0)
    q = float(npoly.polyval(tau, p.q_coeffs))
    iq = float(npoly.polyval(tau, npoly.polyint(p.q_coeffs)))
    v2 = (4.0 * p.c2 * (im @ (e @ a0))
          + (4.0 * p.c2 / d) * ((eye - e) @ a1)
          + 2.0 * (2.0 * p.c2 + d ** 2 * q) * (im @ eb)
          + 2.0 * d * (2.0 * p.c2 * tau + d ** 2 * iq) * eb)
    return f2, v2


def second_approximant(p: ApproxParams, t: float, deriv: int = 0) -> np.ndarray:
    """V2 and its first three t-derivatives.

    V2 = V1 + (delta^2 / 2)(f2 f0 + v2).  Orders 0 and 1 evaluate the
    correction through the integral recursion; orders 2 and 3 use the
    explicit trigonometric closed forms.
    """
    if deriv == 0:
        f2, v2 = second_correction(p, t)
    elif deriv == 1:
        f2, v2 = _CorrectionDerivatives(p).eval(p.frame, t - p.t0, 1)
    elif deriv == 2:
        f2, v2 = second_correction_deriv2(p, t)
    elif deriv == 3:
        f2, v2 = second_correction_deriv3(p, t)
    else:
        raise ValueError("derivative order must be in 0..3")
    return first_approximant(p, t, deriv) + 0.5 * p.delta ** 2 * (f2 * p.frame.f0 + v2)
