"""Free and perturbed Green's functions for the two unstable models.

The free Hamiltonians are, on the half line x < 0, a harmonic half-well
x^2/2 (semi-oscillator) or a linear ramp -F x (semi-linear, F > 0), and free
motion on x > 0.  Both Green's functions are assembled from a left solution
u (recessive as x -> -infinity) and a right solution v (outgoing e^{ikx} as
x -> +infinity):

    G0(x, x') = -2 u(min) v(max) / W,     W = u(0) v'(0) - u'(0) v(0),

which fixes the defining jump dG0/dx|_{x'-}^{x'+} = -2 of (H0 - z) G0 =
delta(x - x').  The point potential a*delta(x) + b*delta'(x), with the
two-weight product rule

    int f delta  =  zeta f(0+) + eta f(0-),
    int f delta' = -(zeta f'(0+) + eta f'(0-)),        zeta + eta = 1,

closes into a 2x2 linear system for the one-sided boundary data of the
perturbed kernel; ``coefficient_set`` carries that algebra literally
(no zeta+eta=1 simplifications applied) so each entry can be audited
term by term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

from . import specfun
from .errors import (
    DegenerateDelta,
    InvalidParameter,
    PoleOfGreen,
    SingularEnergy,
)
from .kplane import (
    PHYSICAL_SHEET,
    momentum_from_energy,
    require_finite,
)

_SQRT2 = math.sqrt(2.0)
_TOL = 1e-13


# ----------------------------------------------------------------------
# model and perturbation parameters
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SemiOscillator:
    """Confining left potential x^2/2 for x < 0, free for x > 0."""


@dataclass(frozen=True)
class SemiLinear:
    """Confining left ramp -F x for x < 0 (F > 0), free for x > 0."""

    field_strength: float = 0.5

    def __post_init__(self):
        f = self.field_strength
        if not (isinstance(f, (int, float)) and math.isfinite(f) and f > 0.0):
            raise InvalidParameter("field strength must be finite and > 0, got %r" % (f,))

    @property
    def length_scale(self) -> float:
        """x = L xi with L = (1/(2F))^(1/3)."""
        return (0.5 / self.field_strength) ** (1.0 / 3.0)


ModelKind = Union[SemiOscillator, SemiLinear]

OSCILLATOR = SemiOscillator()


@dataclass(frozen=True)
class PointInteraction:
    """Strengths (a, b) of a*delta + b*delta' and the product-rule weights.

    eta is derived so that zeta + eta = 1 holds exactly by construction.
    """

    a: float
    b: float
    zeta: float = 0.5
    eta: float = field(init=False)

    def __post_init__(self):
        for name in ("a", "b", "zeta"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise InvalidParameter("%s must be a finite real, got %r" % (name, v))
        if not 0.0 <= self.zeta <= 1.0:
            raise InvalidParameter("zeta must lie in [0, 1], got %r" % (self.zeta,))
        object.__setattr__(self, "eta", 1.0 - self.zeta)


# ----------------------------------------------------------------------
# homogeneous solutions
# ----------------------------------------------------------------------


class _Homogeneous:
    """Left (u, recessive at -inf) and right (v, outgoing) solutions at momentum k.

    v is normalized to v(0) = 1, v'(0) = ik exactly; u carries an arbitrary
    scale (entire in the energy), which cancels in every Green's-function
    formula through the Wronskian W = ik u(0) - u'(0).
    """

    __slots__ = ("kind", "k", "u0", "up0", "w")

    def __init__(self, kind: ModelKind, k: complex):
        self.kind = kind
        self.k = k
        u0, up0 = self._u_raw(0.0)
        self.u0 = u0
        self.up0 = up0
        self.w = 1j * k * u0 - up0
        scale = abs(1j * k * u0) + abs(up0) + 1e-300
        if abs(self.w) <= _TOL * scale:
            raise SingularEnergy(
                "z = %r is a pole of the free Green's function" % (0.5 * k * k,)
            )

    # left solution, x <= 0 region formulas
    def _u_raw(self, x: float):
        k = self.k
        if isinstance(self.kind, SemiOscillator):
            eps = 0.5 * k * k
            # reciprocal-Gamma weights keep the combination entire in eps
            rg_n = specfun.rgamma((3.0 - 2.0 * eps) / 4.0)
            rg_d = specfun.rgamma((1.0 - 2.0 * eps) / 4.0)
            pair = specfun.pcf_pair(-eps, _SQRT2 * x)
            y1, y1p = pair.y1, _SQRT2 * pair.y1p
            y2, y2p = pair.y2 / _SQRT2, pair.y2p
            return rg_n * y1 + 2.0 * rg_d * y2, rg_n * y1p + 2.0 * rg_d * y2p
        ell = self.kind.length_scale
        eps = (ell * k) ** 2
        t = -x / ell - eps
        v = specfun.airy(t)
        return v.ai, -v.aip / ell

    def u(self, x: float):
        """(u, u') at any x; free-side continuation for x > 0."""
        if x <= 0.0:
            return self._u_raw(x)
        return _free_extend(self.u0, self.up0, self.k, x)

    def v(self, x: float):
        """(v, v') at any x; Airy/parabolic continuation for x < 0."""
        k = self.k
        if x >= 0.0:
            e = cmath.exp(1j * k * x)
            return e, 1j * k * e
        if isinstance(self.kind, SemiOscillator):
            eps = 0.5 * k * k
            pair = specfun.pcf_pair(-eps, _SQRT2 * x)
            y1, y1p = pair.y1, _SQRT2 * pair.y1p
            y2, y2p = pair.y2 / _SQRT2, pair.y2p
            return y1 + 1j * k * y2, y1p + 1j * k * y2p
        ell = self.kind.length_scale
        eps = (ell * k) ** 2
        ks = ell * k
        at0 = specfun.airy(-eps)
        c_a = math.pi * (at0.bip + 1j * ks * at0.bi)
        c_b = -math.pi * (at0.aip + 1j * ks * at0.ai)
        t = -x / ell - eps
        at = specfun.airy(t)
        val = c_a * at.ai + c_b * at.bi
        der = -(c_a * at.aip + c_b * at.bip) / ell
        return val, der

    def g0(self, x: float, xp: float) -> complex:
        lo, hi = (x, xp) if x <= xp else (xp, x)
        ul, _ = self.u(lo)
        vh, _ = self.v(hi)
        return -2.0 * ul * vh / self.w


def _free_extend(val0, der0, k, x):
    # continuation through the potential-free side: val0*cos(kx) + der0*sin(kx)/k
    kx = k * x
    c = cmath.cos(kx)
    s = cmath.sin(kx)
    if abs(kx) > 1e-6:
        sk = s / k
    else:
        sk = x * (1.0 - kx * kx / 6.0)
    return val0 * c + der0 * sk, -val0 * k * s + der0 * c


# ----------------------------------------------------------------------
# corner data and coefficient algebra
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GreensCornerData:
    """One-sided origin limits of G0 and its partials.

    The first-derivative limits jump by -2 across the diagonal and the
    second-derivative limits by +2 (limits taken along the off-diagonal
    argument, the orientation in which they feed the perturbation algebra);
    the mixed partial is continuous, all four quadrant values coincide.
    """

    g00: complex
    g1_0p: complex
    g1_0m: complex
    g2_0p: complex
    g2_0m: complex
    g12_pp: complex
    g12_pm: complex
    g12_mp: complex
    g12_mm: complex


def corner_data_at_k(kind: ModelKind, k: complex) -> GreensCornerData:
    h = _Homogeneous(kind, k)
    return _corner_from(h)


def _corner_from(h: _Homogeneous) -> GreensCornerData:
    two_w = -2.0 / h.w
    ik = 1j * h.k
    g00 = two_w * h.u0
    g1_0p = two_w * h.u0 * ik
    g1_0m = two_w * h.up0
    g12 = two_w * h.up0 * ik
    return GreensCornerData(
        g00=g00,
        g1_0p=g1_0p,
        g1_0m=g1_0m,
        g2_0p=g1_0m,
        g2_0m=g1_0p,
        g12_pp=g12,
        g12_pm=g12,
        g12_mp=g12,
        g12_mm=g12,
    )


@dataclass(frozen=True)
class CoefficientSet:
    """Closure coefficients of the perturbed-kernel algebra.

    A..F and delta come from the 2x2 system for the one-sided first
    derivatives; lam (with lam1, lam2) closes the boundary value itself;
    alpha1..alpha3 are the assembled weights of the final kernel expansion.
    delta equals the determinant AE - BD identically.
    """

    A: complex
    B: complex
    C: complex
    D: complex
    E: complex
    F: complex
    delta: complex
    lam: complex
    lam1: complex
    lam2: complex
    alpha1: complex
    alpha2: complex
    alpha3: complex


def coefficient_set(cd: GreensCornerData, pi: PointInteraction) -> CoefficientSet:
    """Evaluate the closure coefficients literally from the corner data.

    zeta + eta = 1 is guaranteed by construction but never substituted here,
    so every line matches the defining algebra one to one.
    """
    a, b, zeta, eta = pi.a, pi.b, pi.zeta, pi.eta
    A = 1.0 - b * zeta * cd.g1_0p
    B = -b * eta * cd.g1_0p
    C = (zeta + eta) * (b * cd.g12_pm - a * cd.g1_0p)
    D = -b * zeta * cd.g1_0m
    E = 1.0 - b * eta * cd.g1_0m
    F = (zeta + eta) * (b * cd.g12_mp - a * cd.g1_0m)
    delta = 1.0 - b * (zeta * cd.g1_0p + eta * cd.g1_0m)
    if abs(delta) < _TOL * (1.0 + abs(b) * (abs(cd.g1_0p) + abs(cd.g1_0m))):
        raise DegenerateDelta("closure determinant vanishes (b near a critical value)")
    ec_bf = E * C - B * F
    af_dc = A * F - D * C
    lam = (
        1.0
        - (b * (zeta * cd.g2_0p + eta * cd.g2_0m) - a * (zeta + eta) * cd.g00)
        - b * (cd.g00 / delta) * (eta * af_dc + zeta * ec_bf)
    )
    lam1 = b * (cd.g00 / delta) * (eta * A - zeta * B)
    lam2 = b * (cd.g00 / delta) * (zeta * E - eta * D)
    alpha1 = (a * delta * (zeta + eta) - b * (zeta * ec_bf + eta * af_dc)) / delta
    alpha2 = (
        b * (zeta * (-B * lam + ec_bf * lam1) + eta * (A * lam + af_dc * lam1))
        - a * delta * lam1 * (zeta + eta)
    ) / delta
    alpha3 = (
        b * (zeta * (E * lam + ec_bf * lam2) - eta * (D * lam - af_dc * lam2))
        - a * delta * lam2 * (zeta + eta)
    ) / delta
    return CoefficientSet(
        A=A, B=B, C=C, D=D, E=E, F=F, delta=delta,
        lam=lam, lam1=lam1, lam2=lam2,
        alpha1=alpha1, alpha2=alpha2, alpha3=alpha3,
    )


def _lambda_scale(cd: GreensCornerData, cs: CoefficientSet, pi: PointInteraction) -> float:
    return (
        1.0
        + abs(pi.b) * (abs(cd.g2_0p) + abs(cd.g2_0m))
        + abs(pi.a * cd.g00)
        + abs(cs.lam1)
        + abs(cs.lam2)
    )


# ----------------------------------------------------------------------
# free and perturbed kernels
# ----------------------------------------------------------------------


def g0_at_k(kind: ModelKind, x: float, xp: float, k: complex) -> complex:
    """Free kernel G0(x, x') at momentum k."""
    return _Homogeneous(kind, require_finite(k, "k")).g0(float(x), float(xp))


def g0_oscillator(x: float, xp: float, z, sheet=PHYSICAL_SHEET) -> complex:
    """Free kernel of the semi-oscillator at energy z."""
    return g0_at_k(OSCILLATOR, x, xp, momentum_from_energy(z, sheet))


def g0_linear(x: float, xp: float, z, field_strength: float, sheet=PHYSICAL_SHEET) -> complex:
    """Free kernel of the semi-linear model at energy z (physical coordinates)."""
    kind = SemiLinear(field_strength)
    return g0_at_k(kind, x, xp, momentum_from_energy(z, sheet))


def corner_data(kind: ModelKind, z, sheet=PHYSICAL_SHEET) -> GreensCornerData:
    """Analytic origin-limit data at energy z (no numerical limits taken)."""
    return corner_data_at_k(kind, momentum_from_energy(z, sheet))


def _g0_pieces(h: _Homogeneous, x: float, xp: float):
    """G0(x,x'), G0(x,0), d2 G0(x,0), G0(0,x'), d1 G0(0,x') for x, x' != 0."""
    two_w = -2.0 / h.w
    ik = 1j * h.k
    g0_xxp = h.g0(x, xp)
    if x > 0.0:
        vx, _ = h.v(x)
        g0_x0 = two_w * h.u0 * vx
        g2_x0 = two_w * h.up0 * vx
    else:
        ux, _ = h.u(x)
        g0_x0 = two_w * ux
        g2_x0 = two_w * ux * ik
    if xp > 0.0:
        vxp, _ = h.v(xp)
        g0_0xp = two_w * h.u0 * vxp
        g1_0xp = two_w * h.up0 * vxp
    else:
        uxp, _ = h.u(xp)
        g0_0xp = two_w * uxp
        g1_0xp = two_w * uxp * ik
    return g0_xxp, g0_x0, g2_x0, g0_0xp, g1_0xp


def full_green_at_k(kind: ModelKind, pi: PointInteraction, x: float, xp: float, k: complex) -> complex:
    """Perturbed kernel G(x, x'; z(k)); reduces to G0 at a = b = 0."""
    x = float(x)
    xp = float(xp)
    if x == 0.0 or xp == 0.0:
        raise InvalidParameter("use boundary_limits_at_k for the one-sided x = 0 data")
    h = _Homogeneous(kind, require_finite(k, "k"))
    cd = _corner_from(h)
    cs = coefficient_set(cd, pi)
    if abs(cs.lam) < _TOL * _lambda_scale(cd, cs, pi):
        raise PoleOfGreen("z = %r is a pole of the perturbed Green's function" % (0.5 * k * k,))
    g0_xxp, g0_x0, g2_x0, g0_0xp, g1_0xp = _g0_pieces(h, x, xp)
    b = pi.b
    return (
        g0_xxp
        - (cs.alpha1 / cs.lam) * g0_x0 * g0_0xp
        + ((cs.alpha2 + cs.alpha3) / cs.lam) * g0_x0 * g1_0xp
        + (b / cs.lam) * g2_x0 * (g0_0xp + (cs.lam1 + cs.lam2) * g1_0xp)
    )


def full_green(kind: ModelKind, pi: PointInteraction, x: float, xp: float, z,
               sheet=PHYSICAL_SHEET) -> complex:
    """Perturbed kernel at energy z on the requested sheet."""
    return full_green_at_k(kind, pi, x, xp, momentum_from_energy(z, sheet))


@dataclass(frozen=True)
class BoundaryLimits:
    """One-sided x -> 0 data of the perturbed kernel at fixed source x'."""

    g_plus: complex
    g_minus: complex
    g1_plus: complex
    g1_minus: complex


def boundary_limits_at_k(kind: ModelKind, pi: PointInteraction, xp: float, k: complex) -> BoundaryLimits:
    """G(0+,x'), G(0-,x'), and the one-sided first derivatives."""
    xp = float(xp)
    if xp == 0.0:
        raise InvalidParameter("source point must be off the origin")
    h = _Homogeneous(kind, require_finite(k, "k"))
    cd = _corner_from(h)
    cs = coefficient_set(cd, pi)
    if abs(cs.lam) < _TOL * _lambda_scale(cd, cs, pi):
        raise PoleOfGreen("z = %r is a pole of the perturbed Green's function" % (0.5 * k * k,))
    _, _, _, g0_0xp, g1_0xp = _g0_pieces(h, 1.0, xp)
    a, b, zeta, eta = pi.a, pi.b, pi.zeta, pi.eta
    g_hat1 = zeta * cd.g1_0p + eta * cd.g1_0m
    s = (g0_0xp + (b * cd.g00 / cs.delta) * g1_0xp) / cs.lam
    sp = (g1_0xp + (b * cd.g12_pp - a * g_hat1) * s) / cs.delta
    return BoundaryLimits(
        g_plus=g0_0xp + (b * cd.g2_0p - a * cd.g00) * s + b * cd.g00 * sp,
        g_minus=g0_0xp + (b * cd.g2_0m - a * cd.g00) * s + b * cd.g00 * sp,
        g1_plus=g1_0xp + (b * cd.g12_pp - a * cd.g1_0p) * s + b * cd.g1_0p * sp,
        g1_minus=g1_0xp + (b * cd.g12_pp - a * cd.g1_0m) * s + b * cd.g1_0m * sp,
    )
