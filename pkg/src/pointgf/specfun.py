"""Complex-argument special functions behind the closed-form Green's functions.

Scalar double-precision building blocks:

* ``gamma_complex`` -- Lanczos approximation (Godfrey's g = 607/128, N = 15
  coefficient set) with the reflection formula for Re z < 1/2.
* ``airy`` -- Maclaurin series for |z| <= 8 (DLMF 9.4), asymptotic
  expansions beyond (DLMF 9.7) with sector rotation identities for Stokes
  handling (DLMF 9.2.10-9.2.12).
* ``pcf_pair`` -- the even/odd standard solutions y1, y2 of
  w'' = (x^2/4 + a) w with y1(a,0)=1, y1'(a,0)=0, y2(a,0)=0, y2'(a,0)=1
  (Abramowitz & Stegun ch. 19 normalization), by Taylor recurrence.
* ``g_ratio`` -- the Gamma ratio Gamma((3-2e)/4) / Gamma((1-2e)/4) that is
  the logarithmic-derivative generator of the half-oscillator problem.

Everything accepts complex arguments: the resonance search continues all of
these off the real axis.  Pure functions, safe for concurrent use.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import PoleOfGamma, RatioPole, WorkingRangeExceeded
from .kplane import require_finite

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_SQRT3 = math.sqrt(3.0)

# Godfrey's Lanczos coefficients, g = 607/128, N = 15; relative error
# ~ 1e-15 over the right half plane in double precision.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_POLE_TOL = 1e-14


def _near_nonpositive_integer(z: complex) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= _POLE_TOL and abs(z.imag) <= _POLE_TOL


def _lanczos_sum(z: complex) -> complex:
    s = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[i] / (z + i)
    return s


def gamma_complex(z) -> complex:
    """Gamma(z) for complex z, relative error <~ 1e-13 for |z| <= 50.

    Raises ``PoleOfGamma`` within 1e-14 of a non-positive integer.
    """
    z = require_finite(z, "z")
    if _near_nonpositive_integer(z):
        raise PoleOfGamma("Gamma pole at z = %r" % (z,))
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    w = z - 1.0
    t = w + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (w + 0.5) * cmath.exp(-t) * _lanczos_sum(w)


def rgamma(z) -> complex:
    """1/Gamma(z); entire, returns 0 at the poles of Gamma."""
    z = require_finite(z, "z")
    if z.real < 0.5:
        if _near_nonpositive_integer(z):
            return 0.0 + 0.0j
        # sin(pi z) Gamma(1-z) / pi, no pole anywhere on this branch
        return cmath.sin(math.pi * z) * gamma_complex(1.0 - z) / math.pi
    return 1.0 / gamma_complex(z)


def g_ratio(eps) -> complex:
    """Gamma((3-2e)/4) / Gamma((1-2e)/4).

    Zeros (denominator poles, at e = 1/2 + 2m) are returned as exact 0;
    numerator poles (e = 3/2 + 2m) raise ``RatioPole``.  The two argument
    lattices never coincide.
    """
    eps = require_finite(eps, "eps")
    w_num = (3.0 - 2.0 * eps) / 4.0
    w_den = (1.0 - 2.0 * eps) / 4.0
    if _near_nonpositive_integer(w_num):
        raise RatioPole("Gamma-ratio pole at eps = %r" % (eps,))
    if _near_nonpositive_integer(w_den):
        return 0.0 + 0.0j
    return gamma_complex(w_num) * rgamma(w_den)


# ----------------------------------------------------------------------
# Airy functions
# ----------------------------------------------------------------------

#: crossover radius between Maclaurin series and asymptotic expansions
AIRY_SERIES_RADIUS = 8.0

_AI0 = 0.35502805388781723926  # Ai(0)  = 3^(-2/3)/Gamma(2/3)
_AIP0 = 0.25881940379280679841  # -Ai'(0) = 3^(-1/3)/Gamma(1/3)
_TWO_THIRDS_SECTOR = 2.0 * math.pi / 3.0 + 1e-12
_E_PLUS = complex(-0.5, 0.5 * _SQRT3)    # exp(+2 pi i/3)
_E_MINUS = complex(-0.5, -0.5 * _SQRT3)  # exp(-2 pi i/3)


@dataclass(frozen=True)
class AiryValues:
    """Ai, Ai', Bi, Bi' at one point."""

    ai: complex
    aip: complex
    bi: complex
    bip: complex


def _taylor_step(z0: complex, h: complex, w: complex, wp: complex):
    # one Taylor step for w'' = z w about z0: (m+2)(m+1) c_{m+2} = z0 c_m + c_{m-1}
    c = [w, wp]
    val = w + wp * h
    der = wp
    hpow = h  # h^(m-1) entering iteration m
    calm = 0
    for m in range(2, 120):
        cm = (z0 * c[m - 2] + (c[m - 3] if m >= 3 else 0.0 + 0.0j)) / (m * (m - 1))
        c.append(cm)
        der += m * cm * hpow
        hpow *= h
        val += cm * hpow
        if abs(cm * hpow) + abs(m * cm * hpow) <= 1e-18 * (abs(val) + abs(der) + 1e-300):
            calm += 1
            if calm >= 2:
                break
        else:
            calm = 0
    return val, der


def _taylor_march(z0: complex, z1: complex, w: complex, wp: complex):
    """Advance a solution of w'' = z w from z0 to z1 by Taylor steps.

    Only used to carry a recessive solution inward (toward smaller Re zeta),
    the direction in which it grows, so the propagation is stable.
    """
    z = z0
    total = abs(z1 - z0)
    if total == 0.0:
        return w, wp
    direction = (z1 - z0) / total
    travelled = 0.0
    while travelled < total:
        h_mag = min(total - travelled, 1.5 / math.sqrt(max(1.0, abs(z))))
        h = direction * h_mag
        w, wp = _taylor_step(z, h, w, wp)
        z = z + h
        travelled += h_mag
    return w, wp


def _airy_series(z: complex) -> AiryValues:
    # f, g and their derivatives; term recurrences in z^3
    z3 = z * z * z
    f = tf = 1.0 + 0.0j
    g = tg = z
    gp = tgp = 1.0 + 0.0j
    fp = 0.0 + 0.0j
    tfp = 0.0 + 0.0j
    peak = 1.0 + abs(z)
    k = 0
    while True:
        k += 1
        tf *= z3 / ((3 * k) * (3 * k - 1))
        tg *= z3 / ((3 * k + 1) * (3 * k))
        tgp *= z3 / ((3 * k) * (3 * k - 2))
        if k == 1:
            tfp = 0.5 * z * z
        else:
            tfp *= z3 / ((3 * k - 1) * (3 * k - 3))
        f += tf
        g += tg
        fp += tfp
        gp += tgp
        mag = abs(tf) + abs(tg) + abs(tfp) + abs(tgp)
        if mag > peak:
            peak = mag
        if k > 4 and mag <= 1e-17 * (abs(f) + abs(g) + abs(fp) + abs(gp)):
            break
        if k > 220:  # |z| <= 8 converges far earlier
            break
    ai = _AI0 * f - _AIP0 * g
    aip = _AI0 * fp - _AIP0 * gp
    bi = _SQRT3 * (_AI0 * f + _AIP0 * g)
    bip = _SQRT3 * (_AI0 * fp + _AIP0 * gp)
    # cancellation estimate: recessive members lose digits both to the final
    # f/g combination and to intermediate term growth (peak)
    big = _AI0 * (abs(f) + abs(fp)) + _AIP0 * (abs(g) + abs(gp)) + 0.4 * peak
    cond_ai = big / (abs(ai) + abs(aip) + 1e-300)
    cond_bi = _SQRT3 * big / (abs(bi) + abs(bip) + 1e-300)
    return AiryValues(ai, aip, bi, bip), cond_ai, cond_bi


def _airy_asymptotic_recessive(z: complex):
    # DLMF 9.7.5/9.7.6, valid |arg z| < pi, used for |arg z| <= 2 pi/3
    zeta = (2.0 / 3.0) * z * cmath.sqrt(z)
    root4 = z ** 0.25
    su = sv = 1.0 + 0.0j
    u = v = 1.0
    term_prev = 1.0
    sign = 1.0
    k = 0
    while k < 60:
        k += 1
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        v = u * (6 * k + 1) / (1 - 6 * k)
        sign = -sign
        zk = zeta ** (-k)
        tu = u * zk
        if abs(tu) > term_prev:  # optimal truncation reached
            break
        term_prev = abs(tu)
        su += sign * tu
        sv += sign * v * zk
        if abs(tu) <= 1e-18 * abs(su):
            break
    pref = cmath.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    ai = pref * su / root4
    aip = -pref * root4 * sv
    return ai, aip


def _airy_ai_any(z: complex):
    """Ai, Ai' for |z| > series radius, any sector, via rotation identities."""
    if abs(cmath.phase(z)) <= _TWO_THIRDS_SECTOR:
        return _airy_asymptotic_recessive(z)
    a_p, ap_p = _airy_ai_any(z * _E_PLUS)
    a_m, ap_m = _airy_ai_any(z * _E_MINUS)
    # Ai(z) + e^{-2pi i/3} Ai(z e^{-2pi i/3}) + e^{+2pi i/3} Ai(z e^{+2pi i/3}) = 0
    ai = -(_E_MINUS * a_m + _E_PLUS * a_p)
    aip = -(_E_PLUS * ap_m + _E_MINUS * ap_p)
    return ai, aip


_COND_LIMIT = 1e3  # series result re-derived once cancellation passes this
_SEED_RADIUS = 12.5


def _airy_large(z: complex) -> AiryValues:
    ai, aip = _airy_ai_any(z)
    a_p, ap_p = _airy_ai_any(z * _E_PLUS)
    a_m, ap_m = _airy_ai_any(z * _E_MINUS)
    # Bi(z) = e^{i pi/6} Ai(z e^{2pi i/3}) + e^{-i pi/6} Ai(z e^{-2pi i/3})
    ph6 = cmath.exp(1j * math.pi / 6.0)
    ph56 = cmath.exp(1j * 5.0 * math.pi / 6.0)
    bi = ph6 * a_p + a_m / ph6
    bip = ph56 * ap_p + ap_m / ph56
    return AiryValues(ai, aip, bi, bip)


def airy(z) -> AiryValues:
    """Ai(z), Ai'(z), Bi(z), Bi'(z) for complex z.

    Maclaurin series for |z| <= 8, asymptotic expansions with sector
    rotations beyond.  Whenever the series combination cancels badly (the
    requested member is recessive on its ray), that member is recomputed by
    an asymptotic seed at |z| = 12.5 marched inward by Taylor steps, which
    keeps the relative error <= ~1e-10 for |z| <= 20.
    """
    z = require_finite(z, "z")
    if abs(z) > AIRY_SERIES_RADIUS:
        return _airy_large(z)
    vals, cond_ai, cond_bi = _airy_series(z)
    if max(cond_ai, cond_bi) <= _COND_LIMIT or abs(z) < 2.0:
        return vals
    seed_z = z * (_SEED_RADIUS / abs(z))
    seed = _airy_large(seed_z)
    ai, aip, bi, bip = vals.ai, vals.aip, vals.bi, vals.bip
    if cond_ai > _COND_LIMIT:
        ai, aip = _taylor_march(seed_z, z, seed.ai, seed.aip)
    if cond_bi > _COND_LIMIT:
        bi, bip = _taylor_march(seed_z, z, seed.bi, seed.bip)
    return AiryValues(ai, aip, bi, bip)


def ci_combo(z, sign) -> tuple[complex, complex]:
    """Ci^{+-}(z) = Ai(z) +- i Bi(z) and its derivative."""
    if sign in (+1, "+", "plus"):
        s = 1.0
    elif sign in (-1, "-", "minus"):
        s = -1.0
    else:
        raise ValueError("sign must be +1 or -1, got %r" % (sign,))
    v = airy(z)
    return v.ai + 1j * s * v.bi, v.aip + 1j * s * v.bip


# ----------------------------------------------------------------------
# Parabolic cylinder pair
# ----------------------------------------------------------------------

PCF_MAX_X = 40.0


@dataclass(frozen=True)
class PcfPair:
    """Even/odd pair (values and x-derivatives) at one point.

    Constant Wronskian: y1*y2p - y1p*y2 = 1.
    """

    y1: complex
    y1p: complex
    y2: complex
    y2p: complex

    def wronskian(self) -> complex:
        return self.y1 * self.y2p - self.y1p * self.y2


def _pcf_sum(a: complex, x: float, odd: bool):
    # terms t_n = c_n x^n, u_n = n c_n x^(n-1) with
    # n(n-1) c_n = a c_{n-2} + (1/4) c_{n-4}
    x2 = x * x
    ax2 = a * x2
    ax = a * x
    qx4 = 0.25 * x2 * x2
    qx3 = 0.25 * x2 * x
    if odd:
        n, t, u = 1, complex(x), 1.0 + 0.0j
    else:
        n, t, u = 0, 1.0 + 0.0j, 0.0 + 0.0j
    w, wp = t, u
    t_back = 0.0 + 0.0j  # t_{n-2} relative to the next update
    hump = 0.5 * x2 + math.sqrt(abs(a)) * abs(x) + 8.0
    small = 0
    while n < 20000:
        n += 2
        t_new = (ax2 * t + qx4 * t_back) / (n * (n - 1))
        u_new = (ax * t + qx3 * t_back) / (n - 1)
        w += t_new
        wp += u_new
        t_back, t = t, t_new
        if n > hump:
            if abs(t_new) + abs(u_new) <= 1e-17 * (abs(w) + abs(wp) + 1e-300):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
    return w, wp


def pcf_pair(a, x: float) -> PcfPair:
    """Even/odd solutions of w'' = (x^2/4 + a) w at real x, complex a.

    Taylor recurrence about the origin; working range |x| <= 40 (the pair
    itself is dominant there, so the summation is well conditioned).
    """
    a = require_finite(a, "a")
    x = float(x)
    if not math.isfinite(x):
        raise WorkingRangeExceeded("x must be finite")
    if abs(x) > PCF_MAX_X:
        raise WorkingRangeExceeded("|x| = %g beyond working range %g" % (abs(x), PCF_MAX_X))
    y1, y1p = _pcf_sum(a, x, odd=False)
    y2, y2p = _pcf_sum(a, x, odd=True)
    return PcfPair(y1, y1p, y2, y2p)
