"""Independent cross-validation by direct ODE integration.

Nothing here touches a closed-form special function: the half-line problem
psi'' = 2 (V0(x) - z) psi is integrated with an adaptive Dormand-Prince 5(4)
pair, started deep in the classically forbidden region with the WKB-decaying
slope.  ``shoot_logderiv`` returns psi'(0)/psi(0) of the recessive solution;
``vp_green`` builds the Green's function from two integrated solutions and
their Wronskian (variation of parameters).  Renormalization keeps the
exponentially growing magnitudes in range; only ratios are ever reported, so
the scale bookkeeping cancels.

Complex energies are integrated along the real axis; agreement with the
closed forms is validated for |Im z| <= 0.5 (no contour rotation done).
"""

from __future__ import annotations

import cmath
import math

from .errors import BlowUp, StiffnessFailure
from .greens import ModelKind, SemiLinear, SemiOscillator
from .kplane import PHYSICAL_SHEET, momentum_from_energy, require_finite

# Dormand-Prince RK5(4) tableau
_DP_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_DP_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0)
_DP_B4 = (
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
)

_RENORM_HI = 1e6
_RENORM_LO = 1e-6


def _potential(kind: ModelKind):
    if isinstance(kind, SemiOscillator):
        return lambda x: 0.5 * x * x if x < 0.0 else 0.0
    f_str = kind.field_strength
    return lambda x: -f_str * x if x < 0.0 else 0.0


def _integrate(kind: ModelKind, z: complex, x0: float, targets, y, rtol=1e-10, atol=1e-13):
    """March (psi, psi') from x0 through the sorted target points.

    Returns [(y_at_target, log_scale_at_target)] where the true solution is
    y * exp(log_scale); renormalization keeps |y| within [1e-6, 1e6].
    """
    v_of = _potential(kind)

    def f(x, yv):
        return (yv[1], 2.0 * (v_of(x) - z) * yv[0])

    out = []
    log_scale = 0.0
    x = x0
    span = abs(targets[-1] - x0) or 1.0
    h = span / 200.0
    renorms = 0
    for xt in targets:
        direction = 1.0 if xt >= x else -1.0
        while (xt - x) * direction > 1e-14 * span:
            h = min(abs(h), abs(xt - x)) * direction
            ks = []
            for i in range(7):
                xi = x + _DP_C[i] * h
                yi0, yi1 = y
                for j, aij in enumerate(_DP_A[i]):
                    yi0 = yi0 + h * aij * ks[j][0]
                    yi1 = yi1 + h * aij * ks[j][1]
                ks.append(f(xi, (yi0, yi1)))
            y5 = (
                y[0] + h * sum(b * kk[0] for b, kk in zip(_DP_B5, ks)),
                y[1] + h * sum(b * kk[1] for b, kk in zip(_DP_B5, ks)),
            )
            y4 = (
                y[0] + h * sum(b * kk[0] for b, kk in zip(_DP_B4, ks)),
                y[1] + h * sum(b * kk[1] for b, kk in zip(_DP_B4, ks)),
            )
            scale = max(abs(y5[0]) + abs(y5[1]), abs(y[0]) + abs(y[1]), atol)
            err = (abs(y5[0] - y4[0]) + abs(y5[1] - y4[1])) / (rtol * scale + atol)
            if err <= 1.0:
            # accept
                x += h
                y = y5
                mag = abs(y[0]) + abs(y[1])
                if mag > _RENORM_HI or (0.0 < mag < _RENORM_LO):
                    y = (y[0] / mag, y[1] / mag)
                    log_scale += math.log(mag)
                    renorms += 1
                    if renorms > 100000:
                        raise BlowUp("renormalization runaway")
            grow = 0.9 * err ** -0.2 if err > 0.0 else 5.0
            h = h * min(5.0, max(0.2, grow))
            if abs(h) < 1e-14 * span:
                raise StiffnessFailure("step size underflow at x = %g" % (x,))
        out.append((y, log_scale))
    return out


def _forbidden_start(kind: ModelKind, z: complex) -> float:
    # deep enough that 2 V0(x_min) dominates 2|z| comfortably
    if isinstance(kind, SemiOscillator):
        return -max(8.0, math.sqrt(2.0 * abs(z)) + 4.0)
    return -max(8.0, (abs(z) + 8.0) / kind.field_strength)


def _left_solution(kind: ModelKind, z: complex, x_min: float, targets):
    v_of = _potential(kind)
    kappa = cmath.sqrt(2.0 * v_of(x_min) - 2.0 * z)  # decaying-branch WKB slope
    return _integrate(kind, z, x_min, targets, (1.0 + 0.0j, kappa))


def shoot_logderiv(kind: ModelKind, z, x_min: float | None = None) -> complex:
    """psi'(0)/psi(0) of the solution decaying as x -> -infinity.

    x_min defaults to a depth-doubling search that makes the WKB
    initialization error irrelevant (< 1e-10 relative).
    """
    z = require_finite(z, "z")
    if x_min is not None:
        (yv, _), = _left_solution(kind, z, float(x_min), [0.0])
        return yv[1] / yv[0]
    depth = _forbidden_start(kind, z)
    (yv, _), = _left_solution(kind, z, depth, [0.0])
    best = yv[1] / yv[0]
    for _ in range(3):
        depth *= 1.5
        (yv, _), = _left_solution(kind, z, depth, [0.0])
        nxt = yv[1] / yv[0]
        if abs(nxt - best) <= 1e-10 * max(1.0, abs(nxt)):
            return nxt
        best = nxt
    return best


def vp_green(kind: ModelKind, z, x: float, xp: float, sheet=PHYSICAL_SHEET) -> complex:
    """Green's function by variation of parameters, jump -2 convention.

    G(x,x') = -2 u(min) v(max) / W with u integrated up from the forbidden
    region, v outgoing (v(0)=1, v'(0)=ik, exp(ikx) on x > 0 where the
    potential vanishes identically).
    """
    z = require_finite(z, "z")
    k = momentum_from_energy(z, sheet)
    x = float(x)
    xp = float(xp)
    lo, hi = (x, xp) if x <= xp else (xp, x)

    # left solution at lo (or its trigonometric continuation for lo > 0)
    x_min = _forbidden_start(kind, z)
    if lo < 0.0:
        (y_lo, ls_lo), (y0, ls0) = _left_solution(kind, z, x_min, [lo, 0.0])
        u_lo = y_lo[0] * cmath.exp(ls_lo - ls0)
    else:
        (y0, ls0), = _left_solution(kind, z, x_min, [0.0])
        kx = k * lo
        sk = cmath.sin(kx) / k if abs(kx) > 1e-6 else lo * (1.0 - kx * kx / 6.0)
        u_lo = y0[0] * cmath.cos(kx) + y0[1] * sk
    w = 1j * k * y0[0] - y0[1]

    # outgoing solution at hi
    if hi >= 0.0:
        v_hi = cmath.exp(1j * k * hi)
    else:
        (yv, ls_v), = _integrate(kind, z, 0.0, [hi], (1.0 + 0.0j, 1j * k))
        v_hi = yv[0] * cmath.exp(ls_v)
    return -2.0 * u_lo * v_hi / w
