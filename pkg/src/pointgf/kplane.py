"""Momentum-plane conventions.

All root finding happens in the complex momentum k, where the Green's
functions are single valued; energy is z = k^2/2 (hbar = m = 1, free side
x > 0).  The physical sheet is Im k >= 0 (bound states on the positive
imaginary axis), the second sheet is Im k < 0 (resonances and antibound
states).  Sheets are a classification of k, never a computation.
"""

from __future__ import annotations

import cmath
import math

from .errors import InvalidParameter

PHYSICAL_SHEET = "physical"
SECOND_SHEET = "second"

#: classification labels for located poles
BOUND = "bound"
ANTIBOUND = "antibound"
RESONANCE = "resonance"
VIRTUAL_PAIR_MEMBER = "virtual-pair-member"


def require_finite(value, name="value"):
    """Reject NaN/Inf components on any scalar input."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidParameter("%s must be finite, got %r" % (name, value))
    return z


def momentum_from_energy(z, sheet=PHYSICAL_SHEET):
    """Map energy z to momentum k = sqrt(2 z) on the requested sheet.

    Physical sheet: Im k >= 0 (for real z > 0 the outgoing limit k > 0).
    Second sheet: k -> -k of the physical determination, so a resonance
    energy E0 - i*Gamma/2 lands in the fourth quadrant of the k plane.
    """
    z = require_finite(z, "energy")
    k = cmath.sqrt(2.0 * z)
    if k.imag < 0.0:
        k = -k
    if sheet == PHYSICAL_SHEET:
        return k
    if sheet == SECOND_SHEET:
        return -k
    raise InvalidParameter("unknown sheet %r" % (sheet,))


def energy_from_momentum(k):
    """z = k^2/2; single valued, no sheet needed."""
    k = require_finite(k, "momentum")
    return 0.5 * k * k


def classify_momentum(k, axis_tol=1e-9):
    """Classify a pole position in the k plane.

    bound: positive imaginary axis; antibound: negative imaginary axis;
    resonance: lower half plane with Re k > 0; the mirror partner at -conj(k)
    (Re k < 0) is tagged as the other member of the resonance pair.
    """
    k = complex(k)
    tol = axis_tol * max(1.0, abs(k))
    on_axis = abs(k.real) <= tol
    if on_axis:
        return BOUND if k.imag >= 0.0 else ANTIBOUND
    if k.real > 0.0:
        return RESONANCE
    return VIRTUAL_PAIR_MEMBER


def lifetime_data(k):
    """(E0, Gamma, tau) for a pole momentum, with tau = inf at Gamma <= 0."""
    z = energy_from_momentum(k)
    e0 = z.real
    gamma = -2.0 * z.imag
    tau = 1.0 / gamma if gamma > 0.0 else math.inf
    return e0, gamma, tau
