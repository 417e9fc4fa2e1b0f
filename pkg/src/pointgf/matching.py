"""Matching conditions at the origin, transmission, and Gamow residues.

The one-sided boundary data of any state of the perturbed Hamiltonian obey

    psi(0+) (1 - 2 b zeta) = psi(0-) (1 + 2 b eta)
    psi'(0+)(1 + 2 b zeta) = 2 a zeta psi(0+) + 2 a eta psi(0-)
                             + (1 - 2 b eta) psi'(0-)

i.e. the lower-triangular connection matrix with entries
(1+2b eta)/(1-2b zeta), 2a/((1-2b zeta)(1+2b zeta)), (1-2b eta)/(1+2b zeta).
At the symmetric weights zeta = eta = 1/2 this is exactly the self-adjoint
extension (Kurasov) matrix.  The matrix degenerates at b = +-1/(2 zeta); for
the symmetric case the surviving constraints pin one side to zero and leave
a Robin condition on the other:

    b = +1:  psi(0-) = 0,  psi'(0+) = +(a/2) psi(0+)
    b = -1:  psi(0+) = 0,  psi'(0-) = -(a/2) psi(0-)

(the side assignment follows from the jump relations above and is confirmed
independently by the residue wave functions and by the b -> +-1 limits of
the matrix).  ``transmission`` scatters a plane wave through the bare point
potential on the free line; ``residue_wavefunction`` extracts Gamow states
from the kernel residues by a Richardson-extrapolated radial limit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DegeneratePole,
    InvalidParameter,
    NotSingularCase,
    ProbeNode,
    SingularB,
)
from .greens import (
    ModelKind,
    PointInteraction,
    boundary_limits_at_k,
    full_green_at_k,
)

_TOL = 1e-13


@dataclass(frozen=True)
class MatchingMatrix:
    """Lower-triangular connection (psi(0+), psi'(0+)) = M (psi(0-), psi'(0-))."""

    m11: float
    m12: float
    m21: float
    m22: float
    singular_case: str | None = None

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, psi: complex, psip: complex) -> tuple[complex, complex]:
        return (
            self.m11 * psi + self.m12 * psip,
            self.m21 * psi + self.m22 * psip,
        )


@dataclass(frozen=True)
class BoundaryPair:
    """Value and derivative of a state on one side of the origin."""

    psi: complex
    psip: complex


def matching_matrix(pi: PointInteraction) -> MatchingMatrix:
    """Connection matrix for generic parameters (b away from +-1/(2 zeta))."""
    b, zeta, eta = pi.b, pi.zeta, pi.eta
    d_minus = 1.0 - 2.0 * b * zeta
    d_plus = 1.0 + 2.0 * b * zeta
    if abs(d_minus) < _TOL * (1.0 + 2.0 * abs(b) * zeta):
        raise SingularB("b = +1/(2 zeta): use singular_case_conditions")
    if abs(d_plus) < _TOL * (1.0 + 2.0 * abs(b) * zeta):
        raise SingularB("b = -1/(2 zeta): use singular_case_conditions")
    return MatchingMatrix(
        m11=(1.0 + 2.0 * b * eta) / d_minus,
        m12=0.0,
        m21=2.0 * pi.a / (d_minus * d_plus),
        m22=(1.0 - 2.0 * b * eta) / d_plus,
    )


def kurasov_matrix(a: float, b: float) -> MatchingMatrix:
    """Self-adjoint-extension matrix of the symmetric case zeta = eta = 1/2."""
    if abs(1.0 - b) < _TOL or abs(1.0 + b) < _TOL:
        raise SingularB("kurasov matrix undefined at b = +-1")
    return MatchingMatrix(
        m11=(1.0 + b) / (1.0 - b),
        m12=0.0,
        m21=2.0 * a / (1.0 - b * b),
        m22=(1.0 - b) / (1.0 + b),
    )


@dataclass(frozen=True)
class SingularCaseConditions:
    """Constraint pair at zeta = eta = 1/2, b = +-1.

    One side of the origin is pinned to zero (``zero_side``); the other
    carries a Robin condition psi'(0 s) = robin_coeff * psi(0 s) with
    s = ``robin_side``.
    """

    b: float
    a: float
    zero_side: str   # 'plus' or 'minus'
    robin_side: str
    robin_coeff: float

    def residuals(self, minus: BoundaryPair, plus: BoundaryPair) -> tuple[float, float]:
        zero = plus if self.zero_side == "plus" else minus
        robin = plus if self.robin_side == "plus" else minus
        return (
            abs(zero.psi),
            abs(robin.psip - self.robin_coeff * robin.psi),
        )

    def satisfied_by(self, minus: BoundaryPair, plus: BoundaryPair, tol: float = 1e-9) -> bool:
        scale = max(abs(minus.psi), abs(plus.psi), abs(minus.psip), abs(plus.psip), 1e-300)
        r0, r1 = self.residuals(minus, plus)
        return r0 <= tol * scale and r1 <= tol * scale * (1.0 + abs(self.robin_coeff))


def singular_case_conditions(pi: PointInteraction) -> SingularCaseConditions:
    """Surviving matching constraints at zeta = eta = 1/2, b = +-1.

    For b = +1 the left value is pinned, psi(0-) = 0, with
    psi'(0+) = +(a/2) psi(0+); for b = -1 the mirrored relations hold.
    """
    if abs(pi.zeta - 0.5) > 1e-12:
        raise NotSingularCase("singular-case relations require zeta = eta = 1/2")
    if abs(pi.b - 1.0) <= 1e-12:
        return SingularCaseConditions(
            b=1.0, a=pi.a, zero_side="minus", robin_side="plus", robin_coeff=+0.5 * pi.a
        )
    if abs(pi.b + 1.0) <= 1e-12:
        return SingularCaseConditions(
            b=-1.0, a=pi.a, zero_side="plus", robin_side="minus", robin_coeff=-0.5 * pi.a
        )
    raise NotSingularCase("b = %r is not a singular value at zeta = 1/2" % (pi.b,))


# ----------------------------------------------------------------------
# transmission through the bare point potential
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Transmission:
    """Plane-wave scattering data through the bare point potential."""

    T: float
    R: float
    t: complex
    r: complex


def transmission(k: float, pi: PointInteraction) -> Transmission:
    """Scatter exp(ikx) through a delta + b delta' on the otherwise free line.

    T + R = 1 exactly when det M = 1 (the symmetric weights); away from that
    locus both are reported without any unitarity assumption.
    """
    if not (isinstance(k, (int, float)) and k > 0.0):
        raise InvalidParameter("transmission needs real k > 0, got %r" % (k,))
    m = matching_matrix(pi)
    ik = 1j * k
    den = ik * (m.m11 + m.m22) - m.m21
    t = 2.0 * ik * m.m11 * m.m22 / den
    r = (ik * (m.m22 - m.m11) + m.m21) / den
    return Transmission(T=abs(t) ** 2, R=abs(r) ** 2, t=t, r=r)


# ----------------------------------------------------------------------
# residue wave functions
# ----------------------------------------------------------------------


def _momentum_near(z: complex, k_ref: complex) -> complex:
    k = cmath.sqrt(2.0 * z)
    return k if abs(k - k_ref) <= abs(k + k_ref) else -k


def _residue_soft(sample, z0: complex, k0: complex, rho: float):
    """lim (z - z0) * sample(k(z)) by 4-angle averages + Richardson in rho.

    Returns (estimate, converged).  Entries without pole content come out at
    roundoff level and fail the convergence test; callers classify them as
    exact zeros by comparing against the live entries of the same state.
    """

    def ring(r):
        acc = 0.0 + 0.0j
        for phase in (1.0, 1j, -1.0, -1j):
            dz = r * phase
            acc += dz * sample(_momentum_near(z0 + dz, k0))
        return acc / 4.0

    # averaging kills rho^1..rho^3 terms; Richardson removes rho^4
    est1 = (16.0 * ring(rho / 2.0) - ring(rho)) / 15.0
    est2 = (16.0 * ring(rho / 4.0) - ring(rho / 2.0)) / 15.0
    converged = abs(est1 - est2) <= 1e-6 * max(abs(est1), abs(est2)) + 1e-280
    return est2, converged


def _residue(sample, z0: complex, k0: complex, rho: float, scale: float):
    est, converged = _residue_soft(sample, z0, k0, rho)
    if converged:
        return est
    if abs(est) <= 1e-6 * scale:
        return 0.0 + 0.0j  # noise next to live entries of the same state
    raise DegeneratePole("residue limit not converging (pole not simple?)")


#: residues below this absolute size are treated as a dead probe
_DEAD_PROBE = 1e-10


def _probe_ladder(probe: float):
    # shifted retries on the same side, then the mirror side: a state that
    # decouples onto one half line has nodes everywhere on the other
    return (probe, probe - 0.37, probe - 0.81, -probe, -probe + 0.53)


def residue_boundary(kind: ModelKind, pi: PointInteraction, pole,
                     probe: float = -0.5) -> tuple[BoundaryPair, BoundaryPair]:
    """Residues of the one-sided boundary data of G(., probe) at the pole.

    Returns (minus, plus) BoundaryPairs proportional to the Gamow state's
    (psi, psi') on each side of the origin.
    """
    k0 = pole.k
    z0 = pole.z
    rho = 1e-3 * max(1.0, abs(z0))
    last_exc = None
    for x0 in _probe_ladder(probe):
        results = []
        for name in ("g_minus", "g_plus", "g1_minus", "g1_plus"):
            results.append(_residue_soft(
                lambda kk, _n=name: getattr(boundary_limits_at_k(kind, pi, x0, kk), _n),
                z0, k0, rho))
        scale = max(abs(est) for est, ok in results if ok) if any(ok for _, ok in results) else 0.0
        if scale < _DEAD_PROBE:
            last_exc = ProbeNode("probe x0 = %g carries no pole content" % (x0,))
            continue
        vals = []
        bad = False
        for est, ok in results:
            if ok:
                vals.append(est)
            elif abs(est) <= 1e-6 * scale:
                vals.append(0.0 + 0.0j)
            else:
                bad = True
                break
        if bad:
            last_exc = DegeneratePole("residue limit not converging (pole not simple?)")
            continue
        return BoundaryPair(vals[0], vals[2]), BoundaryPair(vals[1], vals[3])
    raise last_exc if last_exc is not None else ProbeNode("no usable probe")


def residue_wavefunction(kind: ModelKind, pi: PointInteraction, pole, xs,
                         probe: float = -0.5) -> list[complex]:
    """Gamow state psi(x) from the kernel residue, normalized to psi(0-) = 1.

    psi(x) is proportional to lim (z - z0) G(x, x0; z) at a fixed probe
    x0 < 0; the result is probe independent up to scale (checked on one
    sample).  When psi(0-) vanishes (the b = +1/(2 zeta) decoupling) the
    normalization falls back to psi(0+) = 1.
    """
    k0 = pole.k
    z0 = pole.z
    rho = 1e-3 * max(1.0, abs(z0))
    last_exc = None
    for x0 in _probe_ladder(probe):
        try:
            minus, plus = residue_boundary(kind, pi, pole, probe=x0)
        except (ProbeNode, DegeneratePole) as exc:
            last_exc = exc
            continue
        ref = minus.psi
        if abs(ref) < 1e-9 * max(abs(plus.psi), 1e-300):
            ref = plus.psi
        scale = abs(ref)
        try:
            vals = []
            collision = False
            for x in xs:
                if x == x0:
                    collision = True
                    break
                vals.append(
                    _residue(lambda kk: full_green_at_k(kind, pi, x, x0, kk),
                             z0, k0, rho, scale) / ref
                )
            if collision:
                last_exc = ProbeNode("sample grid collides with probe x0 = %g" % (x0,))
                continue
            # probe independence, up to overall scale, on one off-origin sample
            if xs:
                x_chk = xs[0]
                x2 = x0 - 0.29
                if x2 != x_chk:
                    minus2, plus2 = residue_boundary(kind, pi, pole, probe=x2)
                    ref2 = minus2.psi
                    if abs(ref2) < 1e-9 * max(abs(plus2.psi), 1e-300):
                        ref2 = plus2.psi
                    v1 = _residue(lambda kk: full_green_at_k(kind, pi, x_chk, x0, kk),
                                  z0, k0, rho, scale) / ref
                    v2 = _residue(lambda kk: full_green_at_k(kind, pi, x_chk, x2, kk),
                                  z0, k0, rho, abs(ref2)) / ref2
                    if abs(v1 - v2) > 1e-5 * max(1.0, abs(v1)):
                        raise DegeneratePole("probe-dependent residue (x0 = %g vs %g)" % (x0, x2))
        except (ProbeNode, DegeneratePole) as exc:
            last_exc = exc
            continue
        return vals
    raise last_exc if last_exc is not None else ProbeNode("no usable probe")
