"""Pole conditions in the complex momentum plane and complete root searches.

The compact pole condition of the point-perturbed models is

    i k = [ 2 a + p(z) (1 - 2b + 4 zeta eta b^2) ] / (1 + 2b + 4 zeta eta b^2)

with p(z) = u'(0)/u(0) the logarithmic derivative of the left-recessive
solution: p = 2 g(eps) for the semi-oscillator, p = -Ai'(-eps)/Ai(-eps)
scaled by the ramp length for the semi-linear model, or any user-supplied
provider for other confining tails (V0(0) = 0, V0 -> infinity).

``find_poles`` certifies completeness: an adaptive argument-principle
contour count on the region boundary must agree with the number of
deflated-Newton roots, otherwise ``CountMismatch`` is raised with suggested
subregions.  Root work stays in k; sheets are labels, not computations.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import specfun
from .errors import (
    AiryDenominatorZero,
    ContourThroughZero,
    CountMismatch,
    DegenerateDenominator,
    InvalidParameter,
)
from .greens import ModelKind, PointInteraction, SemiLinear, SemiOscillator
from .kplane import classify_momentum, lifetime_data

_TOL = 1e-13


def _couplings(pi: PointInteraction):
    b = pi.b
    denom = 1.0 + 2.0 * b + 4.0 * pi.zeta * pi.eta * b * b
    numer = 1.0 - 2.0 * b + 4.0 * pi.zeta * pi.eta * b * b
    if abs(denom) < _TOL * (1.0 + 2.0 * abs(b) + 4.0 * b * b):
        raise DegenerateDenominator(
            "1 + 2b + 4*zeta*eta*b^2 = 0 at b = %r (use residual_singular_b)" % (b,)
        )
    return denom, numer


def residual_oscillator(k, pi: PointInteraction) -> complex:
    """F(k) = ik - RHS for the semi-oscillator; roots of F are the poles."""
    k = complex(k)
    denom, numer = _couplings(pi)
    rhs = 2.0 * pi.a / denom
    if numer != 0.0:
        rhs += 2.0 * specfun.g_ratio(0.5 * k * k) * numer / denom
    return 1j * k - rhs


def residual_linear(k, pi: PointInteraction, field_strength: float) -> complex:
    """Pole residual of the semi-linear model in physical momentum."""
    k = complex(k)
    denom, numer = _couplings(pi)
    rhs = 2.0 * pi.a / denom
    if numer != 0.0:
        ell = SemiLinear(field_strength).length_scale
        eps = (ell * k) ** 2
        v = specfun.airy(-eps)
        if abs(v.ai) < 1e-280:
            raise AiryDenominatorZero("Ai(-eps) ~ 0 at k = %r" % (k,))
        rhs += (-v.aip / v.ai / ell) * numer / denom
    return 1j * k - rhs


def residual_general(k, pi: PointInteraction, logderiv) -> complex:
    """Pole residual for any confining left tail, given E -> u'(0,E)/u(0,E)."""
    k = complex(k)
    denom, numer = _couplings(pi)
    rhs = 2.0 * pi.a / denom
    if numer != 0.0:
        rhs += logderiv(0.5 * k * k) * numer / denom
    return 1j * k - rhs


def residual_singular_b(k, pi: PointInteraction, logderiv) -> complex:
    """Pole residual on the degenerate locus 1 + 2b + 4*zeta*eta*b^2 = 0.

    There the compact condition collapses to p(z) = a/(2b): the state decouples
    onto one half line with a Robin condition.
    """
    k = complex(k)
    if pi.b == 0.0:
        raise InvalidParameter("b = 0 is never degenerate")
    return logderiv(0.5 * k * k) - pi.a / (2.0 * pi.b)


def make_residual(kind: ModelKind, pi: PointInteraction):
    """Model dispatch used by searches and the CLI."""
    if isinstance(kind, SemiOscillator):
        return lambda k: residual_oscillator(k, pi)
    f_str = kind.field_strength
    return lambda k: residual_linear(k, pi, f_str)


# ----------------------------------------------------------------------
# search region / located poles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SearchRegion:
    """Rectangle in the k plane with a Newton seed grid (at least 4x4)."""

    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    n_re: int = 24
    n_im: int = 16

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise InvalidParameter("region must satisfy lo < hi on both axes")
        if self.n_re < 4 or self.n_im < 4:
            raise InvalidParameter("seed grid must be at least 4x4")
        for v in (self.re_lo, self.re_hi, self.im_lo, self.im_hi):
            if not math.isfinite(v):
                raise InvalidParameter("region bounds must be finite")

    def contains(self, k: complex, pad: float = 0.0) -> bool:
        return (
            self.re_lo - pad <= k.real <= self.re_hi + pad
            and self.im_lo - pad <= k.imag <= self.im_hi + pad
        )

    def corners(self):
        return (
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        )

    def seeds(self, n_re=None, n_im=None):
        nr = n_re or self.n_re
        ni = n_im or self.n_im
        dr = (self.re_hi - self.re_lo) / nr
        di = (self.im_hi - self.im_lo) / ni
        return [
            complex(self.re_lo + (i + 0.5) * dr, self.im_lo + (j + 0.5) * di)
            for j in range(ni)
            for i in range(nr)
        ]

    def quadrants(self):
        rm = 0.5 * (self.re_lo + self.re_hi)
        im = 0.5 * (self.im_lo + self.im_hi)
        return (
            SearchRegion(self.re_lo, rm, self.im_lo, im, self.n_re, self.n_im),
            SearchRegion(rm, self.re_hi, self.im_lo, im, self.n_re, self.n_im),
            SearchRegion(self.re_lo, rm, im, self.im_hi, self.n_re, self.n_im),
            SearchRegion(rm, self.re_hi, im, self.im_hi, self.n_re, self.n_im),
        )

    def diameter(self) -> float:
        return math.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo)


@dataclass(frozen=True)
class ResonancePole:
    """A located root of the pole residual, with solver metadata."""

    k: complex
    z: complex
    e0: float
    gamma: float
    tau: float
    residual: float
    newton_iters: int
    classification: str
    multiplicity: int = 1


def _make_pole(residual, k: complex, iters: int) -> ResonancePole:
    e0, gamma, tau = lifetime_data(k)
    res = abs(residual(k))
    probe = 1e-3 * max(1.0, abs(k))
    try:
        r1 = abs(residual(k + probe))
        r2 = abs(residual(k + probe / 2.0))
        mult = max(1, round(math.log2(r1 / r2))) if r2 > 0.0 else 1
    except Exception:
        mult = 1
    return ResonancePole(
        k=k,
        z=0.5 * k * k,
        e0=e0,
        gamma=gamma,
        tau=tau,
        residual=res,
        newton_iters=iters,
        classification=classify_momentum(k),
        multiplicity=mult,
    )


# ----------------------------------------------------------------------
# argument principle
# ----------------------------------------------------------------------


def winding_number(residual, region: SearchRegion, boundary_tol: float = 1e-9,
                   max_evals: int = 120_000) -> int:
    """Zeros-minus-poles count inside the region by boundary phase tracking.

    Edges are subdivided until every phase increment is below pi/2; a
    boundary sample with |F| below ``boundary_tol`` (or an unresolvable
    phase jump) raises ``ContourThroughZero``.
    """
    corners = region.corners()
    evals = [0]
    min_seg = 1e-12 * region.diameter()

    def fval(kz):
        evals[0] += 1
        if evals[0] > max_evals:
            raise ContourThroughZero("boundary phase did not stabilize (budget)")
        v = residual(kz)
        if abs(v) < boundary_tol:
            raise ContourThroughZero("residual ~ 0 on the region boundary at %r" % (kz,))
        return v

    total = 0.0
    n_init = 64  # initial uniform split per edge guards against phase aliasing
    for idx in range(4):
        z0, z1 = corners[idx], corners[(idx + 1) % 4]
        nodes = [z0 + (z1 - z0) * (i / n_init) for i in range(n_init)] + [z1]
        fv = [fval(p) for p in nodes]
        stack = [
            (nodes[i], fv[i], nodes[i + 1], fv[i + 1])
            for i in range(n_init - 1, -1, -1)
        ]
        while stack:
            a, fa, b, fb = stack.pop()
            dphi = cmath.phase(fb / fa)
            if abs(dphi) < 0.5 * math.pi and abs(fb - fa) <= 1.5 * min(abs(fa), abs(fb)):
                total += dphi
                continue
            if abs(b - a) < min_seg:
                raise ContourThroughZero("unresolvable phase jump near %r" % (a,))
            mid = 0.5 * (a + b)
            fm = fval(mid)
            stack.append((mid, fm, b, fb))
            stack.append((a, fa, mid, fm))
    w = total / (2.0 * math.pi)
    wi = round(w)
    if abs(w - wi) > 1e-3:
        raise ContourThroughZero("non-integer winding %g" % (w,))
    return wi


# ----------------------------------------------------------------------
# Newton with deflation
# ----------------------------------------------------------------------


def _newton(func, k0: complex, scale: float, max_iter: int = 60):
    k = k0
    for it in range(1, max_iter + 1):
        f0 = func(k)
        h = 1e-7 * max(1.0, abs(k))
        fp = (func(k + h) - func(k - h)) / (2.0 * h)
        if fp == 0.0:
            return None, it
        step = -f0 / fp
        if abs(step) > 0.5 * scale:
            step *= 0.5 * scale / abs(step)
        k = k + step
        if not (math.isfinite(k.real) and math.isfinite(k.imag)):
            return None, it
        if abs(step) <= 1e-13 * max(1.0, abs(k)):
            return k, it
    return None, max_iter


def _newton_sweep(residual, region: SearchRegion, tol: float, seeds, roots, iters):
    pad = 1e-9 * region.diameter()
    scale = region.diameter()

    def deflated(k):
        v = residual(k)
        for r in roots:
            d = k - r
            if abs(d) < 1e-13:
                d = 1e-13
            v = v / d
        return v

    for seed in seeds:
        try:
            cand, its = _newton(deflated, seed, scale)
            if cand is None:
                continue
            # polish on the raw residual
            cand2, its2 = _newton(residual, cand, scale, max_iter=20)
            if cand2 is not None:
                cand, its = cand2, its + its2
        except (DegenerateDenominator, AiryDenominatorZero):
            raise
        except (ArithmeticError, ValueError, OverflowError):
            continue
        except Exception:
            continue
        if not region.contains(cand, pad):
            continue
        if abs(residual(cand)) > tol:
            continue
        if any(abs(cand - r) <= 1e-8 * max(1.0, abs(cand)) for r in roots):
            continue
        roots.append(cand)
        iters.append(its)


def find_poles(residual, region: SearchRegion, tol: float = 1e-10,
               extra_seeds=()) -> list[ResonancePole]:
    """All simple roots of the residual inside the region.

    Grid-seeded Newton with deflation of found roots, then an argument-
    principle certificate: the Newton count must equal the boundary winding
    number.  ``extra_seeds`` (e.g. continuation guesses from a neighbouring
    parameter vertex) are tried first; they can only speed things up, never
    change the certified answer.
    """
    expected = winding_number(residual, region, boundary_tol=10.0 * tol)
    if expected < 0:
        raise CountMismatch(0, expected, region.quadrants())
    roots: list[complex] = []
    iters: list[int] = []
    if expected > 0:
        _newton_sweep(residual, region, tol, list(extra_seeds), roots, iters)
        factor = 1
        while len(roots) < expected and factor <= 4:
            _newton_sweep(
                residual, region, tol,
                region.seeds(region.n_re * factor, region.n_im * factor),
                roots, iters,
            )
            factor *= 2
    if len(roots) != expected:
        raise CountMismatch(len(roots), expected, region.quadrants())
    order = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
    return [_make_pole(residual, roots[i], iters[i]) for i in order]


def min_modulus_grid_search(residual, region: SearchRegion, n_re: int = 400,
                            n_im: int = 400, threshold: float = 0.5,
                            refine_rounds: int = 18) -> list[complex]:
    """Brute-force |F| minima on a dense grid, zoom-refined; Newton-free.

    Independent completeness oracle for ``find_poles``: every interior local
    minimum below ``threshold`` is sharpened by repeated 3x grid zoom.
    """
    dr = (region.re_hi - region.re_lo) / (n_re - 1)
    di = (region.im_hi - region.im_lo) / (n_im - 1)
    vals = [
        [abs(residual(complex(region.re_lo + i * dr, region.im_lo + j * di)))
         for i in range(n_re)]
        for j in range(n_im)
    ]
    minima = []
    for j in range(1, n_im - 1):
        for i in range(1, n_re - 1):
            v = vals[j][i]
            if v >= threshold:
                continue
            neighb = (
                vals[j][i - 1], vals[j][i + 1], vals[j - 1][i], vals[j + 1][i],
                vals[j - 1][i - 1], vals[j - 1][i + 1], vals[j + 1][i - 1], vals[j + 1][i + 1],
            )
            if all(v <= nv for nv in neighb):
                minima.append(complex(region.re_lo + i * dr, region.im_lo + j * di))
    refined = []
    for m in minima:
        c = m
        half_r, half_i = dr, di
        for _ in range(refine_rounds):
            best = (abs(residual(c)), c)
            for jj in range(-4, 5):
                for ii in range(-4, 5):
                    cand = c + complex(ii * half_r / 4.0, jj * half_i / 4.0)
                    fv = abs(residual(cand))
                    if fv < best[0]:
                        best = (fv, cand)
            c = best[1]
            half_r /= 3.0
            half_i /= 3.0
        if not any(abs(c - q) < 1e-6 * max(1.0, abs(c)) for q in refined):
            refined.append(c)
    refined.sort(key=lambda q: (q.real, q.imag))
    return refined


# ----------------------------------------------------------------------
# parameter scans
# ----------------------------------------------------------------------

STATUS_OK = "OK"
STATUS_SINGULAR_B = "SINGULAR_B"
STATUS_COUNT_MISMATCH = "COUNT_MISMATCH"
STATUS_CONTOUR_ZERO = "CONTOUR_ZERO"


@dataclass(frozen=True)
class ScanVertex:
    a: float
    b: float
    zeta: float
    status: str
    poles: tuple[ResonancePole, ...] = ()
    trajectory: tuple[int, ...] = ()


@dataclass(frozen=True)
class PoleTrajectorySet:
    """Per-vertex pole lists with nearest-neighbour trajectory links."""

    model: str
    field_strength: float
    vertices: tuple[ScanVertex, ...]

    def rows(self):
        """Flat rows (a, b, zeta, pole_index, k_re, k_im, residual, status)."""
        out = []
        for v in self.vertices:
            if not v.poles:
                out.append((v.a, v.b, v.zeta, -1, None, None, None, v.status))
                continue
            for traj_id, p in zip(v.trajectory, v.poles):
                out.append((v.a, v.b, v.zeta, traj_id, p.k.real, p.k.imag,
                            p.residual, v.status))
        return out


def _nudged(region: SearchRegion) -> SearchRegion:
    dw = 0.0137 * (region.re_hi - region.re_lo)
    dh = 0.0173 * (region.im_hi - region.im_lo)
    return SearchRegion(
        region.re_lo - dw, region.re_hi + dw,
        region.im_lo - dh, region.im_hi + dh,
        region.n_re, region.n_im,
    )


def _scan_vertex(kind: ModelKind, a: float, b: float, zeta: float,
                 region: SearchRegion, tol: float, seeds=()):
    try:
        pi = PointInteraction(a, b, zeta)
        residual = make_residual(kind, pi)
        poles = find_poles(residual, region, tol, extra_seeds=seeds)
        return STATUS_OK, tuple(poles)
    except DegenerateDenominator:
        return STATUS_SINGULAR_B, ()
    except ContourThroughZero:
        try:
            poles = find_poles(make_residual(kind, PointInteraction(a, b, zeta)),
                               _nudged(region), tol, extra_seeds=seeds)
            return STATUS_OK, tuple(poles)
        except ContourThroughZero:
            return STATUS_CONTOUR_ZERO, ()
        except CountMismatch:
            return STATUS_COUNT_MISMATCH, ()
    except CountMismatch:
        return STATUS_COUNT_MISMATCH, ()


def _scan_vertex_args(args):
    kind, a, b, zeta, region, tol = args
    return _scan_vertex(kind, a, b, zeta, region, tol)


def scan_parameters(kind: ModelKind, grid: dict, region: SearchRegion,
                    tol: float = 1e-10, workers: int = 1) -> PoleTrajectorySet:
    """Pole lists over a cartesian (a, b, zeta) grid with trajectory linking.

    Vertices run in the given list order (a outermost).  With workers > 1
    the vertices are solved in parallel processes and merged back in grid
    order; with a single worker each vertex seeds the next one
    (continuation), which cannot change the certified results, only their
    cost.  Per-vertex failures are recorded in ``status`` and the scan
    continues.
    """
    a_list = list(grid.get("a", [0.0]))
    b_list = list(grid.get("b", [0.0]))
    z_list = list(grid.get("zeta", [0.5]))
    if not (a_list and b_list and z_list):
        raise InvalidParameter("parameter grid must be nonempty")
    params = [(a, b, zt) for a in a_list for b in b_list for zt in z_list]

    results: list[tuple[str, tuple[ResonancePole, ...]]] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            args = [(kind, a, b, zt, region, tol) for (a, b, zt) in params]
            results = list(pool.map(_scan_vertex_args, args))
    else:
        seeds: tuple[complex, ...] = ()
        for (a, b, zt) in params:
            status, poles = _scan_vertex(kind, a, b, zt, region, tol, seeds=seeds)
            results.append((status, poles))
            if poles:
                seeds = tuple(p.k for p in poles)

    vertices = []
    next_id = 0
    prev: list[tuple[int, complex]] = []
    for (a, b, zt), (status, poles) in zip(params, results):
        ids = []
        taken = set()
        for p in poles:
            best = None
            for traj_id, kprev in prev:
                if traj_id in taken:
                    continue
                d = abs(p.k - kprev)
                if best is None or d < best[1]:
                    best = (traj_id, d)
            if best is not None and best[1] <= 0.5 * max(1.0, abs(p.k)):
                ids.append(best[0])
                taken.add(best[0])
            else:
                ids.append(next_id)
                next_id += 1
        vertices.append(ScanVertex(a, b, zt, status, poles, tuple(ids)))
        if poles:
            prev = list(zip(ids, (p.k for p in poles)))
    model = "oscillator" if isinstance(kind, SemiOscillator) else "linear"
    f_str = 0.0 if isinstance(kind, SemiOscillator) else kind.field_strength
    return PoleTrajectorySet(model=model, field_strength=f_str, vertices=tuple(vertices))
