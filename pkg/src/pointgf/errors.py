"""Exception taxonomy for the whole package.

Numerical error conditions are raised, never silently absorbed: every
singular denominator in the closed forms corresponds to a physically
meaningful locus (Green's-function pole, degenerate delta-prime coupling,
singular matching matrix) and callers dispatch on the exception type.
"""


class PointGFError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameter(PointGFError):
    """Input outside the documented domain (non-finite, wrong sign, ...)."""


class PoleOfGamma(InvalidParameter):
    """Gamma function evaluated at (or within 1e-14 of) a non-positive integer."""


class RatioPole(PointGFError):
    """Gamma-ratio numerator hits a pole while the denominator stays finite."""


class WorkingRangeExceeded(InvalidParameter):
    """Argument beyond the validated working range of a series evaluation."""


class SingularEnergy(PointGFError):
    """Energy sits on a pole of the free Green's function (Wronskian ~ 0)."""


class DegenerateDelta(PointGFError):
    """The 2x2 closure determinant of the corner algebra vanishes."""


class PoleOfGreen(PointGFError):
    """Energy sits on a pole of the perturbed Green's function (lambda ~ 0)."""


class DegenerateDenominator(PointGFError):
    """1 + 2b + 4*zeta*eta*b^2 = 0; the compact pole condition degenerates."""


class AiryDenominatorZero(PointGFError):
    """Airy-function denominator of the linear-model residual vanishes."""


class CountMismatch(PointGFError):
    """Newton found a different number of roots than the contour count.

    Carries ``found``, ``expected`` and a list of suggested subregions for
    refinement.
    """

    def __init__(self, found, expected, subregions=()):
        self.found = found
        self.expected = expected
        self.subregions = tuple(subregions)
        super().__init__(
            "root count mismatch: Newton found %d, argument principle says %d"
            % (found, expected)
        )


class ContourThroughZero(PointGFError):
    """Residual (nearly) vanishes on the search-region boundary; nudge the region."""


class SingularB(InvalidParameter):
    """b = +1/(2 zeta) or b = -1/(2 zeta): matching matrix entries diverge."""


class NotSingularCase(InvalidParameter):
    """Singular-case constraints requested away from zeta=eta=1/2, b=+-1."""


class DegeneratePole(PointGFError):
    """Residue limit does not converge (pole not simple, or mislabelled)."""


class ProbeNode(PointGFError):
    """Residue probe point sits on a node of the resonance wave function."""


class StiffnessFailure(PointGFError):
    """Adaptive ODE step size underflowed."""


class BlowUp(PointGFError):
    """Repeated renormalization failed to keep the ODE solution in range."""
