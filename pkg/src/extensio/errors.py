"""Exception hierarchy shared by all extensio modules."""


class ExtensioError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(ExtensioError):
    """An input value is malformed (wrong shape, non-finite, bad dims)."""


class AssumptionError(ExtensioError):
    """A documented precondition of an operation does not hold."""


class SingularAtLambda(ExtensioError):
    """A resolvent-type inverse does not exist at the requested point."""

    def __init__(self, lam: complex, reason: str = ""):
        self.lam = lam
        msg = f"no bounded inverse at lambda={lam}"
        super().__init__(msg + (f": {reason}" if reason else ""))


class NotUnitary(AssumptionError):
    """The relation is not unitary in the indefinite-metric sense."""


class NotIsometric(AssumptionError):
    """The Green identity fails on the graph (not an isometric relation)."""


class NotMaximal(AssumptionError):
    """Isometric but not unitary: the relation admits a proper extension."""


class UnequalDefect(AssumptionError):
    """The two defect numbers differ; no boundary map construction exists."""


class NotIsometryU(ArgumentError):
    """The supplied defect-pairing matrix is not unitary."""


class RealAxis(ArgumentError):
    """Evaluation point must be nonreal."""


class ConjugateCoincidence(ArgumentError):
    """Kernel evaluation at mu = conj(lambda) divides by zero."""


class PoleHit(ArgumentError):
    """Evaluation point coincides with a pole of the model."""


class NearPole(ArgumentError):
    """Evaluation point is too close to a pole for trustworthy output."""


class KernelNontrivial(AssumptionError):
    """Composition would enlarge the kernel of the boundary relation."""


class BGNotHermitian(ArgumentError):
    """The product B G of the affine parameters is not Hermitian."""


class GSingular(ArgumentError):
    """The scaling block G of the affine transform is not invertible."""


class HypothesisFailed(AssumptionError):
    """A named hypothesis of a checked construction does not hold."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        msg = f"hypothesis failed: {which}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class NotB123(AssumptionError):
    """The boundary relation does not satisfy the (B1)-(B3) conditions."""


class KNotExtending(ArgumentError):
    """The Hermitian parameter does not extend the multivalued-part map."""


class TripletMismatch(ArgumentError):
    """The triplet's kernel is not the symmetric relation of the scene."""


class DimMismatch(ArgumentError):
    """Parameter-space dimensions of the two boundary relations differ."""


class Omega0Singular(SingularAtLambda):
    """The coupling block matrix is singular at the requested point."""


class RelationSumSingular(SingularAtLambda):
    """The relation sum M + tau is not boundedly invertible at the point."""


class NoSolution(ExtensioError):
    """The boundary value problem has no solution for the given data."""


class NonUnique(ExtensioError):
    """The boundary value problem has more than one solution."""


class RealizationUnavailable(ArgumentError):
    """The parameter family carries no finite realization to compare with."""
