"""Exception hierarchy.

Two families matter to callers: ``Inconclusive`` means the enclosures were too
wide to decide anything (raise precision and retry), ``CertifiedFailure`` means
a check was proved false.  Everything else is a bad input.
"""


class ProverError(Exception):
    pass


class Inconclusive(ProverError):
    """Not enough precision to decide; retry at a higher precision."""


class CertifiedFailure(ProverError):
    """A certified check came out false."""


class DomainStraddle(Inconclusive):
    """An input ball touches a pole, zero divisor or branch cut."""


class PoleStraddle(DomainStraddle):
    pass


class ResidualNotCertified(Inconclusive):
    pass


class SingularDenominator(Inconclusive):
    pass


class RecognitionFailed(Inconclusive):
    pass


class AmbiguousRecognition(Inconclusive):
    pass


class SolutionRejected(CertifiedFailure):
    """A residual of the solution system is certified nonzero."""


class DegreeTestFailed(CertifiedFailure):
    """|m0|^2 is certified different from 1/d."""


class NonRealResult(CertifiedFailure):
    pass


class BranchMismatch(CertifiedFailure):
    """The chain does not satisfy the sign contract of the requested series branch."""


class DegenerateParameters(CertifiedFailure):
    pass


class NomeTooLarge(ValueError, ProverError):
    pass


class DivergentParameters(ValueError, ProverError):
    pass


class UnsupportedDegree(ValueError, ProverError):
    pass


class ParseError(ValueError, ProverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateMonomial(ParseError):
    pass


class ExponentOverflow(ParseError):
    pass


class MixedParity(ValueError, ProverError):
    def __init__(self, i: int, j: int):
        self.exponents = (i, j)
        super().__init__(f"monomial u^{i} v^{j} has mixed parity")
