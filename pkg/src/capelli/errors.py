"""Exception types shared across the package."""


class CapelliError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatchError(CapelliError):
    """Operands belong to different coefficient fields."""


class ReducibleModulusError(CapelliError):
    """An extension-field modulus failed its irreducibility check."""


class ReducibleInputError(CapelliError):
    """An operation required an irreducible input polynomial and got a reducible one."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class WorkBoundExceededError(CapelliError):
    """An oracle call would exceed its configured work budget."""


class EnumerationBoundExceededError(CapelliError):
    """A requested exhaustive enumeration is larger than the configured bound."""


class OracleDisagreementError(CapelliError):
    """The fast criterion and a brute-force oracle returned different verdicts."""


class CertificateReplayError(CapelliError):
    """Replaying a tower certificate failed to reproduce its recorded evidence."""


class TowerStepRejectedError(CapelliError):
    """A scheduled tower step was rejected by the criterion."""

    def __init__(self, message: str, step_index: int, d: int, verdict=None):
        super().__init__(message)
        self.step_index = step_index
        self.d = d
        self.verdict = verdict


class NoViableStepError(CapelliError):
    """The automatic tower policy ran out of candidate step sizes."""

    def __init__(self, message: str, degree: int, tried=()):
        super().__init__(message)
        self.degree = degree
        self.tried = tuple(tried)


class PolyParseError(CapelliError):
    """A polynomial string or coefficient array could not be parsed."""
