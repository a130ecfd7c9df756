"""Exception hierarchy.

Every error raised by the package derives from :class:`LTCError`.  The
intermediate classes group errors into the families the command line maps to
exit codes.
"""


class LTCError(Exception):
    """Base class for all package errors."""


# -- finite fields and designs ------------------------------------------------

class FieldError(LTCError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class NotPrimitive(FieldError):
    pass


class CodeOutOfRange(FieldError):
    pass


class DesignError(LTCError, ValueError):
    pass


class InvalidA(DesignError):
    """The public multiplier is 0, 1 or -1 in the field."""


class OrderMismatch(DesignError):
    pass


class NotBijection(DesignError):
    pass


class NotOrthogonal(DesignError):
    pass


# -- keys and chaos -----------------------------------------------------------

class ChaosError(LTCError, ValueError):
    """Key validation and logistic-map problems."""


class DegenerateOrbit(ChaosError):
    pass


class KeyOutOfRange(ChaosError):
    pass


# -- cipher pipeline ----------------------------------------------------------

class CipherError(LTCError, ValueError):
    pass


class LengthMismatch(CipherError):
    pass


class MalformedEnvelope(CipherError):
    pass


class UnsupportedSize(CipherError):
    pass


class SumMismatch(CipherError):
    """Recovered plaintext does not sum to the envelope's ``sum_q``.

    The decrypted image is still available as :attr:`image` so corrupted
    ciphertexts can be studied.
    """

    def __init__(self, message, image=None, expected=None, actual=None):
        super().__init__(message)
        self.image = image
        self.expected = expected
        self.actual = actual


# -- analysis -----------------------------------------------------------------

class AnalysisError(LTCError, ValueError):
    pass


class DimensionMismatch(AnalysisError):
    pass


class UnsupportedFraction(AnalysisError):
    pass


class BadParameter(AnalysisError):
    pass


# -- file formats -------------------------------------------------------------

class FormatError(LTCError, ValueError):
    pass


class BadMagic(FormatError):
    pass


class BadVersion(FormatError):
    pass


class BadMaxval(FormatError):
    pass


class NonSquare(FormatError):
    pass


class Truncated(FormatError):
    pass


class SumOutOfRange(FormatError, MalformedEnvelope):
    pass


class KeyFileError(FormatError):
    pass
