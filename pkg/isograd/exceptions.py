"""Exceptions raised by isograd.

Every error carries a short string ``code`` (used in the JSON error objects
printed by the command line) and the process exit code the command line
returns for it.
"""


class IsogradError(ValueError):
    """Base class: a mathematical precondition was violated."""

    code = 'error'
    exit_code = 3

    def __init__(self, detail='', code=None):
        super(IsogradError, self).__init__(detail)
        self.detail = detail
        if code is not None:
            self.code = code

    def to_dict(self):
        return {'error': self.code, 'detail': self.detail}


class ShapeError(IsogradError):
    code = 'shape'


class NotInvertible(IsogradError):
    """Matrix is not invertible over K; ``det`` holds the determinant."""

    code = 'not-invertible'

    def __init__(self, detail='', det=None):
        super(NotInvertible, self).__init__(detail)
        self.det = det


class GaugeNotInvertible(IsogradError):
    code = 'gauge-not-invertible'


class PairMismatch(IsogradError):
    code = 'pair'


class SpecMismatch(IsogradError):
    code = 'spec'


class Underflow(IsogradError):
    code = 'underflow'


class RingMismatch(IsogradError):
    code = 'ring'


class VerificationError(IsogradError):
    code = 'verify'


class ProblemError(IsogradError):
    """Problem document could not be parsed or validated."""

    code = 'parse'
    exit_code = 2


class UsageError(IsogradError):
    code = 'usage'
    exit_code = 1
