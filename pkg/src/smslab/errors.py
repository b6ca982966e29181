"""Exception hierarchy. Every error carries enough context to be reported."""


class SmsLabError(Exception):
    pass


class DslSyntaxError(SmsLabError):
    def __init__(self, message, line=None, col=None, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        loc = "" if line is None else " at line %d, col %d" % (line, col or 0)
        exp = "" if not expected else " (expected %s)" % ", ".join(expected)
        super().__init__(message + loc + exp)


class NonAdmissible(SmsLabError):
    pass


class NonComposable(SmsLabError):
    pass


class NonConfluent(SmsLabError):
    pass


class BoundExceeded(SmsLabError):
    pass


class UnknownVertex(SmsLabError):
    pass


class BadParameter(SmsLabError):
    pass


class NotSpecialBiserial(SmsLabError):
    pass


class InvalidWord(SmsLabError):
    pass


class ZeroParameter(SmsLabError):
    pass


class AlgebraMismatch(SmsLabError):
    pass


class InvalidRep(SmsLabError):
    pass


class FieldTooSmall(SmsLabError):
    pass


class NonSplitResidue(SmsLabError):
    pass


class NotSelfInjective(SmsLabError):
    pass


class ProjectiveInput(SmsLabError):
    pass


class SocleNotLine(SmsLabError):
    pass


class NotQuasiSerial(SmsLabError):
    pass


class NotFound(SmsLabError):
    pass


class CapExceeded(SmsLabError):
    pass


class UniverseIncomplete(SmsLabError):
    pass


class DepthExceeded(SmsLabError):
    pass


class ConditionFailed(SmsLabError):
    def __init__(self, message, step=None, target=None):
        self.step = step
        self.target = target
        super().__init__(message)


class HypothesisUnmet(SmsLabError):
    pass
