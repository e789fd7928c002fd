"""Exception hierarchy for vword."""


class VWordError(Exception):
    pass


class TableError(VWordError, ValueError):
    """A list of (dom, im) pairs does not describe an element of V."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotPrefixCode(TableError):
    pass


class NotMaximal(TableError):
    pass


class NotBijection(TableError):
    pass


class InvalidGeneratingSet(VWordError, ValueError):
    pass


class UnknownGenerator(VWordError, LookupError):
    def __init__(self, name):
        super().__init__(f"unknown generator {name!r}")
        self.name = name

    def __str__(self):
        return self.args[0]


class InvalidZ(VWordError, ValueError):
    pass


class InvalidDpda(VWordError, ValueError):
    pass


class NondeterminismDetected(VWordError, RuntimeError):
    pass


class EpsilonDivergence(VWordError, RuntimeError):
    pass


class UndefinedStep(VWordError, ValueError):
    pass


class NotInWp(VWordError, ValueError):
    pass
