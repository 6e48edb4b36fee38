"""Exception hierarchy shared by all modules."""


class GestphonError(Exception):
    pass


class ConfigError(GestphonError):
    """Malformed or inconsistent configuration (lattice, inventory, table)."""


class UnknownSegmentError(ConfigError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnsupportedConstructError(GestphonError):
    """A term or expression outside the supported fragment.

    Raised for negation over arithmetic atoms and for non-affine products.
    """


class InconsistentError(GestphonError):
    """The affine store derived ``0 = c`` with ``c != 0``."""


class UnknownVariableError(GestphonError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnsatisfiableError(GestphonError):
    def __init__(self, message, labels=()):
        super().__init__(message)
        self.labels = tuple(labels)


class UnsyllabifiableError(UnsatisfiableError):
    pass


class UndeterminedTimingError(GestphonError):
    def __init__(self, message, variables=()):
        super().__init__(message)
        self.variables = tuple(variables)
