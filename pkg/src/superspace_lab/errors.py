"""Exception hierarchy shared by every module of the package."""


class SuperspaceError(Exception):
    """Base class for all errors raised by superspace_lab."""


class ConstructionError(SuperspaceError):
    """An object was assembled in a way that violates its invariants."""


class ParseError(SuperspaceError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UndeclaredSymbolError(ParseError):
    pass


class ArityError(ParseError):
    pass


class ScalarZeroDivisionError(SuperspaceError, ZeroDivisionError):
    pass


class CyclicBindingError(SuperspaceError):
    pass


class UnboundSymbolError(SuperspaceError):
    pass


class GeneratorError(SuperspaceError):
    """Unknown generator, repeated integration variable or mismatched generator sets."""


class ParityError(SuperspaceError):
    pass


class NotInvertibleError(SuperspaceError):
    pass


class NoRootError(SuperspaceError):
    pass


class DimensionError(SuperspaceError):
    pass


class InhomogeneousSumError(DimensionError):
    def __init__(self, first: str, second: str, dim_first, dim_second):
        super().__init__(
            f"terms {first!r} [{dim_first}] and {second!r} [{dim_second}] "
            "have different dimensions"
        )
        self.terms = (first, second)


class UnassignedDimensionError(DimensionError):
    pass


class LatticeSingularityError(SuperspaceError):
    pass


class ModelFileError(SuperspaceError):
    def __init__(self, message: str, path: str = "<model>", line: int | None = None):
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class ParseDivisionError(ParseError, ScalarZeroDivisionError):
    pass
