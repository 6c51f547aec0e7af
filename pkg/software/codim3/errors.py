"""Exceptions raised by the codim3 modules.

Arithmetic and construction mistakes (mixing degrees, a composite characteristic) raise the builtin
`ValueError`; the classes here cover the failures that callers are expected to tell apart.
"""


class ParseError(ValueError):
    """Raised when a polynomial or matrix string cannot be read.

    The message always names the offending token.
    """


class NotArtinianError(ValueError):
    """Raised when a quotient R/I is required but I does not have codimension 3"""


class DatabaseFormatError(ValueError):
    """Raised when a file in the data folder cannot be parsed

    @param path  The file being read
    @param line_number  The 1-based line that failed
    @param message  What was wrong with it
    """

    def __init__(self, path, line_number, message):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {message}")


class InternalInvariantError(RuntimeError):
    """Raised when a mathematical identity that must hold does not.

    This always indicates a bug (or an input outside the hypotheses of the classification), never a
    user error.
    """


class UnclassifiableError(InternalInvariantError):
    """Raised when the Tor invariants match none of the five multiplication tables"""
