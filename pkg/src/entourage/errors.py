"""Exception hierarchy shared by the library and the CLI."""


class EntourageError(Exception):
    """Semantic error: bad labels, mismatched carriers, unmet hypotheses."""


class CarrierMismatch(EntourageError):
    pass


class UnknownLabel(EntourageError):
    pass


class HypothesisError(EntourageError):
    """An operation was called outside the hypotheses it is defined under."""


class ResourceCap(EntourageError):
    """A size guard was exceeded."""


class ParseError(Exception):
    def __init__(self, message, line=0, column=0, source="<input>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")
