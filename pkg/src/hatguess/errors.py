"""Exception hierarchy shared by every module."""


class HatGuessError(Exception):
    """Base class for all package errors."""


class ValidationError(HatGuessError, ValueError):
    """A graph, game or document violates a structural invariant."""

    def __init__(self, message, *, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateVertex(ValidationError):
    def __init__(self, vertex, *, line=None):
        self.vertex = vertex
        super().__init__(f"duplicate vertex {vertex!r}", line=line)


class SelfLoop(ValidationError):
    def __init__(self, vertex, *, line=None):
        self.vertex = vertex
        super().__init__(f"self-loop at vertex {vertex!r}", line=line)


class UnknownEndpoint(ValidationError):
    def __init__(self, vertex, edge=None, *, line=None):
        self.vertex = vertex
        self.edge = edge
        super().__init__(f"edge {edge!r} has undeclared endpoint {vertex!r}", line=line)


class NonPositiveHatness(ValidationError):
    def __init__(self, vertex, value=None, *, line=None):
        self.vertex = vertex
        self.value = value
        super().__init__(f"hatness of {vertex!r} must be >= 1, got {value!r}", line=line)


class DomainMismatch(ValidationError):
    def __init__(self, vertex, *, line=None):
        self.vertex = vertex
        super().__init__(f"hatness domain does not match vertex set at {vertex!r}", line=line)


class InvalidIdentifier(ValidationError):
    def __init__(self, vertex, *, line=None):
        self.vertex = vertex
        super().__init__(f"invalid vertex identifier {vertex!r}", line=line)


class ParseError(ValidationError):
    """Malformed text document; ``line`` carries the 1-based line number."""


class EmptySubset(HatGuessError, ValueError):
    pass


class UnknownVertex(HatGuessError, KeyError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(vertex)

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class IncompleteStrategy(HatGuessError, ValueError):
    pass


class GuessOutOfRange(HatGuessError, ValueError):
    pass


class TooLarge(HatGuessError, ValueError):
    pass


class NotACycle(HatGuessError, ValueError):
    pass


class NotAPath(HatGuessError, ValueError):
    pass


class NoHatness5Vertex(HatGuessError, ValueError):
    pass


class PreconditionViolated(HatGuessError, ValueError):
    pass


class FoldDisagreement(HatGuessError, RuntimeError):
    def __init__(self, hatnesses, left, right):
        self.hatnesses = tuple(hatnesses)
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(
            f"left fold {self.left} and right fold {self.right} disagree on {self.hatnesses}"
        )


class Disconnected(HatGuessError, ValueError):
    pass


class NotCactus(HatGuessError, ValueError):
    """Raised by cactus analysis; ``report`` keeps the block decomposition."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class SumBelowOne(HatGuessError, ValueError):
    pass


class CertificateInvalid(HatGuessError, ValueError):
    pass


class HatnessIncrease(HatGuessError, ValueError):
    pass


class SynthesisCapExceeded(HatGuessError, RuntimeError):
    pass
