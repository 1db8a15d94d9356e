"""Exception hierarchy shared by the library and the CLI."""


class GarsideKitError(Exception):
    """Base class for every error raised by garsidekit."""


class NonSpherical(GarsideKitError):
    """The graph is not a simply-laced spherical (ADE) Coxeter graph.

    ``subgraph`` holds the vertex labels of an offending subgraph.
    """

    def __init__(self, message, subgraph=()):
        super().__init__(message)
        self.subgraph = tuple(subgraph)


class SubsetNotSpherical(NonSpherical):
    pass


class IndexOutOfRange(GarsideKitError, IndexError):
    pass


class WordSyntaxError(GarsideKitError, ValueError):
    """Parse failure in the word language; ``position`` is a 0-based offset."""

    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnboundName(GarsideKitError, KeyError):
    def __str__(self):
        return f"unbound name: {self.args[0]}"


class CyclicBinding(GarsideKitError):
    pass


class DuplicateName(GarsideKitError):
    pass


class ExponentTooLarge(GarsideKitError, ValueError):
    pass


class NoCompliantLabeling(GarsideKitError):
    """No candidate labeling satisfied every identity; ``matrix`` is the compliance report."""

    def __init__(self, message, matrix):
        super().__init__(message)
        self.matrix = matrix


class ZeroVector(GarsideKitError, ValueError):
    pass


class NoRealization(GarsideKitError):
    pass
