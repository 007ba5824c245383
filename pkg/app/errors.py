"""Exceptions raised by the grammar engine.

Everything the engine raises on bad input derives from `GrammarError`, so
the CLI and the JSON API can turn it into a usage error or a 4xx response
in one place.
"""


class GrammarError(Exception):
    """Base class for all engine errors."""


class MissingGrammarError(GrammarError):
    """Raised when an operation references R_i that the store has not built.

    Attributes:
        index (int): The grammar index that was referenced.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(f'grammar R{index} has not been constructed')


class GrammarOrderError(GrammarError):
    """Raised when grammars are constructed out of index order.

    Attributes:
        index (int): The index that was requested.
        expected (int): The only index the store can construct next.
    """

    def __init__(self, index: int, expected: int):
        self.index = index
        self.expected = expected
        super().__init__(
            f'cannot construct R{index} before R{expected}'
        )


class NotNormalTreeError(GrammarError):
    """Raised when a normal tree is required but a non-normal one is given."""

    def __init__(self, tree):
        self.tree = tree
        super().__init__(f'tree is not normal: {tree}')


class TermSyntaxError(GrammarError):
    """Raised when term or tree text cannot be parsed.

    Attributes:
        position (int): 0-based character offset of the offending input.
    """

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f'{message} at position {position}')
