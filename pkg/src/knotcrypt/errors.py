"""Exception hierarchy shared across the package."""


class KnotCryptError(ValueError):
    """Base class for every error raised by knotcrypt."""


class InvalidDiagramError(KnotCryptError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid diagram: " + "; ".join(self.violations))


class MoveError(KnotCryptError):
    """A Reidemeister move does not match the diagram at the given location."""


class DTCodeError(KnotCryptError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NonRealizableLabelingError(KnotCryptError):
    pass


class SuffixMismatchError(KnotCryptError):
    pass


class MultiComponentError(KnotCryptError):
    pass


class SizeLimitError(KnotCryptError):
    pass


class PDSyntaxError(KnotCryptError):
    pass


class TableError(KnotCryptError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DecryptionError(KnotCryptError):
    """Decryption of one ciphertext record failed.

    ``kind`` is either ``"suffix mismatch"`` or ``"codebook decode failure"``.
    """

    def __init__(self, kind, index, detail=""):
        self.kind = kind
        self.index = index
        message = f"{kind} at record {index}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
