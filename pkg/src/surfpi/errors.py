"""Exception hierarchy shared by every module of the toolkit."""


class SurfPiError(Exception):
    """Base class for all toolkit errors."""


class WordParseError(SurfPiError, ValueError):
    """Raised when word text does not follow the word grammar."""


class UnknownSymbol(WordParseError):
    pass


class MalformedExponent(WordParseError):
    pass


class IndexOutOfRange(WordParseError):
    pass


class AlphabetMismatch(SurfPiError, ValueError):
    pass


class PreconditionViolated(SurfPiError, ValueError):
    pass


class MissingImage(SurfPiError, KeyError):
    pass


class InvalidKind(SurfPiError, ValueError):
    pass


class InvalidLoopName(SurfPiError, ValueError):
    pass


class WrongAlphabet(SurfPiError, ValueError):
    pass


class UnsupportedPresentation(SurfPiError):
    """The word problem is not offered for this presentation flavor."""


class InvalidName(SurfPiError, ValueError):
    pass


class UnsupportedLevel(SurfPiError, ValueError):
    pass


class NoRelator(SurfPiError, ValueError):
    pass


class InvalidSymbol(SurfPiError, ValueError):
    pass


class RequiresClosed(SurfPiError, ValueError):
    pass


class CorpusIntegrityError(SurfPiError):
    """Corpus checksum mismatch or an unparseable record."""
