"""Exception hierarchy shared across the package.

Two broad families matter to callers: input problems (unreadable files,
malformed manifests) and degenerate data (inputs that are syntactically fine
but carry too little structure for the requested computation).  The command
line maps the first family to exit code 2 and the second to exit code 3.
"""


class TextnetError(Exception):
    """Base class for every error raised by this package."""


class ManifestError(TextnetError):
    """A corpus or evaluation manifest violates its schema."""


class DocumentEmptyError(TextnetError):
    """No tokens survived preprocessing."""


class TooFewTokensError(TextnetError):
    """A network needs at least two tokens."""


class TooFewNodesError(TextnetError):
    """The requested computation needs more nodes than the network has."""


class DegenerateSpectrumError(TextnetError):
    """The adjacency matrix has no positive leading eigenvalue."""


class ZeroVarianceError(TextnetError):
    """A correlation was requested over a constant sequence."""


class InsufficientOverlapError(TextnetError):
    """Two networks share too few labels for a regression fit."""


class DimensionMismatchError(TextnetError):
    """Feature rows or point sets disagree on dimensionality."""


class EmptyTrainError(TextnetError):
    """A classifier was given an empty training table."""


class TooFewRowsError(TextnetError):
    """Cross-validation was asked for more folds than there are rows."""
