"""Exception hierarchy shared by the library and the command line front end."""


class MoprlError(Exception):
    """Base class for every error raised deliberately by this package."""


class NotNormalError(MoprlError):
    """The moment matrix at the requested index is singular."""


class HypothesisError(MoprlError):
    """A theorem or operation was invoked outside its hypotheses."""


class InsufficientSupportError(HypothesisError):
    """The finite atomic measures have too few atoms for the requested degrees."""


class MeasureError(MoprlError, ValueError):
    """Invalid measure or measure-system construction."""


class InconsistencyError(MoprlError):
    """Two independent computations of the same quantity disagree.

    This is a bug trap: it is never expected to be raised on valid input.
    """
