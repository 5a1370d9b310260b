"""Exception types shared by all disclab modules."""


class DiscLabError(Exception):
    """Base class for disclab failures."""


class CapacityError(DiscLabError):
    """A computation exceeded a configured resource bound."""


class InconsistencyError(DiscLabError):
    """A closed form disagreed with its brute-force oracle."""


class UndecidableError(DiscLabError):
    """Fixed-point precision was too low to decide a comparison."""
