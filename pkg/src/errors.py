"""
Exception hierarchy for braidrep
Negative mathematical results are reported as data, these are for misuse
"""


class BraidrepError(Exception):
    """Base class for all braidrep errors"""


class DegreeMismatchError(BraidrepError, ValueError):
    """Two permutations of different degree were combined"""


class WordSyntaxError(BraidrepError, ValueError):
    """A braid word or permutation could not be parsed"""


class RelationViolationError(BraidrepError, ValueError):
    """Generator images do not satisfy the Coxeter relations"""


class ClosureSizeError(BraidrepError, ValueError):
    """BFS closure size differs from the known group order (e is not injective)"""


class ClosureCapError(BraidrepError):
    """BFS closure exceeded the configured element cap"""


class RealizationMismatchError(BraidrepError, ValueError):
    """Braid elements over different realizations were combined"""


class OutOfScopeError(BraidrepError, ValueError):
    """Coxeter type or map that this tool deliberately does not build"""


class NotHomomorphismError(BraidrepError):
    """An operation needs a map that respects every Artin relation"""


class ScanCapExceededError(BraidrepError):
    """A kernel or injectivity scan would exceed the configured element cap"""
