"""Exception types shared across the package."""


class RefspinError(Exception):
    """Base class for every error raised by refspin."""


# ---------------------------------------------------------------- algebra


class ZeroEntry(RefspinError):
    """A matrix entry expected to be invertible is (numerically) zero."""

    def __init__(self, i, j):
        super().__init__(f"entry ({i}, {j}) is zero within tolerance")
        self.i = i
        self.j = j


class NotSymmetric(RefspinError):
    """A matrix required to be symmetric is not."""


class BadLoopValue(RefspinError):
    """The loop value d does not satisfy d**2 == n."""


class TypeIIIFailure(RefspinError):
    """An eigenvector equation W+ Y_ab = d W-(a,b) Y_ab fails."""

    def __init__(self, a, b):
        super().__init__(f"eigenvector equation fails at index pair ({a}, {b})")
        self.a = a
        self.b = b


class NotInNomura(RefspinError):
    """A matrix does not have every quotient vector as an eigenvector."""


class ZeroModulus(RefspinError):
    """A refinement has a vanishing diagonal modulus."""


# ---------------------------------------------------------------- diagram


class ParseError(RefspinError):
    """Malformed .sud / .smg / model-spec input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OpenArc(ParseError):
    """An arc label does not occur exactly twice."""


class NonPlanar(ParseError):
    """The rotation system violates the Euler formula V - E + F = 2."""


class AxisCountMismatch(ParseError):
    """Declared PB + NB does not match the number of axis edges."""


class NotBipartite(RefspinError):
    """Face adjacency admits no checkerboard coloring (defensive)."""


# ---------------------------------------------------------------- engine


class TooLarge(RefspinError):
    """State space exceeds the enumeration cap; use elimination instead."""


class WidthOverflow(RefspinError):
    """Variable elimination would build a factor above the arity cap."""


class ColoringMismatch(RefspinError):
    """The two checkerboard colorings disagree; indicates a convention bug."""


# ---------------------------------------------------------------- rewrites


class PatternMismatch(RefspinError):
    """A rewrite site does not match the local pattern of its kind."""


class TypeIIRequired(RefspinError):
    """An axis-pair cancellation was requested for a non-type-II model."""
