"""
Errors raised by the harness operators
"""


class InvalidInputError(ValueError):
    """Arguments violate an operator's preconditions"""


class RangeError(OverflowError):
    """A result would leave the exactly representable integer range"""


class NonCommutingMapsError(InvalidInputError):
    """Two transformations that must commute do not"""

    def __init__(self, atom):
        self.atom = atom
        super().__init__(f'Maps do not commute at atom {atom}')
