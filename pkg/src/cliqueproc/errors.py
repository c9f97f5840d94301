class InvalidParameter(ValueError):
    pass


class OutOfRegime(ValueError):
    """Requested time lies outside [0, 1] after critical-window rescaling."""


class InvalidFace(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class WindowTooShort(ValueError):
    """Process does not end at the requested level inside the evaluated window."""


class BudgetExceeded(RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
