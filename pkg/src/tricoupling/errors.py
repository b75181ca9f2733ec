"""Exception type shared by every module."""


class InstanceError(ValueError):
    """Raised when an input violates an operation's preconditions.

    ``code`` is a short machine-readable tag such as ``"BAD_TOTAL"`` or
    ``"TOP_MASS"``; the message is for humans.
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
