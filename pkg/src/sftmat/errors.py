"""Exception types shared across the package."""


class SftError(Exception):
    pass


class CapExceeded(SftError):
    """An enumeration would exceed its configured size bound."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class DimensionMismatch(SftError):
    pass


class VerificationFailed(SftError):
    pass


class UnknownFormat(SftError):
    pass
