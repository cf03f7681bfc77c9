"""Exception hierarchy. Every error carries the CLI exit code it maps to."""


class SnCoverError(Exception):
    exit_code = 1


class InvalidArgumentError(SnCoverError, ValueError):
    exit_code = 2


class PreconditionError(SnCoverError, ValueError):
    exit_code = 2


class ResourceLimitError(SnCoverError):
    exit_code = 3

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}={value} exceeds configured cap {cap}")


class VerificationError(SnCoverError):
    exit_code = 1

    def __init__(self, message: str, path: str = "root"):
        self.path = path
        super().__init__(f"{path}: {message}")


class InternalInconsistencyError(SnCoverError):
    exit_code = 1


class CertificateParseError(SnCoverError, ValueError):
    exit_code = 2

    def __init__(self, message: str, location: str = "document"):
        self.location = location
        super().__init__(f"{location}: {message}")


class CacheCorruptError(SnCoverError):
    pass
