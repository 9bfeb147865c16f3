"""Exception types shared by all modules."""


class BiPerronError(ValueError):
    """Base error. ``code`` is a short stable identifier used by the CLI."""

    def __init__(self, code, message=None):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class StageError(BiPerronError):
    """A certificate pipeline stage failed."""

    def __init__(self, stage, message, partial=None):
        self.stage = stage
        self.partial = partial or {}
        super().__init__("stage-failed", f"{stage}: {message}")
