class CommandError(Exception):
    exit_code = 2


class VerificationFailure(CommandError):
    exit_code = 1

    def __init__(self, failed):
        self.failed = list(failed)
        super(VerificationFailure, self).__init__(
            "%d verification check(s) failed: %s"
            % (len(self.failed), ", ".join(self.failed))
        )


class DomainError(ValueError):
    """A mathematical precondition of an operation was violated."""
