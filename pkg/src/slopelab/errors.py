"""Shared exception types.

PreconditionError covers every "the inputs do not satisfy the contract"
rejection, including guard-budget overruns; the CLI maps it to exit code 2.
CliParseError covers malformed command-line input (exit code 4).  Failed
verifications are not exceptions: they come back as structured reports.
"""


class SlopelabError(Exception):
    pass


class PreconditionError(SlopelabError):
    pass


class GuardExceeded(PreconditionError):
    pass


class CliParseError(SlopelabError):
    pass
