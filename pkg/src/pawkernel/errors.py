class PawKernelError(Exception):
    pass


class InvalidEditError(PawKernelError, ValueError):
    """An edit pair refers to a vertex that is not in the graph."""


class ParseError(PawKernelError, ValueError):
    pass


class PackingNotMaximalError(PawKernelError):
    """G - S still contains a paw, so S does not come from a maximal packing."""


class RulePreconditionError(PawKernelError, ValueError):
    """A reduction rule was applied with a witness that does not satisfy it."""


class KernelInvariantError(PawKernelError, AssertionError):
    """An internal consistency check of a kernel pipeline failed."""


class GenerationError(PawKernelError, ValueError):
    pass
