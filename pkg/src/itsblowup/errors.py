"""Exception hierarchy shared by every module."""


class ITSError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(ITSError, ValueError):
    pass


class IntraBlockEdge(InvalidGraph):
    def __init__(self, u, v):
        super().__init__(f"edge {u!r}-{v!r} lies inside one block")
        self.edge = (u, v)


class DuplicateVertex(InvalidGraph):
    def __init__(self, vid):
        super().__init__(f"vertex {vid!r} appears more than once")
        self.vertex = vid


class DanglingEdgeEndpoint(InvalidGraph):
    def __init__(self, vid):
        super().__init__(f"edge endpoint {vid!r} is not a vertex of any block")
        self.vertex = vid


class DuplicateEdge(InvalidGraph):
    def __init__(self, u, v):
        super().__init__(f"edge {u!r}-{v!r} given more than once")
        self.edge = (u, v)


class SelfLoop(InvalidGraph):
    def __init__(self, vid):
        super().__init__(f"loop at {vid!r}")
        self.vertex = vid


class EmptyBlock(InvalidGraph):
    def __init__(self, i):
        super().__init__(f"block {i} is empty")
        self.block = i


class UnknownVertex(ITSError, KeyError):
    def __init__(self, vid):
        super().__init__(f"unknown vertex {vid!r}")
        self.vertex = vid

    def __str__(self):
        return self.args[0]


class BlockTooThin(ITSError, ValueError):
    def __init__(self, i, size, need):
        super().__init__(f"block {i} has {size} vertices, need at least {need}")
        self.block, self.size, self.need = i, size, need


class IndivisibleBlock(ITSError, ValueError):
    def __init__(self, i, size, s):
        super().__init__(f"block {i} of size {size} cannot be split into groups of {s}")
        self.block = i


class UnequalBlocks(ITSError, ValueError):
    pass


class GroupSizeMismatch(ITSError, ValueError):
    pass


class AuxTooLarge(ITSError, ValueError):
    pass


class NotIndependent(ITSError, ValueError):
    pass


class NotTransversal(ITSError, ValueError):
    pass


class BudgetExceeded(ITSError, RuntimeError):
    """A search or sampler ran out of its node/resample budget.

    ``stats`` carries whatever partial statistics the caller collected.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats


class HypothesisViolated(ITSError, ValueError):
    def __init__(self, which, detail=""):
        super().__init__(f"hypothesis violated: {which}" + (f" ({detail})" if detail else ""))
        self.which = which


class ScheduleDiverged(ITSError, ValueError):
    pass


class ThinnedOut(ITSError, RuntimeError):
    def __init__(self, block, size):
        super().__init__(f"block {block} thinned out to {size} vertices")
        self.block, self.size = block, size


class RetriesExhausted(ITSError, RuntimeError):
    def __init__(self, round_, retries, log=None):
        super().__init__(f"round {round_} failed after {retries} attempts")
        self.round, self.retries, self.log = round_, retries, log


class NoRootedIT(ITSError, RuntimeError):
    def __init__(self, vertex):
        super().__init__(f"reduced graph has no independent transversal through {vertex!r}")
        self.vertex = vertex


class InfeasibleTarget(ITSError, ValueError):
    pass
