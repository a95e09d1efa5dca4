"""coproof.core.errors — exception hierarchy shared by every subpackage.

Every error carries a stable ``category`` (the class name) which the CLI
prints as ``error[<category>]: <message>``.
"""


class CoproofError(Exception):
    """Base class for all coproof errors."""

    @property
    def category(self) -> str:
        return type(self).__name__


# ── kernel ────────────────────────────────────────────────────────

class KernelError(CoproofError):
    pass


class UnboundVariable(KernelError):
    pass


class UnknownConstant(KernelError):
    pass


class ArrowMismatch(KernelError):
    pass


class FuelExhausted(KernelError):
    """Raised after the configured number of head steps."""

    def __init__(self, fuel: int):
        super().__init__(f"no head normal form within {fuel} steps")
        self.fuel = fuel


class NotHeadNormal(KernelError):
    pass


# ── logic ─────────────────────────────────────────────────────────

class LogicError(CoproofError):
    pass


class ArityMismatch(LogicError):
    pass


class UnknownPredicate(LogicError):
    pass


class NotAnAtom(LogicError):
    pass


class NotAFohcD(LogicError):
    pass


class NotHg(LogicError):
    pass


class IllFormedGoal(LogicError):
    pass


# ── proofs ────────────────────────────────────────────────────────

class ProofError(CoproofError):
    pass


class RuleError(ProofError):
    """A proof node does not instantiate its rule.

    ``path`` is the tuple of child indices from the root to the node.
    """

    def __init__(self, path: tuple[int, ...], reason: str):
        where = "/".join(str(i) for i in path) or "root"
        super().__init__(f"at {where}: {reason}")
        self.path = tuple(path)
        self.reason = reason


class NotDerived(ProofError):
    pass


class UnsupportedShape(ProofError):
    pass


class NoUnifier(ProofError):
    pass


class OccursCheck(NoUnifier):
    pass


class NotHgGoal(ProofError):
    pass


# ── semantics ─────────────────────────────────────────────────────

class SemanticError(CoproofError):
    pass


class NotGuarded(SemanticError):
    pass


class NotGround(SemanticError):
    pass


# ── input ─────────────────────────────────────────────────────────

class InputError(CoproofError):
    pass


class ParseError(InputError):
    """Source text rejected at ``line``:``column``."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected=()):
        loc = f"{line}:{column}: " if line else ""
        super().__init__(f"{loc}{message}")
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))


class ProofFormatError(InputError):
    pass


class UsageError(InputError):
    """A required input is missing from both the command line and the file."""
