"""Exception hierarchy shared by the engine and the command line."""

from typing import Optional


class LawbenchError(Exception):
    """Base error. ``exit_code`` is what the CLI exits with, ``detail`` what it prints."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class SpecError(LawbenchError):
    """A spec document failed to parse or validate; ``path`` names the field."""

    def __init__(self, detail: str, path: Optional[str] = None, location: Optional[str] = None):
        self.message = detail
        self.path = path
        self.location = location
        super().__init__(self._render())

    def _render(self) -> str:
        where = ":".join(part for part in (self.location, self.path) if part)
        return f"{where}: {self.message}" if where else self.message

    def at(self, *, path: Optional[str] = None, location: Optional[str] = None) -> "SpecError":
        self.path = self.path or path
        self.location = self.location or location
        self.detail = self._render()
        self.args = (self.detail,)
        return self


class MonoidLawError(SpecError):
    """A declared monoid violates associativity, identity or its commutativity flag."""

    def __init__(self, monoid: str, law: str, witness: tuple):
        shown = ", ".join(str(part) for part in witness)
        super().__init__(f"monoid {monoid!r} violates {law} at ({shown})")
        self.monoid = monoid
        self.law = law
        self.witness = witness


class UsageError(LawbenchError):
    """Bad arguments: unknown names, arity mismatches, nothing to check."""


class NestingBoundError(LawbenchError):
    def __init__(self, monad: str, depth: int, limit: int):
        super().__init__(f"nesting bound: {monad} nested {depth} deep, maxNestDepth={limit}")


class PartialApplicationError(LawbenchError):
    def __init__(self, table: str, value: str):
        super().__init__(f"partial function application: {value} is outside the domain of {table}")


class NoTotalFunctionsError(LawbenchError):
    def __init__(self):
        super().__init__("no total functions: non-empty domain into an empty codomain")


class MalformedTermError(LawbenchError):
    """A value is not a term of the signature it is used with."""


class DerivationError(LawbenchError):
    """A distributive law or composite monad could not be built."""


class CompositeMismatchError(LawbenchError):
    """The two composite-bind computation paths disagree."""

    exit_code = 1


class ValueSyntaxError(LawbenchError):
    def __init__(self, text: str, position: int, expected: str):
        super().__init__(f"cannot parse value {text!r} at offset {position}: expected {expected}")
        self.position = position
