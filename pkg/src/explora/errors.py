"""Shared exception types."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input file; carries file name, line number and expectation."""

    def __init__(self, source: str, line: int, expected: str):
        self.source = source
        self.line = line
        self.expected = expected
        super().__init__(f"{source}:{line}: expected {expected}")


class MissingMonitor(ValueError):
    """A deterministic language monitor is required but was not supplied."""


class MonitorMismatch(ValueError):
    """A user-supplied monitor disagrees with the automaton on some lasso."""

    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(f"monitor disagrees with automaton on {counterexample}")


class NonSinkTarget(ValueError):
    """The population-game target state must be a sink."""


class UnverifiedExplorability(ValueError):
    """The fast HD check needs a verified explorability witness (or an explicit
    unchecked=True)."""


class ChannelBudgetExceeded(ValueError):
    """A game construction would need more parity channels than allowed."""


class ConfigSpaceTooLarge(ValueError):
    """The machine's configuration space exceeds the brute-force budget."""
