"""Deterministic language monitors for use inside game arenas.

A monitor tracks, deterministically, whether the word read so far (or the
infinite word being read) belongs to the language of a source automaton:

* finite acceptance  -> subset construction,
* safety / coBuchi   -> breakpoint construction over (reachable set, safe
                        subset) pairs,
* reachability       -> subset tracking that locks into an accepting sink
                        once the reachable set crosses an accepting
                        transition,
* Buchi / parity     -> caller-supplied deterministic automaton, validated
                        against the source by the bounded lasso oracle.

The breakpoint formulation is our own choice, so its output is always
validated against the source by the lasso oracle at build time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import config
from .automata import (Automaton, AnyAutomaton, MultiAutomaton, Transition,
                       canonical_parity, equivalent_on_lassos, is_complete,
                       is_deterministic, complete)
from .errors import MissingMonitor, MonitorMismatch


@dataclass(frozen=True)
class Monitor:
    automaton: Automaton
    provenance: str  # "subset" | "breakpoint" | "user"

    @property
    def rank_range(self) -> tuple[int, int]:
        return self.automaton.rank_range

    @property
    def is_finite(self) -> bool:
        return self.automaton.condition == "finite"


def subset_construction(a: Automaton) -> Monitor:
    """Deterministic finite-word monitor over reachable state subsets."""
    if a.condition != "finite":
        raise ValueError("subset_construction needs a finite-acceptance automaton")
    index: dict[frozenset[int], int] = {}
    order: list[frozenset[int]] = []

    def state_of(s: frozenset[int]) -> int:
        if s not in index:
            index[s] = len(order)
            order.append(s)
        return index[s]

    transitions = []
    state_of(frozenset({a.initial}))
    i = 0
    while i < len(order):
        s = order[i]
        src = index[s]
        for letter in a.alphabet:
            nxt = a.post(s, letter)
            transitions.append(Transition(src, letter, state_of(nxt), 0))
        i += 1
    assert len(order) <= 2 ** a.num_states
    accepting = frozenset(index[s] for s in order if s & a.accepting)
    monitor = Automaton.build(
        f"subset({a.name})", a.alphabet, len(order), 0, "finite",
        transitions, accepting)
    assert is_deterministic(monitor) and is_complete(monitor)
    return Monitor(monitor, "subset")


def breakpoint_construction(a: Automaton) -> Monitor:
    """Deterministic coBuchi monitor over (reachable set, safe subset) pairs.

    On letter a from (S, B): S' = post(S, a) and the safe subset follows only
    rank-0 transitions out of B; when nothing survives, the transition is a
    rank-1 breakpoint and the safe subset restarts at S'.
    """
    if not (a.condition == "cobuchi" or
            (a.condition == "parity" and a.rank_range == (0, 1))):
        raise ValueError("breakpoint_construction needs a coBuchi ([0,1]) automaton")
    index: dict[tuple[frozenset[int], frozenset[int]], int] = {}
    order: list[tuple[frozenset[int], frozenset[int]]] = []

    def state_of(pair) -> int:
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
        return index[pair]

    start = frozenset({a.initial})
    state_of((start, start))
    transitions = []
    i = 0
    while i < len(order):
        s, b = order[i]
        src = index[(s, b)]
        for letter in a.alphabet:
            s2 = a.post(s, letter)
            safe = frozenset(
                d for q in b for d, rank in a.successors(q, letter) if rank == 0)
            if safe:
                rank, b2 = 0, safe
            else:
                rank, b2 = 1, s2
            assert (rank == 1) == (not safe)
            transitions.append(Transition(src, letter, state_of((s2, b2)), rank))
        i += 1
    assert len(order) <= 3 ** a.num_states
    monitor = Automaton.build(
        f"breakpoint({a.name})", a.alphabet, len(order), 0, "parity",
        transitions, parity=(0, 1))
    assert is_deterministic(monitor) and is_complete(monitor)
    bound = config.capped_lasso_bound(len(a.alphabet))
    verdict = equivalent_on_lassos(a, monitor, bound)
    assert verdict.equivalent, (
        f"breakpoint monitor disagrees with source on {verdict.counterexample}")
    return Monitor(monitor, "breakpoint")


def _reachability_monitor(a: Automaton) -> Monitor:
    """Subset tracking with an accepting sink entered when the reachable set
    crosses an accepting transition (deterministic Buchi)."""
    index: dict[frozenset[int], int] = {}
    order: list[frozenset[int]] = []

    def state_of(s) -> int:
        if s not in index:
            index[s] = len(order)
            order.append(s)
        return index[s]

    state_of(frozenset({a.initial}))
    transitions = []
    sink_needed = False
    i = 0
    while i < len(order):
        s = order[i]
        src = index[s]
        for letter in a.alphabet:
            hit = any(rank == 1
                      for q in s for _, rank in a.successors(q, letter))
            if hit:
                sink_needed = True
                transitions.append(Transition(src, letter, -1, 2))
            else:
                transitions.append(Transition(src, letter, state_of(a.post(s, letter)), 1))
        i += 1
    sink = len(order)
    fixed = [t if t.dst >= 0 else Transition(t.src, t.letter, sink, t.rank)
             for t in transitions]
    for letter in a.alphabet:
        fixed.append(Transition(sink, letter, sink, 2))
    monitor = Automaton.build(
        f"reach-subset({a.name})", a.alphabet, sink + 1, 0, "parity",
        fixed, parity=(1, 2))
    assert is_deterministic(monitor) and is_complete(monitor)
    return Monitor(monitor, "subset")


def resolve_monitor(a: AnyAutomaton, user: Optional[Automaton] = None) -> Monitor:
    """Pick or validate a deterministic monitor for the automaton's language.

    Buchi, general parity and multi-channel automata need a user-supplied
    monitor (we deliberately do not implement full omega-determinization);
    it is validated against the source by the bounded lasso oracle.
    """
    if isinstance(a, MultiAutomaton):
        return _user_monitor(a, user)
    if a.condition == "finite":
        return subset_construction(a)
    if a.condition in ("safety", "cobuchi"):
        return breakpoint_construction(canonical_parity(a))
    if a.condition == "parity" and a.rank_range == (0, 1):
        return breakpoint_construction(a)
    if a.condition == "reachability":
        return _reachability_monitor(a)
    if user is None and is_deterministic(a):
        return _user_monitor(a, a)  # a deterministic automaton monitors itself
    return _user_monitor(a, user)


def monitor_to_text(monitor: Monitor) -> str:
    from .textio import format_automaton
    return format_automaton(monitor.automaton,
                            comment=f"provenance: {monitor.provenance}")


def monitor_from_text(text: str, source: str = "<string>") -> Monitor:
    from .textio import parse_automaton, parse_provenance
    automaton = parse_automaton(text, source)
    return Monitor(automaton, parse_provenance(text) or "user")


def _user_monitor(a: AnyAutomaton, user: Optional[Automaton]) -> Monitor:
    if user is None:
        raise MissingMonitor(
            f"{getattr(a, 'condition', 'multi-channel')} automaton {a.name} needs a "
            "user-supplied deterministic monitor")
    if user.condition == "finite":
        raise ValueError("user monitor must be an infinite-word automaton")
    if not is_deterministic(user):
        raise ValueError("user monitor must be deterministic")
    normalized = complete(canonical_parity(user))
    bound = config.capped_lasso_bound(len(a.alphabet))
    verdict = equivalent_on_lassos(a, normalized, bound)
    if not verdict.equivalent:
        raise MonitorMismatch(verdict.counterexample)
    return Monitor(normalized, "user")
