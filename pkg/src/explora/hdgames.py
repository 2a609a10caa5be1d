"""Token games: Eve's single token against Adam's k tokens.

Eve wins a play if her token builds an accepting run or all of Adam's tokens
build rejecting runs.  For explorable automata, Eve winning the 2-token game
characterizes history-determinism, which makes the 2-token game a fast HD
check whose precondition (a verified explorability witness) is enforced by
the API.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import config
from .automata import Automaton, canonical_parity, complete
from .errors import ChannelBudgetExceeded, UnverifiedExplorability
from .explorability import is_k_explorable
from .games import (Arena, MaxEvenParity, Not, Objective, Or, all_of, solve)

EVE = "eve"
ADAM = "adam"


@dataclass(frozen=True)
class TokenGameSpec:
    automaton: Automaton
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Adam needs at least one token")
        if not self.automaton.is_infinite:
            raise ValueError("token games are defined on infinite-word automata")


def build_token_game(a: Automaton, k: int) -> tuple[Arena, Objective]:
    """Full (unpruned) arena of the k-token game.

    Positions are (eve, adam-tuple) plus letter micro-positions with an
    E/A turn marker; the position count is exactly n^(k+1) * (1 + 2|Sigma|).
    Channel 0 carries Eve's transition ranks, channels 1..k Adam's.
    """
    spec = TokenGameSpec(a, k)
    a = canonical_parity(complete(spec.automaton))
    if k + 1 > config.channel_budget():
        raise ChannelBudgetExceeded(
            f"{k + 1} channels exceed the budget of {config.channel_budget()}")
    lo, hi = a.rank_range
    channels = ((lo, hi),) * (k + 1)
    neutral = tuple(lo for _ in range(k + 1))
    n = a.num_states

    index: dict = {}
    order: list = []
    states = range(n)
    for key in product(states, repeat=k + 1):
        index[key] = len(order)
        order.append(key)
    for key in product(states, repeat=k + 1):
        for letter in a.alphabet:
            for turn in ("E", "A"):
                index[key + (letter, turn)] = len(order)
                order.append(key + (letter, turn))

    edges: list[tuple] = []
    for key in order:
        if len(key) == k + 1:
            out = [(index[key + (letter, "E")], neutral) for letter in a.alphabet]
        else:
            eve, adam, letter, turn = key[0], key[1:k + 1], key[-2], key[-1]
            out = []
            if turn == "E":
                for dst, rank in a.successors(eve, letter):
                    color = (rank,) + (lo,) * k
                    out.append((index[(dst,) + adam + (letter, "A")], color))
            else:
                options = [a.successors(q, letter) for q in adam]
                for combo in product(*options):
                    dsts = tuple(d for d, _ in combo)
                    color = (lo,) + tuple(r for _, r in combo)
                    out.append((index[(eve,) + dsts], color))
        edges.append(tuple(out))

    arena = Arena(
        owner=tuple(0 if len(key) > k + 1 and key[-1] == "E" else 1 for key in order),
        edges=tuple(edges),
        initial=index[tuple([a.initial] * (k + 1))],
        channels=channels,
        labels=tuple(order),
    )
    assert arena.num_positions == n ** (k + 1) * (1 + 2 * len(a.alphabet))
    if spec.automaton.condition == "buchi" and k == 2:
        assert len(arena.occurring_colors()) <= 8
    objective = Or(MaxEvenParity(0),
                   all_of([Not(MaxEvenParity(c)) for c in range(1, k + 1)]))
    return arena, objective


def g2_winner(a: Automaton) -> str:
    """Winner of the 2-token game from the initial position."""
    arena, objective = build_token_game(a, 2)
    result = solve(arena, objective)
    return EVE if arena.initial in result.winning_region_0 else ADAM


def is_hd_assuming_explorable(a: Automaton, k_witness: Optional[int] = None,
                              user_monitor: Optional[Automaton] = None,
                              unchecked: bool = False) -> bool:
    """HD check through the 2-token game; only valid on explorable automata.

    The hypothesis is enforced: either pass a token count k_witness that is
    re-verified via the explorability game, or explicitly opt out with
    unchecked=True.
    """
    if not unchecked:
        if k_witness is None:
            raise UnverifiedExplorability(
                "supply k_witness (verified token count) or unchecked=True")
        if not is_k_explorable(a, k_witness, user_monitor):
            raise UnverifiedExplorability(
                f"automaton is not {k_witness}-explorable; the 2-token game "
                "does not characterize HDness here")
    return g2_winner(a) == EVE


def is_hd_exact(a, user_monitor: Optional[Automaton] = None) -> bool:
    """History-determinism as 1-explorability (exact, any condition)."""
    return is_k_explorable(a, 1, user_monitor)
