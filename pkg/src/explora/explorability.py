"""k-explorability games, bounded explorability search, and the population
control reductions.

The k-explorability game puts k interchangeable tokens on the initial state;
the letter player (Spoiler) picks letters, the token player (Determiniser)
moves every token along a matching transition, and Determiniser wins if some
token's run is accepting whenever the chosen word is in the language.

For finite-word automata the game is a safety game over token multisets
paired with a subset monitor ("never: monitor accepting while no token is"),
solved directly by attractor computation.  For infinite-word automata the
game keeps token tuples (per-token rank channels must follow actual runs, so
the multiset quotient does not apply) and is solved through the parity
pipeline with the objective

    NOT MaxEvenParity(monitor) OR (OR over the token channels).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Optional

from . import config
from .automata import (Automaton, AnyAutomaton, MultiAutomaton,
                       canonical_parity, complete, member_finite, iter_words)
from .determinize import Monitor, resolve_monitor
from .errors import ChannelBudgetExceeded, NonSinkTarget
from .games import (Arena, MaxEvenParity, Not, Or, Strategy, any_of, solve)


@dataclass(frozen=True)
class PCPInstance:
    """NFA with a distinguished target state, for the population game."""

    nfa: Automaton
    target: int


@dataclass(frozen=True)
class ExplorabilityVerdict:
    status: str  # "explorable-with" | "not-explorable-up-to"
    k: int
    witness: Optional[Strategy] = None

    @property
    def is_explorable(self) -> Optional[bool]:
        return True if self.status == "explorable-with" else None


# ---------------------------------------------------------------------------
# shared helpers


def _explore_graph(initial_key, expand):
    """BFS-intern a lazily expanded game graph; returns (keys in discovery
    order, edge lists over indices)."""
    index = {initial_key: 0}
    order = [initial_key]
    edges = []
    i = 0
    while i < len(order):
        out = []
        for nxt, color in expand(order[i]):
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
            out.append((j, color))
        edges.append(tuple(out))
        i += 1
    return order, edges


def _multiset_moves(a: AnyAutomaton, tokens: tuple[int, ...], letter: str):
    """Distinct successor multisets reachable by moving every token."""
    per_state = []
    for state, count in sorted(Counter(tokens).items()):
        dsts = sorted({d for d, *_ in a.successors(state, letter)})
        per_state.append(list(combinations_with_replacement(dsts, count)))
    return sorted({
        tuple(sorted(x for group in combo for x in group))
        for combo in product(*per_state)
    })


def _tuple_moves(a: AnyAutomaton, tokens: tuple[int, ...], letter: str):
    """All joint token moves with their per-token rank vectors."""
    options = []
    for state in tokens:
        succ = a.successors(state, letter)
        if isinstance(a, MultiAutomaton):
            options.append([(d, ranks) for d, ranks in succ])
        else:
            options.append([(d, (r,)) for d, r in succ])
    moves = set()
    for combo in product(*options):
        dsts = tuple(d for d, _ in combo)
        ranks = tuple(r for _, rk in combo for r in rk)
        moves.add((dsts, ranks))
    return sorted(moves)


def _spoiler_attractor(arena: Arena, bad_ids) -> set[int]:
    """Positions from which the letter player forces reaching a bad sink."""
    n = arena.num_positions
    pred: list[list[int]] = [[] for _ in range(n)]
    for p in range(n):
        for dst, _ in arena.edges[p]:
            pred[dst].append(p)
    attr = set(bad_ids)
    queue = sorted(attr)
    cnt: dict[int, int] = {}
    while queue:
        v = queue.pop()
        for u in pred[v]:
            if u in attr:
                continue
            if arena.owner[u] == 1:
                attr.add(u)
                queue.append(u)
            else:
                if u not in cnt:
                    cnt[u] = len(arena.edges[u])
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr


def _safety_witness(arena: Arena, attr: set[int]) -> Strategy:
    moves = {}
    for p in range(arena.num_positions):
        if arena.owner[p] == 0 and p not in attr:
            moves[p] = min(i for i, (dst, _) in enumerate(arena.edges[p])
                           if dst not in attr)
    return Strategy(0, moves)


# ---------------------------------------------------------------------------
# the k-explorability game


def _token_channels(a: AnyAutomaton) -> tuple[tuple[int, int], ...]:
    if isinstance(a, MultiAutomaton):
        return a.channels
    return (a.rank_range,)


def _build_finite_game(a: Automaton, monitor: Monitor, k: int, quotient: bool):
    mon = monitor.automaton
    mon_delta = {key: succ[0][0] for key, succ in mon.delta.items()}
    start = tuple([a.initial] * k)

    def bad(tokens, m) -> bool:
        return m in mon.accepting and not any(q in a.accepting for q in tokens)

    def expand(key):
        if len(key) == 2:
            tokens, m = key
            if bad(tokens, m):
                return [(key, (2,))]
            return [((tokens, m, letter), (1,)) for letter in a.alphabet]
        tokens, m, letter = key
        m2 = mon_delta[(m, letter)]
        if quotient:
            succs = _multiset_moves(a, tokens, letter)
        else:
            succs = [dsts for dsts, _ in _tuple_moves(a, tokens, letter)]
        return [((dsts, m2), (1,)) for dsts in succs]

    order, edges = _explore_graph((start, mon.initial), expand)
    arena = Arena(
        owner=tuple(1 if len(key) == 2 else 0 for key in order),
        edges=tuple(edges),
        initial=0,
        channels=((1, 2),),
        labels=tuple(order),
    )
    bad_ids = [i for i, key in enumerate(order) if len(key) == 2 and bad(*key)]
    return arena, Not(MaxEvenParity(0)), bad_ids


def _build_infinite_game(a: AnyAutomaton, monitor: Monitor, k: int):
    if isinstance(a, Automaton):
        a = canonical_parity(a)  # token ranks must be max-parity ranks
    mon = monitor.automaton
    mon_delta = {key: succ[0] for key, succ in mon.delta.items()}
    token_channels = _token_channels(a)
    channels = (mon.rank_range,) + token_channels * k
    if len(channels) > config.channel_budget():
        raise ChannelBudgetExceeded(
            f"{len(channels)} channels exceed the budget of "
            f"{config.channel_budget()} (set EXPLORE_CHANNEL_BUDGET to raise)")
    neutral = tuple(lo for lo, _ in channels)
    start = (tuple([a.initial] * k), mon.initial)

    def expand(key):
        if len(key) == 2:
            tokens, m = key
            return [((tokens, m, letter), neutral) for letter in a.alphabet]
        tokens, m, letter = key
        m2, mrank = mon_delta[(m, letter)]
        return [(((dsts, m2)), (mrank,) + ranks)
                for dsts, ranks in _tuple_moves(a, tokens, letter)]

    order, edges = _explore_graph(start, expand)
    arena = Arena(
        owner=tuple(1 if len(key) == 2 else 0 for key in order),
        edges=tuple(edges),
        initial=0,
        channels=channels,
        labels=tuple(order),
    )
    width = len(token_channels) * k
    objective = Or(Not(MaxEvenParity(0)),
                   any_of([MaxEvenParity(c) for c in range(1, width + 1)]))
    return arena, objective


def build_k_explorability_game(a: AnyAutomaton, monitor: Monitor, k: int,
                               quotient: Optional[bool] = None):
    """Arena and Determiniser objective of the k-token explorability game.

    Finite-word automata get the safety formulation over token multisets
    (quotient defaults to True there); infinite-word automata keep token
    tuples, since per-token parity channels are only meaningful along actual
    runs.
    """
    if k < 1:
        raise ValueError("token count must be at least 1")
    if monitor.is_finite:
        arena, obj, _ = _build_finite_game(
            a, monitor, k, quotient=True if quotient is None else quotient)
        return arena, obj
    if quotient:
        raise ValueError("the multiset quotient is only sound for the "
                         "finite-word safety formulation")
    return _build_infinite_game(a, monitor, k)


def is_k_explorable(a: AnyAutomaton, k: int,
                    user_monitor: Optional[Automaton] = None,
                    quotient: Optional[bool] = None) -> bool:
    """True iff the token player wins the k-explorability game."""
    if k < 1:
        raise ValueError("token count must be at least 1")
    if isinstance(a, Automaton):
        a = complete(a)
    monitor = resolve_monitor(a, user_monitor)
    if monitor.is_finite:
        arena, _, bad = _build_finite_game(
            a, monitor, k, quotient=True if quotient is None else quotient)
        attr = _spoiler_attractor(arena, bad)
        return arena.initial not in attr
    arena, objective = _build_infinite_game(a, monitor, k)
    result = solve(arena, objective)
    return arena.initial in result.winning_region_0


def explorability_witness(a: AnyAutomaton, k: int,
                          user_monitor: Optional[Automaton] = None) -> Optional[Strategy]:
    """Winning token-player strategy at k tokens, if one exists."""
    if isinstance(a, Automaton):
        a = complete(a)
    monitor = resolve_monitor(a, user_monitor)
    if monitor.is_finite:
        arena, _, bad = _build_finite_game(a, monitor, k, quotient=True)
        attr = _spoiler_attractor(arena, bad)
        if arena.initial in attr:
            return None
        raw = _safety_witness(arena, attr)
        moves = {str(arena.labels[p]): str(arena.labels[arena.edges[p][i][0]])
                 for p, i in raw.moves.items()}
        return Strategy(0, moves)
    arena, objective = _build_infinite_game(a, monitor, k)
    result = solve(arena, objective)
    if arena.initial not in result.winning_region_0:
        return None
    return result.strategy_0


def explorability_bounded(a: AnyAutomaton, kmax: int,
                          user_monitor: Optional[Automaton] = None) -> ExplorabilityVerdict:
    """Iterative-deepening search for the least witnessing token count.

    k-explorability is monotone in k, so the first success is the least k.
    A negative verdict is explicitly inconclusive: it only covers k <= kmax.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    for k in range(1, kmax + 1):
        if is_k_explorable(a, k, user_monitor):
            return ExplorabilityVerdict("explorable-with", k,
                                        explorability_witness(a, k, user_monitor))
    return ExplorabilityVerdict("not-explorable-up-to", kmax)


# ---------------------------------------------------------------------------
# population control


def _fresh_letter(alphabet, base: str) -> str:
    letter = base
    while letter in alphabet:
        letter = "_" + letter
    return letter


def pcp_reduce(a: Automaton) -> PCPInstance:
    """Subset-tracking NFA whose population game mirrors the k-explorability
    game: states are (state, reachable set) pairs plus a target and a dead
    sink; the test letter moves exactly the pairs witnessing a lost round to
    the target."""
    if a.condition != "finite":
        raise ValueError("pcp_reduce needs a finite-acceptance automaton")
    a = complete(a)
    test = _fresh_letter(a.alphabet, "a_test")
    index: dict[tuple[int, frozenset[int]], int] = {}
    order: list[tuple[int, frozenset[int]]] = []

    def state_of(pair) -> int:
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
        return index[pair]

    state_of((a.initial, frozenset({a.initial})))
    transitions = []
    i = 0
    while i < len(order):
        p, reach = order[i]
        src = index[(p, reach)]
        for letter in a.alphabet:
            reach2 = a.post(reach, letter)
            for q, _ in a.successors(p, letter):
                transitions.append((src, letter, state_of((q, reach2)), 0))
        i += 1
    target = len(order)
    dead = target + 1
    for i, (p, reach) in enumerate(order):
        hit = p not in a.accepting and bool(reach & a.accepting)
        transitions.append((i, test, target if hit else dead, 0))
    for sink in (target, dead):
        for letter in list(a.alphabet) + [test]:
            transitions.append((sink, letter, sink, 0))
    nfa = Automaton.build(
        f"pcp({a.name})", list(a.alphabet) + [test], dead + 1, 0, "finite",
        transitions)
    return PCPInstance(nfa, target)


def is_k_population_winnable(inst: PCPInstance, k: int) -> bool:
    """True iff the token player avoids ever having all k tokens herded into
    the target state (safety game over token multisets)."""
    if k < 1:
        raise ValueError("token count must be at least 1")
    nfa = complete(inst.nfa)
    herd = tuple([inst.target] * k)
    start = tuple([nfa.initial] * k)

    def expand(key):
        if len(key) == 1:
            (tokens,) = key
            if tokens == herd:
                return [(key, (2,))]
            return [((tokens, letter), (1,)) for letter in nfa.alphabet]
        tokens, letter = key
        return [(((dsts,)), (1,)) for dsts in _multiset_moves(nfa, tokens, letter)]

    order, edges = _explore_graph((start,), expand)
    arena = Arena(
        owner=tuple(1 if len(key) == 1 else 0 for key in order),
        edges=tuple(edges),
        initial=0,
        channels=((1, 2),),
        labels=tuple(order),
    )
    bad_ids = [i for i, key in enumerate(order) if len(key) == 1 and key[0] == herd]
    attr = _spoiler_attractor(arena, bad_ids)
    return arena.initial not in attr


def pcp_to_explorability(inst: PCPInstance) -> Automaton:
    """Product of the instance NFA (accepting everywhere but the target) with
    the fixed 4-state all-accepting-but-non-explorable automaton, under union
    acceptance; the result accepts every word and is k-explorable exactly when
    the token player survives the k-population game."""
    from .generators import gen_c

    nfa = complete(inst.nfa)
    targ = inst.target
    for letter in nfa.alphabet:
        succ = nfa.successors(targ, letter)
        if not succ or any(d != targ for d, _ in succ):
            raise NonSinkTarget(f"target state {targ} is not a sink (letter {letter})")
    c = gen_c()
    letters = [f"{x},{y}" for x in nfa.alphabet for y in c.alphabet]
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def state_of(pair) -> int:
        if pair not in index:
            index[pair] = len(order)
            order.append(pair)
        return index[pair]

    state_of((nfa.initial, c.initial))
    transitions = []
    i = 0
    while i < len(order):
        p, pc = order[i]
        src = index[(p, pc)]
        for x in nfa.alphabet:
            for y in c.alphabet:
                for q, _ in nfa.successors(p, x):
                    for qc, _ in c.successors(pc, y):
                        transitions.append((src, f"{x},{y}", state_of((q, qc)), 0))
        i += 1
    accepting = [i for i, (p, pc) in enumerate(order)
                 if p != targ or pc in c.accepting]
    out = Automaton.build(
        f"explo({inst.nfa.name})", letters, len(order), 0, "finite",
        transitions, accepting)
    # union with the all-accepting component makes the language universal
    for word in iter_words(out.alphabet, 2):
        assert member_finite(out, word), f"product unexpectedly rejects {word}"
    return out
