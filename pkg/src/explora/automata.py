"""Non-deterministic automata on finite and infinite words.

States are contiguous integers ``0..n-1``.  Acceptance is transition-based:
every transition carries an integer rank whose meaning depends on the
condition tag:

* ``finite``        -- ranks are ignored; a run accepts iff it ends in an
                       accepting state,
* ``safety``        -- rank 1 marks membership in the accepting transition
                       set F; a run accepts iff it stays in F forever,
* ``reachability``  -- rank 1 marks F; a run accepts iff it takes some
                       F-transition,
* ``buchi``         -- ranks in {1, 2}; rank 2 infinitely often accepts,
* ``cobuchi``       -- ranks in {0, 1}; finitely many rank 1 accepts,
* ``parity``        -- ranks in [lo, hi]; a run accepts iff the maximal rank
                       seen infinitely often is even (max-parity convention).

All values are immutable after construction and operations are pure
functions, so everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, NamedTuple, Optional, Sequence, Union

CONDITIONS = ("finite", "safety", "reachability", "buchi", "cobuchi", "parity")

# Fixed rank ranges for the non-parity tags.
_TAG_RANGE = {
    "finite": (0, 0),
    "safety": (0, 1),
    "reachability": (0, 1),
    "buchi": (1, 2),
    "cobuchi": (0, 1),
}


class Transition(NamedTuple):
    src: int
    letter: str
    dst: int
    rank: int = 0


class MultiTransition(NamedTuple):
    src: int
    letter: str
    dst: int
    ranks: tuple[int, ...] = ()


@dataclass(frozen=True)
class Automaton:
    name: str
    alphabet: tuple[str, ...]
    num_states: int
    initial: int
    condition: str
    transitions: frozenset[Transition]
    accepting: frozenset[int] = frozenset()
    lo: int = 0
    hi: int = 0

    @classmethod
    def build(cls, name, alphabet, num_states, initial, condition, transitions,
              accepting=(), parity: Optional[tuple[int, int]] = None) -> "Automaton":
        """Normalizing constructor: fixes collection types and rank bounds."""
        if condition not in CONDITIONS:
            raise ValueError(f"unknown condition tag {condition!r}")
        if condition == "parity":
            if parity is None:
                raise ValueError("parity condition needs (lo, hi)")
            lo, hi = parity
        else:
            lo, hi = _TAG_RANGE[condition]
        return cls(
            name=name,
            alphabet=tuple(alphabet),
            num_states=num_states,
            initial=initial,
            condition=condition,
            transitions=frozenset(Transition(*t) for t in transitions),
            accepting=frozenset(accepting),
            lo=lo,
            hi=hi,
        )

    @property
    def is_infinite(self) -> bool:
        return self.condition != "finite"

    @property
    def rank_range(self) -> tuple[int, int]:
        if self.condition == "parity":
            return (self.lo, self.hi)
        return _TAG_RANGE[self.condition]

    @cached_property
    def delta(self) -> dict[tuple[int, str], tuple[tuple[int, int], ...]]:
        """(state, letter) -> sorted tuple of (dst, rank)."""
        table: dict[tuple[int, str], list[tuple[int, int]]] = {}
        for t in sorted(self.transitions):
            table.setdefault((t.src, t.letter), []).append((t.dst, t.rank))
        return {k: tuple(v) for k, v in table.items()}

    def successors(self, state: int, letter: str) -> tuple[tuple[int, int], ...]:
        if letter not in self.alphabet:
            raise ValueError(f"letter {letter!r} not in alphabet of {self.name}")
        return self.delta.get((state, letter), ())

    def post(self, states, letter: str) -> frozenset[int]:
        """Set of successors of a state set under one letter."""
        out = set()
        for q in states:
            out.update(d for d, _ in self.successors(q, letter))
        return frozenset(out)


@dataclass(frozen=True)
class MultiAutomaton:
    """Automaton whose transitions carry one rank per channel; a run accepts
    iff some channel's maximal infinitely-occurring rank is even."""

    name: str
    alphabet: tuple[str, ...]
    num_states: int
    initial: int
    channels: tuple[tuple[int, int], ...]
    transitions: frozenset[MultiTransition]

    @property
    def is_infinite(self) -> bool:
        return True

    @cached_property
    def delta(self) -> dict[tuple[int, str], tuple[tuple[int, tuple[int, ...]], ...]]:
        table: dict[tuple[int, str], list] = {}
        for t in sorted(self.transitions):
            table.setdefault((t.src, t.letter), []).append((t.dst, t.ranks))
        return {k: tuple(v) for k, v in table.items()}

    def successors(self, state: int, letter: str):
        if letter not in self.alphabet:
            raise ValueError(f"letter {letter!r} not in alphabet of {self.name}")
        return self.delta.get((state, letter), ())


AnyAutomaton = Union[Automaton, MultiAutomaton]


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word prefix . period^omega."""

    prefix: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("lasso period must be nonempty")

    @classmethod
    def of(cls, prefix, period) -> "LassoWord":
        return cls(tuple(prefix), tuple(period))

    def letters(self) -> frozenset[str]:
        return frozenset(self.prefix) | frozenset(self.period)

    def rotate(self, i: int) -> "LassoWord":
        """Push i letters of the period into the prefix (same omega-word)."""
        i %= len(self.period)
        return LassoWord(self.prefix + self.period[:i],
                         self.period[i:] + self.period[:i])

    def unrolled(self) -> "LassoWord":
        """Same word written as prefix.period (period.period)^omega."""
        return LassoWord(self.prefix + self.period, self.period + self.period)

    def __str__(self):
        return "".join(self.prefix) + "(" + "".join(self.period) + ")"


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    counterexample: Union[LassoWord, tuple[str, ...], None] = None


# ---------------------------------------------------------------------------
# validation / completion


def validate(a: AnyAutomaton) -> list[str]:
    """All invariant violations, empty iff the automaton is well-formed."""
    out: list[str] = []
    if len(a.alphabet) == 0:
        out.append("empty alphabet")
    if len(set(a.alphabet)) != len(a.alphabet):
        out.append("duplicate letters in alphabet")
    if not (0 <= a.initial < a.num_states):
        out.append(f"initial state {a.initial} out of range")
    multi = isinstance(a, MultiAutomaton)
    if multi:
        ranges = a.channels
    else:
        lo, hi = a.rank_range
        if a.condition == "parity" and a.lo > a.hi:
            out.append(f"empty parity range [{a.lo}, {a.hi}]")
        if a.condition != "finite" and a.accepting:
            out.append("accepting state set is only meaningful for finite acceptance")
        for q in a.accepting:
            if not (0 <= q < a.num_states):
                out.append(f"accepting state {q} out of range")
    for t in sorted(a.transitions):
        if not (0 <= t.src < a.num_states and 0 <= t.dst < a.num_states):
            out.append(f"transition endpoint out of range in {t}")
        if t.letter not in a.alphabet:
            out.append(f"letter {t.letter!r} of {t} not in alphabet")
        if multi:
            if len(t.ranks) != len(ranges):
                out.append(f"rank vector arity mismatch in {t}")
            else:
                for c, r in enumerate(t.ranks):
                    clo, chi = ranges[c]
                    if not (clo <= r <= chi):
                        out.append(f"rank {r} outside channel {c} range in {t}")
        elif a.condition != "finite" and not (lo <= t.rank <= hi):
            out.append(f"rank {t.rank} outside [{lo}, {hi}] in {t}")
    seen = {(t.src, t.letter) for t in a.transitions}
    for q in range(a.num_states):
        for letter in a.alphabet:
            if (q, letter) not in seen:
                out.append(f"incomplete at (state {q}, {letter})")
    return out


def is_complete(a: AnyAutomaton) -> bool:
    seen = {(t.src, t.letter) for t in a.transitions}
    return all((q, l) in seen for q in range(a.num_states) for l in a.alphabet)


def complete(a: Automaton) -> Automaton:
    """Route all missing (state, letter) pairs to a fresh rejecting sink.

    Identity on already-complete automata.  The sink's transitions carry the
    rejecting rank of the condition (the largest odd rank; for an all-even
    parity range the range is widened by one to make room).
    """
    if is_complete(a):
        return a
    sink = a.num_states
    lo, hi = a.rank_range
    if a.condition == "finite":
        rej = 0
    elif a.condition in ("safety", "reachability"):
        rej = 0  # marker: not in F
    else:
        rej = hi if hi % 2 == 1 else hi - 1
        if rej < lo:  # all-even range: widen
            rej = hi + 1
            hi = rej
    trans = set(a.transitions)
    seen = {(t.src, t.letter) for t in trans}
    for q in range(a.num_states + 1):
        for letter in a.alphabet:
            if q == sink or (q, letter) not in seen:
                trans.add(Transition(q, letter, sink, rej))
    return Automaton(
        name=a.name,
        alphabet=a.alphabet,
        num_states=a.num_states + 1,
        initial=a.initial,
        condition=a.condition,
        transitions=frozenset(trans),
        accepting=a.accepting,
        lo=min(a.lo, lo) if a.condition == "parity" else a.lo,
        hi=hi if a.condition == "parity" else a.hi,
    )


def is_deterministic(a: AnyAutomaton) -> bool:
    """Exactly one successor for every (state, letter)."""
    counts: dict[tuple[int, str], int] = {}
    for t in a.transitions:
        counts[(t.src, t.letter)] = counts.get((t.src, t.letter), 0) + 1
    return all(
        counts.get((q, l), 0) == 1
        for q in range(a.num_states)
        for l in a.alphabet
    )


# ---------------------------------------------------------------------------
# membership


def member_finite(a: Automaton, word: Sequence[str]) -> bool:
    """True iff some run on `word` ends in an accepting state."""
    if a.condition != "finite":
        raise ValueError("member_finite needs a finite-acceptance automaton")
    current = {a.initial}
    for letter in word:
        if letter not in a.alphabet:
            raise ValueError(f"letter {letter!r} not in alphabet of {a.name}")
        current = {d for q in current for d, _ in a.successors(q, letter)}
        if not current:
            return False
    return bool(current & a.accepting)


def canonical_parity(a: Automaton) -> Automaton:
    """Normalize an infinite-word automaton to an equivalent parity automaton.

    Buchi and coBuchi ranks are already max-parity ranks ([1,2] and [0,1]);
    safety reroutes every non-accepting transition to a rejecting rank-1 sink,
    reachability reroutes every accepting transition into a rank-2 accepting
    sink.  Language is preserved in all cases.
    """
    if a.condition == "finite":
        raise ValueError("canonical_parity is undefined for finite acceptance")
    if a.condition == "parity":
        return a
    if a.condition in ("buchi", "cobuchi"):
        lo, hi = a.rank_range
        return Automaton(a.name, a.alphabet, a.num_states, a.initial, "parity",
                         a.transitions, frozenset(), lo, hi)
    sink = a.num_states
    trans = set()
    if a.condition == "safety":
        lo, hi = 0, 1
        for t in a.transitions:
            if t.rank == 1:
                trans.add(Transition(t.src, t.letter, t.dst, 0))
            else:
                trans.add(Transition(t.src, t.letter, sink, 1))
        for letter in a.alphabet:
            trans.add(Transition(sink, letter, sink, 1))
    else:  # reachability
        lo, hi = 1, 2
        for t in a.transitions:
            if t.rank == 1:
                trans.add(Transition(t.src, t.letter, sink, 2))
            else:
                trans.add(Transition(t.src, t.letter, t.dst, 1))
        for letter in a.alphabet:
            trans.add(Transition(sink, letter, sink, 2))
    return Automaton(a.name, a.alphabet, a.num_states + 1, a.initial, "parity",
                     frozenset(trans), frozenset(), lo, hi)


def _channel_view(a: AnyAutomaton):
    """(channels, delta) with delta values (dst, rank-vector), after
    normalizing single-channel conditions to max-parity ranks."""
    if isinstance(a, MultiAutomaton):
        return a.channels, a.delta
    if a.condition == "finite":
        raise ValueError("lasso membership needs an infinite-word automaton")
    if a.condition in ("safety", "reachability"):
        a = canonical_parity(a)
    delta = {
        k: tuple((d, (r,)) for d, r in v)
        for k, v in a.delta.items()
    }
    return (a.rank_range,), delta


def member_lasso(a: AnyAutomaton, w: LassoWord) -> bool:
    """True iff some run on the ultimately periodic word is accepting.

    Unrolls the lasso into |prefix| + |period| positions, builds the product
    graph, and for each channel and even rank r searches the period layer for
    a reachable cycle that uses only ranks <= r on that channel and contains
    a rank-r transition.
    """
    for letter in w.prefix + w.period:
        if letter not in a.alphabet:
            raise ValueError(f"letter {letter!r} not in alphabet of {a.name}")
    channels, delta = _channel_view(a)
    unroll = w.prefix + w.period
    length, wrap = len(unroll), len(w.prefix)

    def step(i: int) -> int:
        return i + 1 if i + 1 < length else wrap

    # reachable product nodes
    init = (a.initial, 0)
    reachable = {init}
    frontier = [init]
    while frontier:
        q, i = frontier.pop()
        for d, _ in delta.get((q, unroll[i]), ()):
            node = (d, step(i))
            if node not in reachable:
                reachable.add(node)
                frontier.append(node)

    period_edges = [
        ((q, i), (d, step(i)), vec)
        for (q, i) in reachable
        if i >= wrap
        for d, vec in delta.get((q, unroll[i]), ())
    ]
    for c, (lo, hi) in enumerate(channels):
        start = lo if lo % 2 == 0 else lo + 1
        for r in range(start, hi + 1, 2):
            sub = [(u, v) for u, v, vec in period_edges if vec[c] <= r]
            succ: dict = {}
            for u, v in sub:
                succ.setdefault(u, []).append(v)
            nodes = {u for u, _ in sub} | {v for _, v in sub}
            comp = strongly_connected_components(nodes, lambda n: succ.get(n, ()))
            if any(
                vec[c] == r and comp[u] == comp[v]
                for u, v, vec in period_edges
                if vec[c] <= r
            ):
                return True
    return False


def strongly_connected_components(nodes, succ) -> dict:
    """Iterative Tarjan; maps each node to a component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    count = 0
    ncomp = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = count
        count += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(succ(root)))]
        while work:
            v, it = work[-1]
            pushed = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = count
                    count += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(succ(u))))
                    pushed = True
                    break
                if u in on_stack and index[u] < low[v]:
                    low[v] = index[u]
            if pushed:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == index[v]:
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp[u] = ncomp
                    if u == v:
                        break
                ncomp += 1
    return comp


# ---------------------------------------------------------------------------
# bounded equivalence oracles


def iter_lassos(alphabet, bound: int) -> Iterator[LassoWord]:
    """All lassos with |prefix| + |period| <= bound, in the fixed order
    (total length, prefix length, word content) with sorted letters."""
    letters = sorted(alphabet)
    for total in range(1, bound + 1):
        for plen in range(total):
            for word in product(letters, repeat=total):
                yield LassoWord(word[:plen], word[plen:])


def iter_words(alphabet, bound: int) -> Iterator[tuple[str, ...]]:
    letters = sorted(alphabet)
    for length in range(bound + 1):
        yield from product(letters, repeat=length)


def equivalent_on_lassos(a: AnyAutomaton, b: AnyAutomaton, bound: int) -> EquivalenceVerdict:
    """Compare lasso membership on every lasso up to the bound.

    Sound as a refutation oracle; as an equivalence check it is exact only
    relative to the bound.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("alphabet mismatch")
    for w in iter_lassos(a.alphabet, bound):
        if member_lasso(a, w) != member_lasso(b, w):
            return EquivalenceVerdict(False, w)
    return EquivalenceVerdict(True)


def equivalent_on_words(a: Automaton, b: Automaton, bound: int) -> EquivalenceVerdict:
    """Finite-word analogue of equivalent_on_lassos."""
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("alphabet mismatch")
    for word in iter_words(a.alphabet, bound):
        if member_finite(a, word) != member_finite(b, word):
            return EquivalenceVerdict(False, word)
    return EquivalenceVerdict(True)


def reachable_states(a: AnyAutomaton) -> frozenset[int]:
    seen = {a.initial}
    frontier = [a.initial]
    while frontier:
        q = frontier.pop()
        for letter in a.alphabet:
            for d, *_ in a.delta.get((q, letter), ()):
                if d not in seen:
                    seen.add(d)
                    frontier.append(d)
    return frozenset(seen)
