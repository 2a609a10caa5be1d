"""Two-player games on explicit arenas with parity-algebra objectives.

Arenas are finite graphs whose edges carry integer rank tuples (one entry per
channel).  Objectives are boolean combinations of per-channel atoms "the
maximal rank appearing infinitely often on channel c is even"; owner 0 is the
protagonist of the objective.  Such an objective is compiled into a single
max-parity condition by building the Zielonka tree of the induced Muller
condition over occurring color tuples, deriving a deterministic parity
condition automaton from it, and taking the product with the arena.  The
resulting single-channel parity game is solved by the recursive (Zielonka)
algorithm with positional strategy extraction, and strategies are verified
independently by cycle analysis.

All tie-breaking (attractor processing order, strategy edge choice, tree child
order) is by ascending id, so outputs are deterministic.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Optional

from .automata import strongly_connected_components
from .errors import ParseError

Color = tuple[int, ...]


# ---------------------------------------------------------------------------
# arenas


@dataclass(frozen=True)
class Arena:
    """Game graph: owner-0/owner-1 positions, colored edges, initial position.

    ``edges[p]`` is a tuple of ``(dst, color)`` pairs; every position must
    have at least one outgoing edge (plays are infinite).
    """

    owner: tuple[int, ...]
    edges: tuple[tuple[tuple[int, Color], ...], ...]
    initial: int
    channels: tuple[tuple[int, int], ...]
    labels: Optional[tuple] = None

    @property
    def num_positions(self) -> int:
        return len(self.owner)

    def validate(self) -> list[str]:
        out = []
        n = self.num_positions
        if len(self.edges) != n:
            out.append("edge table size differs from position count")
        if not (0 <= self.initial < n):
            out.append(f"initial position {self.initial} out of range")
        for p, outgoing in enumerate(self.edges):
            if not outgoing:
                out.append(f"position {p} has no outgoing edge")
            for dst, color in outgoing:
                if not (0 <= dst < n):
                    out.append(f"edge target {dst} out of range")
                if len(color) != len(self.channels):
                    out.append(f"color arity mismatch on edge {p}->{dst}")
                else:
                    for c, r in enumerate(color):
                        lo, hi = self.channels[c]
                        if not (lo <= r <= hi):
                            out.append(f"rank {r} outside channel {c} on edge {p}->{dst}")
        return out

    def occurring_colors(self) -> frozenset[Color]:
        return frozenset(color for outgoing in self.edges for _, color in outgoing)

    def neutral_color(self) -> Color:
        """All-minimum tuple; never changes any channel's maximum."""
        return tuple(lo for lo, _ in self.channels)


# ---------------------------------------------------------------------------
# objectives


class Objective:
    def holds(self, tuples: Iterable[Color]) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class MaxEvenParity(Objective):
    channel: int

    def holds(self, tuples):
        return max(t[self.channel] for t in tuples) % 2 == 0


@dataclass(frozen=True)
class Not(Objective):
    sub: Objective

    def holds(self, tuples):
        return not self.sub.holds(tuples)


@dataclass(frozen=True)
class And(Objective):
    left: Objective
    right: Objective

    def holds(self, tuples):
        return self.left.holds(tuples) and self.right.holds(tuples)


@dataclass(frozen=True)
class Or(Objective):
    left: Objective
    right: Objective

    def holds(self, tuples):
        return self.left.holds(tuples) or self.right.holds(tuples)


def any_of(objectives) -> Objective:
    return reduce(Or, objectives)


def all_of(objectives) -> Objective:
    return reduce(And, objectives)


def max_channel(obj: Objective) -> int:
    if isinstance(obj, MaxEvenParity):
        return obj.channel
    if isinstance(obj, Not):
        return max_channel(obj.sub)
    return max(max_channel(obj.left), max_channel(obj.right))


def format_objective(obj: Objective) -> str:
    if isinstance(obj, MaxEvenParity):
        return f"p{obj.channel}"
    if isinstance(obj, Not):
        return f"not {format_objective(obj.sub)}"
    tag = "and" if isinstance(obj, And) else "or"
    return f"{tag} {format_objective(obj.left)} {format_objective(obj.right)}"


def parse_objective(text: str, source: str = "<objective>") -> Objective:
    """Prefix notation: ``p<channel>``, ``not E``, ``and E E``, ``or E E``."""
    tokens = text.split()
    pos = 0

    def expr() -> Objective:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(source, 1, "an objective term")
        tok = tokens[pos]
        pos += 1
        if tok == "not":
            return Not(expr())
        if tok in ("and", "or"):
            cls = And if tok == "and" else Or
            return cls(expr(), expr())
        if tok.startswith("p") and tok[1:].isdigit():
            return MaxEvenParity(int(tok[1:]))
        raise ParseError(source, 1, f"p<channel>/not/and/or, got {tok!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(source, 1, "end of objective expression")
    return result


# ---------------------------------------------------------------------------
# Zielonka tree and condition automaton


@dataclass
class ZielonkaNode:
    tuples: frozenset[Color]
    member: bool
    children: list["ZielonkaNode"] = field(default_factory=list)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)


def _maximal_differing_subsets(obj: Objective, tuples: frozenset[Color],
                               member: bool) -> list[frozenset[Color]]:
    """Maximal proper subsets whose objective membership flips.

    Because the objective only depends on per-channel maxima, every maximal
    differing subset is a "cap set" {t : t <= v componentwise}, so it suffices
    to enumerate caps over the values present on each channel.
    """
    width = len(next(iter(tuples)))
    values = [sorted({t[c] for t in tuples}) for c in range(width)]
    candidates: set[frozenset[Color]] = set()
    from itertools import product as _product
    for caps in _product(*values):
        sub = frozenset(t for t in tuples if all(t[c] <= caps[c] for c in range(width)))
        if sub and sub != tuples and obj.holds(sub) != member:
            candidates.add(sub)
    return [
        s for s in candidates
        if not any(s < other for other in candidates)
    ]


def zielonka_tree(obj: Objective, occurring: Iterable[Color]) -> ZielonkaNode:
    """Tree of maximal membership-flipping subsets, root = all occurring tuples."""
    tuples = frozenset(occurring)
    if not tuples:
        raise ValueError("need at least one occurring color tuple")

    def build(ts: frozenset[Color]) -> ZielonkaNode:
        member = obj.holds(ts)
        kids = [build(sub) for sub in
                sorted(_maximal_differing_subsets(obj, ts, member),
                       key=lambda s: sorted(s))]
        return ZielonkaNode(ts, member, kids)

    return build(tuples)


@dataclass
class ConditionAutomaton:
    """Deterministic parity automaton over color tuples, derived from a
    Zielonka tree; accepts a tuple word iff the objective holds of the set of
    tuples occurring infinitely often."""

    num_states: int
    initial: int
    lo: int
    hi: int
    delta: dict[tuple[int, Color], tuple[int, int]]
    alphabet: frozenset[Color]


def condition_automaton(tree: ZielonkaNode) -> ConditionAutomaton:
    # collect nodes with depths and parent/branch structure
    leaves: list[ZielonkaNode] = []
    depth: dict[int, int] = {}
    parent: dict[int, Optional[ZielonkaNode]] = {}
    first_leaf: dict[int, int] = {}

    def walk(node: ZielonkaNode, d: int, par: Optional[ZielonkaNode]):
        depth[id(node)] = d
        parent[id(node)] = par
        if not node.children:
            first_leaf[id(node)] = len(leaves)
            leaves.append(node)
        else:
            start = len(leaves)
            for child in node.children:
                walk(child, d + 1, node)
            first_leaf[id(node)] = start

    walk(tree, 0, None)
    height = max(depth[id(l)] for l in leaves)
    shift = 0 if (height % 2 == 0) == tree.member else 1
    # membership alternates along every branch, so this is consistent tree-wide
    prio = lambda node: height - depth[id(node)] + shift

    alphabet = tree.tuples
    delta: dict[tuple[int, Color], tuple[int, int]] = {}
    for idx, leaf in enumerate(leaves):
        branch = [leaf]
        while parent[id(branch[-1])] is not None:
            branch.append(parent[id(branch[-1])])
        # branch[0] = leaf ... branch[-1] = root
        for color in sorted(alphabet):
            support = next(n for n in branch if color in n.tuples)
            if support is leaf:
                target = idx
            else:
                below = branch[branch.index(support) - 1]
                siblings = support.children
                i = next(j for j, c in enumerate(siblings) if c is below)
                target = first_leaf[id(siblings[(i + 1) % len(siblings)])]
            delta[(idx, color)] = (target, prio(support))
    return ConditionAutomaton(
        num_states=len(leaves),
        initial=0,
        lo=shift,
        hi=height + shift,
        delta=delta,
        alphabet=alphabet,
    )


def condition_accepts_periodic(cond: ConditionAutomaton, period: list[Color]) -> bool:
    """Acceptance of the purely periodic tuple word period^omega."""
    seen = {cond.initial: 0}
    states = [cond.initial]
    q = cond.initial
    while True:
        for color in period:
            q, _ = cond.delta[(q, color)]
        if q in seen:
            break
        seen[q] = len(states)
        states.append(q)
    # replay the looping part, collecting ranks
    q = states[seen[q]]
    best = None
    for _ in range(len(states) - seen[q]):
        for color in period:
            q, r = cond.delta[(q, color)]
            best = r if best is None else max(best, r)
    return best % 2 == 0


# ---------------------------------------------------------------------------
# compilation and solving


@dataclass
class Strategy:
    """Positional move map; `moves` sends a position (or a (position, memory)
    pair for compiled-product strategies) to an edge index."""

    owner: int
    moves: dict
    memory: Optional[ConditionAutomaton] = None


@dataclass
class SolveResult:
    winning_region_0: frozenset
    winning_region_1: frozenset
    strategy_0: Strategy
    strategy_1: Strategy


def compile_objective(arena: Arena, obj: Objective) -> tuple[Arena, ConditionAutomaton]:
    """Product of the arena with the condition automaton of the objective.

    Product position ``p * m + q`` pairs arena position p with condition
    state q; the single max-parity channel is won by owner 0 iff the
    objective holds of the play's infinitely-occurring tuples.
    """
    if max_channel(obj) >= len(arena.channels):
        raise ValueError("objective references a channel the arena lacks")
    cond = condition_automaton(zielonka_tree(obj, arena.occurring_colors()))
    m = cond.num_states
    n = arena.num_positions
    owner = []
    edges = []
    for p in range(n):
        for q in range(m):
            owner.append(arena.owner[p])
            out = []
            for dst, color in arena.edges[p]:
                q2, rank = cond.delta[(q, color)]
                out.append((dst * m + q2, (rank,)))
            edges.append(tuple(out))
    assert len(owner) <= n * m
    product = Arena(
        owner=tuple(owner),
        edges=tuple(edges),
        initial=arena.initial * m + cond.initial,
        channels=((cond.lo, cond.hi),),
    )
    return product, cond


def _vertexify(game: Arena):
    """Split each edge through a priority-carrying middle vertex so the
    recursive solver can work with vertex priorities.

    Original positions get the globally minimal rank (never dominates a
    cycle, since every cycle passes through a middle vertex).
    """
    n = game.num_positions
    minrank = game.channels[0][0]
    prio = [minrank] * n
    owner = list(game.owner)
    succ: list[list[int]] = [[] for _ in range(n)]
    middle_of: list[tuple[int, int, int]] = []  # (src, edge index, dst)
    for p in range(n):
        for i, (dst, color) in enumerate(game.edges[p]):
            mid = n + len(middle_of)
            middle_of.append((p, i, dst))
            prio.append(color[0])
            owner.append(0)
            succ[p].append(mid)
            succ.append([dst])
    total = n + len(middle_of)
    pred: list[list[int]] = [[] for _ in range(total)]
    for v in range(total):
        for u in succ[v]:
            pred[u].append(v)
    for lst in pred:
        lst.sort()
    return prio, owner, succ, pred, middle_of


def _attr_with_strategy(sub, targets, player, owner, succ, pred):
    """Player's attractor to `targets` within `sub`, plus the attractor
    strategy for player-owned vertices pulled in along the way."""
    attr = set(targets)
    strat: dict[int, int] = {}
    queue = deque(sorted(targets))
    cnt: dict[int, int] = {}
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in sub or u in attr:
                continue
            if owner[u] == player:
                attr.add(u)
                strat[u] = v
                queue.append(u)
            else:
                if u not in cnt:
                    cnt[u] = sum(1 for w in succ[u] if w in sub)
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, strat


def _zielonka(sub, prio, owner, succ, pred):
    if not sub:
        return set(), set(), {}, {}
    d = max(prio[v] for v in sub)
    sigma = 0 if d % 2 == 0 else 1
    targets = {v for v in sub if prio[v] == d}
    attr, attr_strat = _attr_with_strategy(sub, targets, sigma, owner, succ, pred)
    w0, w1, s0, s1 = _zielonka(sub - attr, prio, owner, succ, pred)
    opp_region = w1 if sigma == 0 else w0
    if not opp_region:
        win = set(sub)
        strat = dict(s0 if sigma == 0 else s1)
        strat.update(attr_strat)
        for v in sorted(targets):
            if owner[v] == sigma and v not in strat:
                strat[v] = min(u for u in succ[v] if u in sub)
        if sigma == 0:
            return win, set(), strat, {}
        return set(), win, {}, strat
    battr, battr_strat = _attr_with_strategy(sub, opp_region, 1 - sigma, owner, succ, pred)
    r0, r1, t0, t1 = _zielonka(sub - battr, prio, owner, succ, pred)
    opp_strat = dict(s1 if sigma == 0 else s0)
    opp_strat.update(battr_strat)
    opp_strat.update(t1 if sigma == 0 else t0)
    if sigma == 0:
        return r0, r1 | battr, t0, opp_strat
    return r0 | battr, r1, opp_strat, t1


def solve_parity(game: Arena, verify: bool = True) -> SolveResult:
    """Solve a single-channel max-parity game with the recursive algorithm.

    Regions partition the positions; both strategies are positional and, when
    `verify` is set, checked by independent cycle analysis.
    """
    if len(game.channels) != 1:
        raise ValueError("solve_parity expects a single-channel game")
    prio, owner, succ, pred, middle_of = _vertexify(game)
    total = len(prio)
    limit = 10_000 + 2 * total
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)
    w0, w1, s0, s1 = _zielonka(set(range(total)), prio, owner, succ, pred)
    n = game.num_positions
    region0 = frozenset(v for v in w0 if v < n)
    region1 = frozenset(v for v in w1 if v < n)
    assert region0 | region1 == frozenset(range(n)) and not (region0 & region1)

    def project(strat, owner_bit):
        moves = {}
        for v, mid in strat.items():
            if v < n and game.owner[v] == owner_bit:
                moves[v] = middle_of[mid - n][1]
        return moves

    strategy_0 = Strategy(0, project(s0, 0))
    strategy_1 = Strategy(1, project(s1, 1))
    result = SolveResult(region0, region1, strategy_0, strategy_1)
    if verify:
        ok0 = verify_strategy(game, region0, strategy_0, 0)
        ok1 = verify_strategy(game, region1, strategy_1, 1)
        assert ok0 and ok1, "extracted strategies failed verification"
    return result


def verify_strategy(game: Arena, region, strategy: Strategy, owner: int) -> bool:
    """True iff the strategy-restricted subgraph stays inside `region` and
    every cycle in it has the owner's winning max-rank parity."""
    region = set(region)
    sub_edges = []
    for p in region:
        if game.owner[p] == owner:
            if p not in strategy.moves:
                return False
            idx = strategy.moves[p]
            if idx >= len(game.edges[p]):
                return False
            chosen = [game.edges[p][idx]]
        else:
            chosen = list(game.edges[p])
        for dst, color in chosen:
            if dst not in region:
                return False
            sub_edges.append((p, dst, color[0]))
    bad_parity = 1 if owner == 0 else 0
    lo, hi = game.channels[0]
    for r in range(lo, hi + 1):
        if r % 2 != bad_parity:
            continue
        edges_r = [(u, v) for u, v, rank in sub_edges if rank <= r]
        succ: dict[int, list[int]] = {}
        for u, v in edges_r:
            succ.setdefault(u, []).append(v)
        nodes = {u for u, _ in edges_r} | {v for _, v in edges_r}
        comp = strongly_connected_components(nodes, lambda x: succ.get(x, ()))
        for u, v, rank in sub_edges:
            if rank == r and comp[u] == comp[v]:
                return False
    return True


def solve(arena: Arena, obj: Objective, verify: bool = True) -> SolveResult:
    """Compile the objective and solve; regions are reported over the original
    positions (each position evaluated with the condition automaton restarted),
    strategies become memory-structured with the condition automaton as memory.
    """
    product, cond = compile_objective(arena, obj)
    inner = solve_parity(product, verify=verify)
    m = cond.num_states
    n = arena.num_positions
    region0 = frozenset(p for p in range(n) if p * m + cond.initial in inner.winning_region_0)
    region1 = frozenset(range(n)) - region0

    def lift(strat):
        moves = {}
        for key, edge_idx in strat.moves.items():
            moves[(key // m, key % m)] = edge_idx
        return Strategy(strat.owner, moves, memory=cond)

    return SolveResult(region0, region1, lift(inner.strategy_0), lift(inner.strategy_1))


# ---------------------------------------------------------------------------
# independent oracle for the disjunction-of-two-parities fragment


def _disjunction_member(colors) -> bool:
    return (max(c[0] for c in colors) % 2 == 0) or (max(c[1] for c in colors) % 2 == 0)


def _disjunction_children(colors: frozenset, member: bool) -> list[frozenset]:
    values0 = sorted({c[0] for c in colors})
    values1 = sorted({c[1] for c in colors})
    candidates = set()
    for u0 in values0:
        for u1 in values1:
            sub = frozenset(c for c in colors if c[0] <= u0 and c[1] <= u1)
            if sub and sub != colors and _disjunction_member(sub) != member:
                candidates.add(sub)
    return [s for s in candidates if not any(s < o for o in candidates)]


def _attr_plain(sub, targets, player, owner, succ, pred):
    attr = set(targets)
    queue = deque(targets)
    cnt: dict[int, int] = {}
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if u not in sub or u in attr:
                continue
            if owner[u] == player:
                attr.add(u)
                queue.append(u)
            else:
                if u not in cnt:
                    cnt[u] = sum(1 for w in succ[u] if w in sub)
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr


def solve_parity_disjunction(arena: Arena) -> tuple[frozenset, frozenset]:
    """Winning regions for owner 0 with the fixed objective "max-even on
    channel 0 OR max-even on channel 1", via direct attractor recursion on the
    multi-colored arena (no condition automaton, no product).

    Independent of the Zielonka-tree pipeline; used to cross-check it on the
    disjunction fragment.
    """
    if len(arena.channels) != 2:
        raise ValueError("the direct solver handles exactly two channels")
    n = arena.num_positions
    color: list[Optional[Color]] = [None] * n
    owner = list(arena.owner)
    succ: list[list[int]] = [[] for _ in range(n)]
    for p in range(n):
        for dst, col in arena.edges[p]:
            mid = len(color)
            color.append(col)
            owner.append(0)
            succ[p].append(mid)
            succ.append([dst])
    total = len(color)
    pred: list[list[int]] = [[] for _ in range(total)]
    for v in range(total):
        for u in succ[v]:
            pred[u].append(v)
    limit = 10_000 + 2 * total
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit)

    def rec(sub: set) -> tuple[set, set]:
        if not sub:
            return set(), set()
        colors = frozenset(color[v] for v in sub if color[v] is not None)
        member = _disjunction_member(colors)
        sigma = 0 if member else 1
        children = _disjunction_children(colors, member)
        if not children:
            return (set(sub), set()) if sigma == 0 else (set(), set(sub))
        for child in children:
            targets = {v for v in sub if color[v] is not None and color[v] not in child}
            attr = _attr_plain(sub, targets, sigma, owner, succ, pred)
            w0, w1 = rec(sub - attr)
            opp = w1 if sigma == 0 else w0
            if opp:
                battr = _attr_plain(sub, opp, 1 - sigma, owner, succ, pred)
                r0, r1 = rec(sub - battr)
                if sigma == 0:
                    return r0, r1 | battr
                return r0 | battr, r1
        return (set(sub), set()) if sigma == 0 else (set(), set(sub))

    w0, w1 = rec(set(range(total)))
    return (frozenset(v for v in w0 if v < n),
            frozenset(v for v in w1 if v < n))


# ---------------------------------------------------------------------------
# generic attractor over labelled graphs (used by the direct safety games)


def attractor(positions, owner_of: Callable, successors: Callable,
              predecessors: Callable, targets, player: int):
    """Player's attractor to `targets` over an arbitrary position universe.

    Returns (attractor set, strategy dict) where the strategy maps attracted
    player-owned positions to a successor inside the attractor.
    """
    attr = set(targets)
    strat: dict = {}
    queue = deque(targets)
    cnt: dict = {}
    pos_set = set(positions)
    while queue:
        v = queue.popleft()
        for u in predecessors(v):
            if u not in pos_set or u in attr:
                continue
            if owner_of(u) == player:
                attr.add(u)
                strat[u] = v
                queue.append(u)
            else:
                if u not in cnt:
                    cnt[u] = sum(1 for w in successors(u) if w in pos_set)
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, strat


# ---------------------------------------------------------------------------
# arena text format (solve-game CLI)


def format_arena(arena: Arena, obj: Optional[Objective] = None) -> str:
    out = ["arena",
           f"positions: {arena.num_positions}",
           f"initial: {arena.initial}",
           f"channels: {len(arena.channels)}"]
    for c, (lo, hi) in enumerate(arena.channels):
        out.append(f"range: {c} {lo} {hi}")
    out.append("owner: " + " ".join(str(o) for o in arena.owner))
    for p in range(arena.num_positions):
        for dst, color in arena.edges[p]:
            out.append(f"e {p} {dst} " + " ".join(map(str, color)))
    if obj is not None:
        out.append("objective: " + format_objective(obj))
    return "\n".join(out) + "\n"


def parse_arena(text: str, source: str = "<string>") -> tuple[Arena, Optional[Objective]]:
    from .textio import _Reader, _is_int  # shared line reader

    r = _Reader(text, source)
    no, line = r.next("'arena' header")
    if line != "arena":
        raise ParseError(source, no, "'arena' header")
    n = r.int_field("positions")
    initial = r.int_field("initial")
    k = r.int_field("channels")
    channels = []
    for _ in range(k):
        no, parts = r.keyword_line("range")
        if len(parts) != 3 or not all(_is_int(p) for p in parts):
            raise ParseError(source, no, "'range: <channel> <lo> <hi>'")
        channels.append((int(parts[1]), int(parts[2])))
    no, parts = r.keyword_line("owner")
    if len(parts) != n or not all(p in ("0", "1") for p in parts):
        raise ParseError(source, no, f"{n} owner bits after 'owner:'")
    owner = tuple(int(p) for p in parts)
    edges: list[list] = [[] for _ in range(n)]
    obj = None
    while r.peek() is not None:
        no, line = r.next("edge or objective line")
        if line.startswith("objective:"):
            obj = parse_objective(line.split(":", 1)[1], source)
            continue
        parts = line.split()
        if parts[0] != "e" or len(parts) != 3 + k:
            raise ParseError(source, no, f"'e <src> <dst>' plus {k} ranks")
        src, dst = int(parts[1]), int(parts[2])
        edges[src].append((dst, tuple(int(p) for p in parts[3:])))
    return Arena(owner, tuple(tuple(e) for e in edges), initial, tuple(channels)), obj
