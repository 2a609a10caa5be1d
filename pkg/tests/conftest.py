"""Shared corpora for the test suite.

The tiny alternating-machine corpus keeps two constraints the hardness
reduction needs to be faithful (see the machines' comments): at least two
machine transitions, and no length-1 accepting play.
"""

from __future__ import annotations

from random import Random

from explora.automata import complete
from explora.generators import ATM, random_automaton

# (name, machine, input word, expected acceptance)
ATM_CORPUS = [
    # two-state loop, accepting state unreachable
    ("loop-reject",
     ATM(3, frozenset({0, 2}),
         frozenset({(0, "0", 1, "0", "R"), (1, "0", 0, "0", "L")}), 0, 2, 2),
     "0", False),
    # universal player picks between accepting and looping
    ("forall-dodges",
     ATM(3, frozenset({0, 2}),
         frozenset({(0, "0", 1, "0", "R"), (1, "0", 2, "0", "L"),
                    (1, "0", 0, "0", "L")}), 0, 2, 2),
     "0", False),
    # universal player forced into the accepting state
    ("forall-forced",
     ATM(3, frozenset({0, 2}),
         frozenset({(0, "0", 1, "0", "R"), (0, "1", 1, "1", "R"),
                    (1, "0", 2, "0", "L")}), 0, 2, 2),
     "0", True),
    # input-dependent: accepts on '1', loops on '0'
    ("input-one",
     ATM(4, frozenset({0, 2}),
         frozenset({(0, "1", 1, "1", "R"), (0, "0", 3, "0", "R"),
                    (1, "0", 2, "0", "L"), (3, "0", 0, "0", "L")}), 0, 2, 2),
     "1", True),
    ("input-zero",
     ATM(4, frozenset({0, 2}),
         frozenset({(0, "1", 1, "1", "R"), (0, "0", 3, "0", "R"),
                    (1, "0", 2, "0", "L"), (3, "0", 0, "0", "L")}), 0, 2, 2),
     "0", False),
    # three-step forced chain into the accepting state
    ("chain-accept",
     ATM(4, frozenset({0, 2}),
         frozenset({(0, "0", 1, "0", "R"), (1, "0", 2, "0", "L"),
                    (2, "0", 3, "0", "R")}), 0, 3, 2),
     "0", True),
    # same chain but the universal player may divert into the loop
    ("chain-diverted",
     ATM(4, frozenset({0, 2}),
         frozenset({(0, "0", 1, "0", "R"), (1, "0", 2, "0", "L"),
                    (1, "0", 0, "0", "L"), (2, "0", 3, "0", "R")}), 0, 3, 2),
     "0", False),
]


def automaton_corpus(seed: int, count: int, num_states: int, alphabet,
                     condition: str, parity=None, max_branch: int = 2):
    rng = Random(seed)
    return [complete(random_automaton(rng, num_states, alphabet, condition,
                                      max_branch=max_branch, parity=parity))
            for _ in range(count)]
