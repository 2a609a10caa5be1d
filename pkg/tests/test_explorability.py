from random import Random

import pytest

from explora.automata import Automaton, complete, member_finite, iter_words
from explora.determinize import resolve_monitor
from explora.errors import ChannelBudgetExceeded, NonSinkTarget
from explora.explorability import (build_k_explorability_game,
                                   explorability_bounded,
                                   explorability_witness, is_k_explorable,
                                   is_k_population_winnable, pcp_reduce,
                                   pcp_to_explorability)
from explora.games import solve
from explora.generators import gen_ak, gen_bk, gen_c, gen_fig4, random_automaton

from conftest import automaton_corpus


class TestBranchingFamily:
    def test_a1_is_1_explorable(self):
        assert is_k_explorable(gen_ak(1), 1)

    @pytest.mark.parametrize("k", [2, 3])
    def test_ak_threshold(self, k):
        a = gen_ak(k)
        assert is_k_explorable(a, k)
        assert not is_k_explorable(a, k - 1)


class TestNonExplorable:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_c_not_k_explorable(self, k):
        assert not is_k_explorable(gen_c(), k)

    def test_bounded_search_is_inconclusive(self):
        verdict = explorability_bounded(gen_c(), 4)
        assert verdict.status == "not-explorable-up-to"
        assert verdict.k == 4
        assert verdict.is_explorable is None


class TestExponentialFamily:
    @pytest.mark.parametrize("k", [1, 2])
    def test_bk_needs_two_to_the_k(self, k):
        a = gen_bk(k)
        assert is_k_explorable(a, 2 ** k)
        assert not is_k_explorable(a, 2 ** k - 1)

    def test_bounded_search_finds_threshold(self):
        verdict = explorability_bounded(gen_bk(2), 4)
        assert verdict.status == "explorable-with" and verdict.k == 4
        assert verdict.witness is not None

    def test_a3_verdict(self):
        verdict = explorability_bounded(gen_ak(3), 5)
        assert verdict.status == "explorable-with" and verdict.k == 3


class TestGameStructure:
    def test_arena_bound_on_b2(self):
        a = gen_bk(2)
        monitor = resolve_monitor(a)
        k = 3
        arena, _ = build_k_explorability_game(a, monitor, k)
        n = a.num_states
        binom = 1
        for i in range(k):
            binom = binom * (n + i) // (i + 1)
        bound = binom * monitor.automaton.num_states * (1 + len(a.alphabet))
        assert arena.num_positions <= bound

    def test_deterministic_automata_are_1_explorable(self):
        for a in automaton_corpus(51, 6, 3, ["a", "b"], "finite", max_branch=1):
            assert is_k_explorable(a, 1)

    def test_quotient_and_tuple_modes_agree(self):
        # gate for the multiset symmetry quotient on the finite-word path
        rng = Random(77)
        for _ in range(25):
            a = complete(random_automaton(rng, rng.randint(2, 4), ["a", "b"],
                                          "finite"))
            for k in (1, 2):
                assert is_k_explorable(a, k, quotient=True) == \
                    is_k_explorable(a, k, quotient=False)

    def test_safety_game_agrees_with_generic_pipeline(self):
        # the attractor fast path and the compiled parity game must coincide
        rng = Random(78)
        for _ in range(10):
            a = complete(random_automaton(rng, 3, ["a", "b"], "finite"))
            monitor = resolve_monitor(a)
            for k in (1, 2):
                arena, objective = build_k_explorability_game(a, monitor, k)
                via_solver = arena.initial in solve(arena, objective).winning_region_0
                assert via_solver == is_k_explorable(a, k)

    def test_quotient_refused_on_infinite_words(self):
        a = gen_fig4("left")
        with pytest.raises(ValueError):
            build_k_explorability_game(a, resolve_monitor(a), 2, quotient=True)

    def test_channel_budget(self):
        a = automaton_corpus(52, 1, 2, ["a"], "cobuchi")[0]
        with pytest.raises(ChannelBudgetExceeded):
            is_k_explorable(a, 9)

    def test_witness_strategy_available(self):
        w = explorability_witness(gen_ak(2), 2)
        assert w is not None and w.moves
        assert explorability_witness(gen_ak(2), 1) is None


class TestMonotonicity:
    def test_monotone_in_k_on_corpus(self):
        for a in automaton_corpus(61, 8, 3, ["a", "b"], "finite"):
            values = [is_k_explorable(a, k) for k in (1, 2, 3)]
            for lo, hi in zip(values, values[1:]):
                assert (not lo) or hi

    def test_union_bound(self):
        # a k-explorable and an n-explorable automaton: disjoint union with a
        # fresh initial state is (k+n)-explorable
        a, b = gen_ak(2), gen_ak(2)
        off = a.num_states
        init = a.num_states + b.num_states
        transitions = [t for t in a.transitions]
        transitions += [(t.src + off, t.letter, t.dst + off, 0)
                        for t in b.transitions]
        for letter in a.alphabet:
            for dst, _ in a.successors(a.initial, letter):
                transitions.append((init, letter, dst, 0))
            for dst, _ in b.successors(b.initial, letter):
                transitions.append((init, letter, dst + off, 0))
        union = complete(Automaton.build(
            "union", a.alphabet, init + 1, init, "finite", transitions,
            set(a.accepting) | {q + off for q in b.accepting}))
        assert is_k_explorable(union, 4)


class TestPopulationReduction:
    def test_roundtrip_on_fixed_families(self):
        for a in [gen_ak(2), gen_c(), gen_bk(1)]:
            inst = pcp_reduce(a)
            for k in (1, 2, 3):
                assert is_k_explorable(a, k) == is_k_population_winnable(inst, k)

    def test_reduce_shape(self):
        inst = pcp_reduce(gen_ak(2))
        nfa = inst.nfa
        assert inst.target == nfa.num_states - 2
        test_letter = nfa.alphabet[-1]
        assert test_letter not in gen_ak(2).alphabet
        # target and dead-end are sinks
        for sink in (inst.target, nfa.num_states - 1):
            for letter in nfa.alphabet:
                assert all(d == sink for d, _ in nfa.successors(sink, letter))

    def test_unreachable_target_is_always_winnable(self):
        nfa = Automaton.build("t", ["a", "x"], 2, 0, "finite",
                              [(0, "a", 0, 0), (0, "x", 0, 0),
                               (1, "a", 1, 0), (1, "x", 1, 0)])
        from explora.explorability import PCPInstance
        inst = PCPInstance(nfa, 1)
        for k in (1, 2, 3):
            assert is_k_population_winnable(inst, k)

    def test_deterministic_all_accepting_reduction(self):
        # test letter always leads to the dead state: trivially winnable
        a = Automaton.build("triv", ["a"], 1, 0, "finite", [(0, "a", 0, 0)],
                            accepting={0})
        inst = pcp_reduce(a)
        dead = inst.nfa.num_states - 1
        test_letter = inst.nfa.alphabet[-1]
        for q in range(inst.nfa.num_states - 2):
            assert all(d == dead for d, _ in inst.nfa.successors(q, test_letter))
        assert is_k_population_winnable(inst, 1)

    def test_population_game_on_c_reduction(self):
        inst = pcp_reduce(gen_c())
        for k in (1, 2, 3):
            assert not is_k_population_winnable(inst, k)


class TestHardnessProduct:
    def test_non_sink_target_rejected(self):
        nfa = Automaton.build("ns", ["a"], 2, 0, "finite",
                              [(0, "a", 1, 0), (1, "a", 0, 0)])
        from explora.explorability import PCPInstance
        with pytest.raises(NonSinkTarget):
            pcp_to_explorability(PCPInstance(nfa, 1))

    def test_unreachable_sink_target_product(self):
        nfa = Automaton.build("u", ["a"], 2, 0, "finite",
                              [(0, "a", 0, 0), (1, "a", 1, 0)])
        from explora.explorability import PCPInstance
        inst = PCPInstance(nfa, 1)
        out = pcp_to_explorability(inst)
        for w in iter_words(out.alphabet, 2):
            assert member_finite(out, w)
        verdicts = {k: is_k_explorable(out, k) for k in (1, 2, 3)}
        # population game is trivially won, so the product must be explorable
        # at the token count the solver certifies
        assert any(verdicts.values())
        for k in (1, 2, 3):
            assert verdicts[k] == is_k_population_winnable(inst, k)

    def test_explorability_matches_population_verdicts(self):
        for src in [gen_ak(2), gen_c()]:
            inst = pcp_reduce(src)
            out = pcp_to_explorability(inst)
            for k in (1, 2):
                assert is_k_explorable(out, k) == is_k_population_winnable(inst, k)


class TestAkBridge:
    def test_bridge_on_fixed_and_random(self):
        from explora.constructions import union_power
        fixed = [gen_ak(2), gen_c()]
        rng = Random(88)
        fixed += [complete(random_automaton(rng, 3, ["a", "b"], "finite"))
                  for _ in range(4)]
        for a in fixed:
            for k in (1, 2):
                assert is_k_explorable(a, k) == is_k_explorable(union_power(a, k), 1)
