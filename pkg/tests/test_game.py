import pytest

from topolab.enumeration import all_spaces, all_topologies
from topolab.errors import EmptySpace, IllegalMove, NotClopen, StateOverflow
from topolab.families import build_quotient, seq_family
from topolab.game import (
    EchoStrategy,
    HistoryStrategy,
    HybridClopenStrategy,
    LeastReplyStrategy,
    MinimalReplyStrategy,
    RoundRobinStrategy,
    build_tclub_member,
    check_condition_S,
    closure_under_strategies,
    count_ii_strategies,
    default_first_move,
    enumerate_ii_strategies,
    minimal_open_strategy,
    play,
    seq_witness_strategies,
    solve_open_open,
    union_strategy,
    verify_winning,
)
from topolab.randgen import random_clopen_seed, random_family, random_space, rng_for
from topolab.spaces import FiniteSpace

SIERP = FiniteSpace.sierpinski()
D2 = FiniteSpace.discrete(2)
D3 = FiniteSpace.discrete(3)
# connected three-point space whose only clopens are trivial
WEDGE = FiniteSpace(3, [0b000, 0b001, 0b010, 0b011, 0b111])


def test_solver_examples():
    sol = solve_open_open(SIERP)
    assert sol.winner == "I"
    assert sol.table[0] == ("win", 0b10)
    sol2 = solve_open_open(D2)
    assert sol2.table[0] == ("win", 0b01)
    assert sol2.table[0b01] == ("win", 0b10)


def test_solver_empty_space_errors():
    with pytest.raises(EmptySpace):
        solve_open_open(FiniteSpace(0, [0]))
    with pytest.raises(EmptySpace):
        minimal_open_strategy(FiniteSpace(0, [0]))


def test_player_I_wins_all_small_topologies():
    for n in range(1, 5):
        for space in all_topologies(n):
            sol = solve_open_open(space)
            assert sol.winner == "I"
            assert verify_winning(space, sol.strategy).winning
            assert verify_winning(space, minimal_open_strategy(space)).winning


def test_minimal_strategy_examples():
    assert minimal_open_strategy(D3).moves == (0b001, 0b010, 0b100)
    assert minimal_open_strategy(SIERP).moves == (0b10,)
    assert minimal_open_strategy(FiniteSpace.chain(3)).moves == (0b001,)


def test_verify_rejects_bad_strategy():
    res = verify_winning(D2, RoundRobinStrategy(D2, [0b01]))
    assert not res.winning
    trace = res.counterexample
    assert trace is not None and trace.loop_start is not None
    # the lasso keeps the covered set constant and non-dense
    covered = 0
    for a, b in trace.rounds:
        assert b & ~a == 0
        covered |= b
    assert not D2.is_dense(covered)


def test_verify_monotone_covered_in_every_cycle():
    # any reported lasso must keep covered constant from loop start on
    for space in all_spaces(3, min_points=1):
        for moves in [(space.nonempty_opens()[0],), space.minimal_open_family()]:
            res = verify_winning(space, RoundRobinStrategy(space, list(moves)))
            if res.counterexample and res.counterexample.loop_start is not None:
                rounds = res.counterexample.rounds
                stem_cover = 0
                for a, b in rounds[: res.counterexample.loop_start]:
                    stem_cover |= b
                loop_cover = stem_cover
                for a, b in rounds[res.counterexample.loop_start :]:
                    loop_cover |= b
                assert loop_cover == stem_cover


def test_product_graph_covered_is_monotone():
    # walk the verifier's product graph by hand: along every edge the
    # covered set grows or the (state, covered) pair has been seen before,
    # so infinite plays settle on a constant covered set
    for space in all_spaces(3, min_points=1):
        strat = minimal_open_strategy(space)
        move0, st0 = strat.step(strat.initial_state(), None)
        frontier = [(st0, move0, 0)]
        seen = {(st0, 0)}
        while frontier:
            st, a, covered = frontier.pop()
            for b in space.nonempty_opens():
                if b & ~a:
                    continue
                cov2 = covered | b
                assert cov2 & ~space.full == 0 and covered & ~cov2 == 0
                move2, st2 = strat.step(st, b)
                if cov2 == covered:
                    continue  # monotone step with no growth repeats a pair eventually
                if (st2, cov2) not in seen:
                    seen.add((st2, cov2))
                    frontier.append((st2, move2, cov2))
        assert len(seen) <= len(strat.moves) * len(space.opens)


def test_play_examples():
    sol = solve_open_open(SIERP)
    t = play(SIERP, sol.strategy, EchoStrategy())
    assert t.outcome == "I-wins" and len(t.rounds) == 1

    stubborn = RoundRobinStrategy(D2, [0b01])
    t2 = play(D2, stubborn, EchoStrategy())
    assert t2.outcome == "II-survives" and t2.covered[-1] == 0b01
    t3 = play(D2, stubborn, EchoStrategy(), max_rounds=10, detect_stagnation=False)
    assert t3.outcome == "cutoff" and len(t3.rounds) == 10 and t3.covered[-1] == 0b01


def test_play_rejects_illegal_moves():
    class BadII(EchoStrategy):
        def step(self, state, observed):
            return 0, 0

    with pytest.raises(IllegalMove):
        play(D2, solve_open_open(D2).strategy, BadII())

    class BadI(RoundRobinStrategy):
        def step(self, state, observed):
            return 0b01, 0  # {0} is not open in the Sierpinski space

    space = FiniteSpace.sierpinski()
    with pytest.raises(IllegalMove):
        play(space, BadI(space, [0b10]), EchoStrategy())


def test_play_against_least_and_minimal_replies():
    for space in all_spaces(4, min_points=1):
        sol = solve_open_open(space)
        for opp in (EchoStrategy(), LeastReplyStrategy(space), MinimalReplyStrategy(space)):
            t = play(space, sol.strategy, opp)
            assert t.outcome == "I-wins"
            assert len(t.rounds) <= space.point_count


def test_default_first_move():
    assert default_first_move(D2) == 0b01  # least nonempty clopen
    assert default_first_move(SIERP) == 0b11  # only nonempty clopen is X
    assert default_first_move(WEDGE) == 0b111
    with pytest.raises(EmptySpace):
        default_first_move(FiniteSpace(0, [0]))


def test_witness_strategy_examples():
    s_id, s_comp = seq_witness_strategies(D2)
    assert s_comp.apply_history([0b01]) == 0b10
    s_id3, _ = seq_witness_strategies(D3)
    assert s_id3.apply_history([0b011]) == 0b011
    # no proper nonempty clopen: both collapse to the default
    w_id, w_comp = seq_witness_strategies(SIERP)
    assert w_id.apply_history([0b10]) == default_first_move(SIERP)
    assert w_comp.apply_history([0b10]) == default_first_move(SIERP)
    assert w_comp.apply_history([]) == default_first_move(SIERP)
    # longer histories fall back to the default as well
    assert s_comp.apply_history([0b01, 0b10]) == default_first_move(D2)


def test_closure_examples():
    comp = seq_witness_strategies(D2)[1]
    fam = closure_under_strategies(D2, [0b01], [union_strategy(D2), comp])
    assert fam.members == frozenset({0b01, 0b10, 0b11})
    again = closure_under_strategies(D2, fam, [union_strategy(D2), comp])
    assert again.members == fam.members

    const = RoundRobinStrategy(D3, [0b010])
    fam2 = closure_under_strategies(D3, [], [const])
    assert fam2.members == frozenset({0b010})


def test_closure_drops_empty_seed_members():
    fam = closure_under_strategies(D2, [0, 0b01], [RoundRobinStrategy(D2, [0b01])])
    assert fam.members == frozenset({0b01})


def test_history_strategy_wrapper():
    def union_of(history):
        acc = 0
        for b in history:
            acc |= b
        return acc or 0b01

    wrapped = HistoryStrategy(union_of, state_cap=64)
    assert wrapped.apply_history([]) == 0b01
    assert wrapped.apply_history([0b01, 0b10]) == 0b11
    tiny = HistoryStrategy(union_of, state_cap=1)
    with pytest.raises(StateOverflow):
        closure_under_strategies(D2, [0b01, 0b10], [tiny])


def test_tclub_examples():
    fam = build_tclub_member(D2, [0b01])
    assert fam.members == frozenset({0, 0b01, 0b10, 0b11})
    fam2 = build_tclub_member(D2, [])
    assert fam2.members == frozenset({0, 0b01, 0b10, 0b11})
    ok, _ = check_condition_S(D2, fam2)
    assert ok


def test_tclub_validates_clopen_seed():
    with pytest.raises(NotClopen):
        build_tclub_member(SIERP, [0b10])  # {1} is open, not closed
    with pytest.raises(EmptySpace):
        build_tclub_member(FiniteSpace(0, [0]), [])


def test_tclub_postconditions_on_connected_space():
    fam = build_tclub_member(WEDGE, [])
    assert fam.members == frozenset({0, 0b111})
    assert fam.is_ring()
    assert fam.members <= seq_family(WEDGE, fam).members
    q = build_quotient(WEDGE, fam)
    assert q.quotient_space.point_count == 1
    assert q.map.is_skeletal()
    assert q.quotient_space.separation_flags().completely_regular


def test_tclub_theorem_seeded():
    rng = rng_for(11, "tclub-test")
    for i in range(200):
        space = random_space(rng, 1 + (i % 4))
        seed_fam = random_clopen_seed(rng, space)
        fam = build_tclub_member(space, seed_fam)
        assert fam.is_ring()
        assert fam.members <= seq_family(space, fam).members
        ok, _ = check_condition_S(space, fam)
        assert ok
        q = build_quotient(space, fam)
        assert q.map.is_skeletal()
        assert q.quotient_space.separation_flags().completely_regular
        # closed under every strategy that built it: rebuilding is stable
        assert build_tclub_member(space, fam.members & set(space.clopens())).members == fam.members


def test_hybrid_strategy_is_winning_everywhere():
    for space in all_spaces(4, min_points=1):
        sol = solve_open_open(space)
        hyb = HybridClopenStrategy(space, sol)
        assert verify_winning(space, hyb).winning


def test_condition_S_examples():
    ok, witness = check_condition_S(D2, [0b10])
    assert not ok and witness == 0b01
    ok, _ = check_condition_S(D2, D2.nonempty_opens())
    assert ok


def test_solver_closures_satisfy_condition_S():
    rng = rng_for(5, "closure-s")
    for i in range(120):
        space = random_space(rng, 1 + (i % 3))
        seed_fam = random_family(rng, space, rng.randint(0, 3))
        sol = solve_open_open(space)
        fam = closure_under_strategies(space, seed_fam, [sol.strategy])
        ok, _ = check_condition_S(space, fam)
        assert ok


def test_solver_beats_every_tiny_transducer():
    for space in all_spaces(2, min_points=1):
        sol = solve_open_open(space)
        for states in (1, 2):
            assert count_ii_strategies(space, states) <= 5000
            for opp in enumerate_ii_strategies(space, states):
                t = play(space, sol.strategy, opp)
                assert t.outcome == "I-wins"
                progress = sum(
                    1
                    for k, c in enumerate(t.covered)
                    if c != (t.covered[k - 1] if k else 0)
                )
                assert progress <= space.point_count
