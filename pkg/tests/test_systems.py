import pytest

from topolab.enumeration import all_spaces
from topolab.errors import (
    EmptySpace,
    InvalidSystem,
    NonSkeletalBond,
    NotAChain,
    NotDirected,
)
from topolab.game import build_tclub_member, verify_winning
from topolab.randgen import random_quotient_chain, random_union_closed_families, random_space, rng_for
from topolab.spaces import FiniteSpace, SpaceMap
from topolab.systems import (
    DirectedPoset,
    InverseSystem,
    check_sigma_completeness,
    check_skeletal_system,
    embedding_map,
    limit_space,
    limit_strategy,
    system_from_families,
    validate_system,
)

D2 = FiniteSpace.discrete(2)
D4 = FiniteSpace.discrete(4)
SIERP = FiniteSpace.sierpinski()
CHAIN3 = FiniteSpace.chain(3)


def two_node_system(low_space, high_space, assign):
    poset = DirectedPoset(("lo", "hi"), [(0, 1)])
    bond = SpaceMap(high_space, low_space, assign)
    return InverseSystem(poset, (low_space, high_space), {(0, 1): bond})


def test_poset_validation():
    with pytest.raises(ValueError):
        DirectedPoset(("a", "b"), [(0, 1), (1, 0)])  # antisymmetry
    with pytest.raises(NotDirected):
        DirectedPoset(("a", "b"), [])  # no upper bound for the pair
    p = DirectedPoset(("a", "b", "c"), [(0, 2), (1, 2)])
    assert p.top() == 2
    assert p.least_upper_bound([0, 1]) == 2
    assert p.is_chain([0, 2]) and not p.is_chain([0, 1])
    assert p.greedy_chain()[-1] == 2


def test_validate_examples():
    const = two_node_system(D2, D2, [0, 1])
    assert validate_system(const).ok
    bad = two_node_system(D2, D2, [0, 0])
    chk = validate_system(bad)
    assert not chk.ok and "surjective" in chk.witness
    discont = two_node_system(D2, SIERP, [0, 1])
    chk2 = validate_system(discont)
    assert not chk2.ok and "continuous" in chk2.witness


def test_validate_commutation():
    poset = DirectedPoset(("a", "b", "c"), [(0, 1), (1, 2), (0, 2)])
    swap = SpaceMap(D2, D2, [1, 0])
    ident = SpaceMap.identity(D2)
    sys = InverseSystem(
        poset, (D2, D2, D2), {(0, 1): swap, (1, 2): ident, (0, 2): ident}
    )
    chk = validate_system(sys)
    assert not chk.ok and "commute" in chk.witness


def test_limit_examples():
    const = two_node_system(D2, D2, [0, 1])
    lim = limit_space(const)
    assert lim.threads == ((0, 0), (1, 1))
    assert lim.space == D2

    pairing = two_node_system(D2, D4, [0, 0, 1, 1])
    lim2 = limit_space(pairing)
    assert lim2.space.point_count == 4
    assert len(lim2.space.opens) == 16  # discrete

    empty = FiniteSpace(0, [0])
    single = InverseSystem(DirectedPoset(("e",), []), (empty,), {})
    assert limit_space(single).space.point_count == 0


def test_limit_requires_valid_system():
    bad = two_node_system(D2, D2, [0, 0])
    with pytest.raises(InvalidSystem):
        limit_space(bad)


def test_projection_functoriality():
    rng = rng_for(3, "functorial")
    for i in range(60):
        sys = random_quotient_chain(rng, 2 + (i % 3), 2 + (i % 2))
        lim = limit_space(sys)
        for low, high in sys.poset.pairs():
            assert lim.projections[low] == sys.bond(low, high).compose(lim.projections[high])


def test_skeletal_system_reports():
    ident = two_node_system(D2, D2, [0, 1])
    rep = check_skeletal_system(ident)
    assert rep.proposition_holds and all(rep.bond_skeletal.values())

    non_skel = two_node_system(SIERP, D2, [0, 1])  # discrete-2 onto Sierpinski
    rep2 = check_skeletal_system(non_skel)
    assert rep2.bond_skeletal[(0, 1)] is False
    assert not rep2.hypothesis_holds


def test_skeletal_proposition_seeded():
    rng = rng_for(9, "skel-prop")
    applicable = 0
    for i in range(200):
        sys = random_quotient_chain(rng, 2 + (i % 3), 2 + (i % 2), discrete_top=(i % 4 == 0))
        rep = check_skeletal_system(sys)
        if rep.hypothesis_holds:
            applicable += 1
            assert rep.proposition_holds
    assert applicable >= 100


def test_open_bonds_are_skeletal():
    rng = rng_for(13, "open-bonds")
    for i in range(60):
        sys = random_quotient_chain(rng, 2 + (i % 3), 2, discrete_top=True)
        for pair in sys.poset.pairs():
            bond = sys.bond(*pair)
            if bond.is_open_map():
                assert bond.is_skeletal()


def test_system_from_families_example():
    fs = system_from_families(CHAIN3, [[0b001], [0b001, 0b011]])
    assert validate_system(fs.system).ok
    assert fs.system.spaces[0].point_count == 2
    assert fs.system.spaces[1].point_count == 3
    assert fs.system.bond(0, 1).assign == (0, 1, 1)

    single = system_from_families(CHAIN3, [[0b001]])
    assert single.system.poset.n == 1


def test_system_from_families_requires_directed():
    with pytest.raises(NotDirected):
        system_from_families(CHAIN3, [[0b001], [0b011]])  # no common superfamily


def test_club_collection_gives_skeletal_bonds():
    for space in all_spaces(3, min_points=1):
        members = [build_tclub_member(space, [])]
        for c in space.clopens():
            if c:
                members.append(build_tclub_member(space, [c]))
        fs = system_from_families(space, members)
        for pair in fs.system.poset.pairs():
            assert fs.system.bond(*pair).is_skeletal()
        for q in fs.quotients:
            assert q.map.is_skeletal()


def test_embedding_identity_and_homeomorphism():
    fs = system_from_families(CHAIN3, [[0b001], [0b001, 0b011]])
    f, rep = embedding_map(fs)
    assert rep.continuous and rep.image_dense and rep.image_identity_holds
    assert rep.separates_points == rep.injective
    assert rep.homeomorphism_onto_limit

    # a single collapsing family: constant map, flagged as non-separating
    fs2 = system_from_families(CHAIN3, [[]])
    f2, rep2 = embedding_map(fs2)
    assert not rep2.separates_points and not rep2.injective
    assert rep2.image_dense


def test_embedding_t0_reflection_sanity():
    for space in all_spaces(3, min_points=1):
        fs = system_from_families(space, [space.opens])
        f, rep = embedding_map(fs)
        flags = space.separation_flags()
        assert rep.injective == flags.t0
        assert rep.image_dense and rep.continuous
        # the single projection recovers the class map
        q = fs.quotients[0]
        proj = limit_space(fs.system).projections[0]
        assert proj.compose(f) == q.map


def test_embedding_homeomorphism_when_separating_clopen_base():
    for space in all_spaces(4, min_points=1):
        members = [build_tclub_member(space, [])]
        fs = system_from_families(space, members)
        f, rep = embedding_map(fs)
        if rep.separates_points and rep.union_is_base:
            assert rep.homeomorphism_onto_limit
        if rep.separates_points:
            # separating clopen families only exist on discrete spaces
            assert len(space.opens) == 1 << space.point_count
            assert rep.homeomorphism_onto_limit
        assert rep.vacuous_for_clopen_base == (
            not space.separation_flags().completely_regular
        )


def test_limit_strategy_examples():
    const = two_node_system(D2, D2, [0, 1])
    strat = limit_strategy(const)
    lim = limit_space(const)
    assert verify_winning(lim.space, strat).winning

    pairing = two_node_system(D2, D4, [0, 0, 1, 1])
    strat2 = limit_strategy(pairing)
    assert verify_winning(limit_space(pairing).space, strat2).winning
    assert strat2.descriptor()["kind"] == "limit_round_robin"


def test_limit_strategy_requires_skeletal_bonds():
    non_skel = two_node_system(SIERP, D2, [0, 1])
    with pytest.raises(NonSkeletalBond):
        limit_strategy(non_skel)
    bad = two_node_system(D2, D2, [0, 0])
    with pytest.raises(InvalidSystem):
        limit_strategy(bad)
    empty = FiniteSpace(0, [0])
    single = InverseSystem(DirectedPoset(("e",), []), (empty,), {})
    with pytest.raises(EmptySpace):
        limit_strategy(single)


def test_limit_strategy_seeded():
    rng = rng_for(21, "limit-strat")
    verified = 0
    for i in range(120):
        sys = random_quotient_chain(rng, 2 + (i % 3), 2 + (i % 2), discrete_top=(i % 3 == 0))
        try:
            strat = limit_strategy(sys)
        except NonSkeletalBond:
            continue
        lim = limit_space(sys)
        assert verify_winning(lim.space, strat).winning
        verified += 1
    assert verified >= 60


def test_sigma_completeness_examples():
    fs = system_from_families(CHAIN3, [[0b001], [0b001, 0b011]])
    assert check_sigma_completeness(fs.system, [0, 1]).ok
    assert check_sigma_completeness(fs.system, [0]).ok  # singleton chain

    # designated sup finer than the chain resolves: the canonical map
    # collapses, witnessed by a thread with two preimages
    rep = check_sigma_completeness(fs.system, [0], sup=1)
    assert not rep.ok and rep.witness[0] == "thread"


def test_sigma_completeness_union_closed_collections():
    rng = rng_for(17, "sigma")
    for i in range(40):
        space = random_space(rng, 2 + (i % 2))
        fams = random_union_closed_families(rng, space, rng.randint(1, 3))
        fs = system_from_families(space, fams)
        poset = fs.system.poset
        for a in range(poset.n):
            for b in range(poset.n):
                if poset.le(a, b):
                    assert check_sigma_completeness(fs.system, [a, b]).ok


def test_sigma_chain_validation():
    fs = system_from_families(CHAIN3, [[0b001], [0b001, 0b011]])
    with pytest.raises(NotAChain):
        check_sigma_completeness(fs.system, [])
    with pytest.raises(NotAChain):
        check_sigma_completeness(fs.system, [5])
    with pytest.raises(NotAChain):
        check_sigma_completeness(fs.system, [1], sup=0)  # sup below the chain

    incomparable = system_from_families(
        FiniteSpace.discrete(2), [[0b01], [0b10], [0b01, 0b10]]
    )
    with pytest.raises(NotAChain):
        check_sigma_completeness(incomparable.system, [0, 1])
