"""Finite inverse systems: validation, limits, skeletal projections, the
system induced by a directed collection of open families, the embedding of
the base space into the limit, and the winning strategy lifted to a limit.

A finite directed poset always has a top element, so every finite limit is
carried by the top space through its projection; the constructions below
still compute threads and projection-generated topologies in full, because
the point of the exercise is checking the structural claims, not using
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    EmptySpace,
    InvalidSystem,
    NonSkeletalBond,
    NotAChain,
    NotDirected,
)
from .families import OpenFamily, Quotient, build_quotient
from .game import RoundRobinStrategy, Strategy
from .spaces import FiniteSpace, SpaceMap, from_subbasis

__all__ = [
    "DirectedPoset",
    "InverseSystem",
    "LimitSpace",
    "SystemCheck",
    "SkeletalSystemReport",
    "FamilySystem",
    "EmbeddingReport",
    "SigmaReport",
    "validate_system",
    "limit_space",
    "check_skeletal_system",
    "system_from_families",
    "embedding_map",
    "limit_strategy",
    "check_sigma_completeness",
]


class DirectedPoset:
    """A finite directed partial order over labeled elements.

    ``labels`` carries the payload (anything hashable); ``leq`` holds index
    pairs (i, j) meaning i <= j.  Reflexivity, antisymmetry, transitivity
    and directedness are all enforced at construction.
    """

    __slots__ = ("labels", "leq")

    def __init__(self, labels: Iterable, leq: Iterable[tuple[int, int]]):
        labels = tuple(labels)
        n = len(labels)
        rel = set()
        for i, j in leq:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("relation pair (%d, %d) out of range" % (i, j))
            rel.add((i, j))
        for i in range(n):
            rel.add((i, i))
        for i, j in rel:
            if i != j and (j, i) in rel:
                raise ValueError("order is not antisymmetric at (%d, %d)" % (i, j))
        for i, j in list(rel):
            for k in range(n):
                if (j, k) in rel and (i, k) not in rel:
                    raise ValueError("order is not transitive at (%d, %d, %d)" % (i, j, k))
        for i in range(n):
            for j in range(n):
                if not any((i, u) in rel and (j, u) in rel for u in range(n)):
                    raise NotDirected("no upper bound for elements %d and %d" % (i, j))
        self.labels = labels
        self.leq = frozenset(rel)

    @property
    def n(self) -> int:
        return len(self.labels)

    def le(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.leq)

    def upper_bounds(self, subset: Iterable[int]) -> list[int]:
        subset = list(subset)
        return [u for u in range(self.n) if all(self.le(i, u) for i in subset)]

    def least_upper_bound(self, subset: Iterable[int]) -> int | None:
        ubs = self.upper_bounds(subset)
        for u in ubs:
            if all(self.le(u, v) for v in ubs):
                return u
        return None

    def top(self) -> int:
        t = self.least_upper_bound(range(self.n))
        if t is None:
            raise NotDirected("directed finite poset lost its top")
        return t

    def is_chain(self, elems: Iterable[int]) -> bool:
        elems = list(elems)
        return all(
            self.le(a, b) or self.le(b, a) for a in elems for b in elems
        )

    def greedy_chain(self) -> list[int]:
        """Cofinal chain: start at the least-index minimal element and keep
        stepping to the least strict upper bound, ending at the top."""
        minimal = [
            i
            for i in range(self.n)
            if not any(j != i and self.le(j, i) for j in range(self.n))
        ]
        current = min(minimal) if minimal else 0
        chain = [current]
        while True:
            nxt = [j for j in range(self.n) if j != current and self.le(current, j)]
            if not nxt:
                return chain
            current = min(nxt)
            chain.append(current)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DirectedPoset)
            and self.labels == other.labels
            and self.leq == other.leq
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.leq))

    def __repr__(self) -> str:
        return f"DirectedPoset({self.labels!r})"


@dataclass(frozen=True)
class InverseSystem:
    """Spaces indexed by a directed poset with bonding maps downward.

    ``bonds[(i, j)]`` for i <= j maps the space at j onto the space at i.
    Identity bonds on the diagonal may be omitted; they are filled in.
    """

    poset: DirectedPoset
    spaces: tuple[FiniteSpace, ...]
    bonds: Mapping[tuple[int, int], SpaceMap]

    def __post_init__(self):
        filled = dict(self.bonds)
        for i in range(self.poset.n):
            filled.setdefault((i, i), SpaceMap.identity(self.spaces[i]))
        object.__setattr__(self, "bonds", filled)

    def bond(self, low: int, high: int) -> SpaceMap:
        return self.bonds[(low, high)]


@dataclass(frozen=True)
class SystemCheck:
    ok: bool
    witness: str | None


def validate_system(sys: InverseSystem) -> SystemCheck:
    """Check every structural invariant, reporting the first failure."""
    poset = sys.poset
    if len(sys.spaces) != poset.n:
        return SystemCheck(False, "space count does not match poset size")
    for i, j in poset.pairs():
        bond = sys.bonds.get((i, j))
        if bond is None:
            return SystemCheck(False, "missing bond %d<=%d" % (i, j))
        if bond.domain != sys.spaces[j] or bond.codomain != sys.spaces[i]:
            return SystemCheck(False, "bond %d<=%d connects wrong spaces" % (i, j))
        if i == j and bond.assign != tuple(range(sys.spaces[i].point_count)):
            return SystemCheck(False, "diagonal bond at %d is not the identity" % i)
        if not bond.is_continuous():
            return SystemCheck(False, "bond %d<=%d is not continuous" % (i, j))
        if not bond.is_surjective():
            return SystemCheck(False, "bond %d<=%d is not surjective" % (i, j))
    for i, j in poset.pairs():
        for k in range(poset.n):
            if poset.le(j, k):
                left = sys.bond(i, j).compose(sys.bond(j, k))
                if left != sys.bond(i, k):
                    return SystemCheck(
                        False, "bonds do not commute along %d<=%d<=%d" % (i, j, k)
                    )
    return SystemCheck(True, None)


@dataclass(frozen=True)
class LimitSpace:
    """Threads, their projection-generated topology, and the projections."""

    threads: tuple[tuple[int, ...], ...]
    space: FiniteSpace
    projections: tuple[SpaceMap, ...]

    def projection_surjective(self, i: int) -> bool:
        return self.projections[i].is_surjective()


def limit_space(sys: InverseSystem) -> LimitSpace:
    check = validate_system(sys)
    if not check.ok:
        raise InvalidSystem(check.witness)
    n = sys.poset.n
    threads: list[tuple[int, ...]] = []
    counts = [sp.point_count for sp in sys.spaces]

    def extend(partial: list[int]):
        idx = len(partial)
        if idx == n:
            threads.append(tuple(partial))
            return
        for p in range(counts[idx]):
            ok = True
            for j, q in enumerate(partial):
                if sys.poset.le(j, idx) and sys.bond(j, idx).assign[p] != q:
                    ok = False
                    break
                if sys.poset.le(idx, j) and sys.bond(idx, j).assign[q] != p:
                    ok = False
                    break
            if ok:
                partial.append(p)
                extend(partial)
                partial.pop()

    extend([])
    threads.sort()
    t = len(threads)
    subbasis = set()
    for i in range(n):
        for v in sys.spaces[i].opens:
            mask = 0
            for ti, thread in enumerate(threads):
                if (v >> thread[i]) & 1:
                    mask |= 1 << ti
            subbasis.add(mask)
    space = from_subbasis(t, subbasis)
    projections = tuple(
        SpaceMap(space, sys.spaces[i], (thread[i] for thread in threads))
        for i in range(n)
    )
    return LimitSpace(threads=tuple(threads), space=space, projections=projections)


@dataclass(frozen=True)
class SkeletalSystemReport:
    """Per-bond and per-projection skeletality, plus the proposition that
    skeletal bonds with onto projections force skeletal projections.
    ``proposition_holds`` is None when the hypothesis does not apply."""

    bond_skeletal: dict[tuple[int, int], bool]
    projection_surjective: dict[int, bool]
    projection_skeletal: dict[int, bool | None]
    hypothesis_holds: bool
    proposition_holds: bool | None


def check_skeletal_system(sys: InverseSystem) -> SkeletalSystemReport:
    check = validate_system(sys)
    if not check.ok:
        raise InvalidSystem(check.witness)
    lim = limit_space(sys)
    bond_skel = {
        (i, j): sys.bond(i, j).is_skeletal() for i, j in sys.poset.pairs()
    }
    proj_surj = {i: lim.projections[i].is_surjective() for i in range(sys.poset.n)}
    proj_skel: dict[int, bool | None] = {}
    for i in range(sys.poset.n):
        proj_skel[i] = lim.projections[i].is_skeletal() if proj_surj[i] else None
    hypothesis = all(bond_skel.values()) and all(proj_surj.values())
    proposition = None
    if hypothesis:
        proposition = all(proj_skel[i] for i in range(sys.poset.n))
    return SkeletalSystemReport(
        bond_skeletal=bond_skel,
        projection_surjective=proj_surj,
        projection_skeletal=proj_skel,
        hypothesis_holds=hypothesis,
        proposition_holds=proposition,
    )


@dataclass(frozen=True)
class FamilySystem:
    """An inverse system of quotients by a directed collection of families."""

    space: FiniteSpace
    families: tuple[OpenFamily, ...]
    quotients: tuple[Quotient, ...]
    system: InverseSystem


def system_from_families(
    space: FiniteSpace, collection: Iterable[OpenFamily | Iterable[int]]
) -> FamilySystem:
    """Quotient space per family, bonds collapsing finer classes onto
    coarser ones.  The collection must be directed by inclusion."""
    fams: list[frozenset[int]] = []
    for entry in collection:
        if isinstance(entry, OpenFamily):
            if entry.space != space:
                raise ValueError("family belongs to a different space")
            fams.append(entry.members)
        else:
            fams.append(OpenFamily.of(space, entry).members)
    fams = sorted(set(fams), key=lambda f: (len(f), sorted(f)))
    for a in fams:
        for b in fams:
            if not any(a | b <= c for c in fams):
                raise NotDirected(
                    "families %r and %r have no common superfamily"
                    % (sorted(a), sorted(b))
                )
    families = tuple(OpenFamily(space, f) for f in fams)
    quotients = tuple(build_quotient(space, f) for f in families)
    labels = tuple(tuple(sorted(f.members)) for f in families)
    leq = [
        (i, j)
        for i in range(len(fams))
        for j in range(len(fams))
        if fams[i] <= fams[j]
    ]
    poset = DirectedPoset(labels, leq)
    bonds = {}
    for i, j in poset.pairs():
        if i == j:
            continue
        fine, coarse = quotients[j], quotients[i]
        assign = []
        for cls in fine.classes:
            rep = (cls & -cls).bit_length() - 1
            assign.append(coarse.assign[rep])
        bonds[(i, j)] = SpaceMap(fine.quotient_space, coarse.quotient_space, assign)
    system = InverseSystem(
        poset=poset,
        spaces=tuple(q.quotient_space for q in quotients),
        bonds=bonds,
    )
    return FamilySystem(space=space, families=families, quotients=quotients, system=system)


@dataclass(frozen=True)
class EmbeddingReport:
    """Diagnostics for the canonical map of the base space into the limit.

    ``homeomorphism_onto_limit`` bundles continuity, bijectivity onto the
    threads and openness; ``vacuous_for_clopen_base`` flags runs where the
    base space lacks a clopen base, the situation in which the strong
    conclusions are not expected to apply.
    """

    continuous: bool
    injective: bool
    separates_points: bool
    union_is_base: bool
    image_identity_holds: bool
    open_onto_image: bool
    image_dense: bool
    surjective_onto_limit: bool
    homeomorphism_onto_limit: bool
    vacuous_for_clopen_base: bool


def embedding_map(famsys: FamilySystem) -> tuple[SpaceMap, EmbeddingReport]:
    """Send each point to the thread of its classes; report what holds."""
    space = famsys.space
    lim = limit_space(famsys.system)
    thread_index = {t: i for i, t in enumerate(lim.threads)}
    assign = []
    for x in range(space.point_count):
        thread = tuple(q.assign[x] for q in famsys.quotients)
        assign.append(thread_index[thread])
    f = SpaceMap(space, lim.space, assign)

    union_members = sorted({m for fam in famsys.families for m in fam.members})
    separates = all(
        any(((m >> x) & 1) != ((m >> y) & 1) for m in union_members)
        for x in range(space.point_count)
        for y in range(x + 1, space.point_count)
    )
    injective = len(set(assign)) == space.point_count
    base = all(
        any((m >> x) & 1 and m & ~o == 0 for m in union_members)
        for o in space.opens
        for x in _bits(o)
    )
    image = f.image_of(space.full)
    identity_ok = True
    for fi, fam in enumerate(famsys.families):
        proj = lim.projections[fi]
        q = famsys.quotients[fi]
        for u in sorted(fam.members):
            lhs = f.image_of(u)
            rhs = image & proj.preimage_of(q.image_of(u))
            if lhs != rhs:
                identity_ok = False
    relative_opens = {o & image for o in lim.space.opens}
    open_onto_image = all(f.image_of(u) in relative_opens for u in space.opens)
    dense = lim.space.is_dense(image)
    onto = image == lim.space.full
    continuous = f.is_continuous()
    homeo = continuous and injective and onto and open_onto_image
    vacuous = not space.separation_flags().completely_regular
    report = EmbeddingReport(
        continuous=continuous,
        injective=injective,
        separates_points=separates,
        union_is_base=base,
        image_identity_holds=identity_ok,
        open_onto_image=open_onto_image,
        image_dense=dense,
        surjective_onto_limit=onto,
        homeomorphism_onto_limit=homeo,
        vacuous_for_clopen_base=vacuous,
    )
    return f, report


def limit_strategy(sys: InverseSystem) -> Strategy:
    """Round robin over the lifted minimal opens of every space along a
    fixed cofinal chain.

    Requires skeletal bonds.  Each node contributes its minimal opens (a
    pi-base), lifted through the projection; the opponent's replies inside
    the lift of a minimal open of the top space project back onto it, so
    the union of replies is dense in the limit.
    """
    check = validate_system(sys)
    if not check.ok:
        raise InvalidSystem(check.witness)
    for i, j in sys.poset.pairs():
        if not sys.bond(i, j).is_skeletal():
            raise NonSkeletalBond("bond %d<=%d is not skeletal" % (i, j))
    lim = limit_space(sys)
    if lim.space.point_count == 0:
        raise EmptySpace("the limit has no threads")
    chain = sys.poset.greedy_chain()
    moves: list[int] = []
    for node in chain:
        proj = lim.projections[node]
        for m in sys.spaces[node].minimal_open_family():
            lifted = proj.preimage_of(m)
            if lifted and lifted not in moves:
                moves.append(lifted)
    return LimitRoundRobin(lim.space, moves, tuple(chain))


class LimitRoundRobin(RoundRobinStrategy):
    """Round robin on a limit space, remembering the cofinal chain the
    moves were lifted along."""

    kind = "limit_round_robin"

    def __init__(self, space, moves, chain):
        super().__init__(space, moves)
        self.chain = chain

    def descriptor(self) -> dict:
        base = super().descriptor()
        base["kind"] = self.kind
        base["chain"] = list(self.chain)
        return base


@dataclass(frozen=True)
class SigmaReport:
    ok: bool
    sup: int | None
    witness: tuple | None


def check_sigma_completeness(
    sys: InverseSystem, chain: Iterable[int], sup: int | None = None
) -> SigmaReport:
    """Does the space at the supremum match the limit of the chain?

    The canonical map sends a point of the sup space to the thread of its
    bond images along the chain; the check passes when that map is a
    homeomorphism.  A finite chain contains its own least upper bound, so
    with the default sup the check is the degenerate (always-true-for-
    valid-systems) reading; passing an explicit larger ``sup`` probes the
    interesting direction, where a designated upper bound may carry a
    space finer than the chain resolves, and the witness is then a thread
    with more than one preimage.
    """
    check = validate_system(sys)
    if not check.ok:
        raise InvalidSystem(check.witness)
    chain = list(dict.fromkeys(chain))
    if not chain:
        raise NotAChain("empty chain")
    for c in chain:
        if not 0 <= c < sys.poset.n:
            raise NotAChain("element %r outside the poset" % c)
    if not sys.poset.is_chain(chain):
        raise NotAChain("elements are not pairwise comparable")
    if sup is None:
        sup = sys.poset.least_upper_bound(chain)
        if sup is None:
            return SigmaReport(False, None, None)
    elif not all(sys.poset.le(c, sup) for c in chain):
        raise NotAChain("designated sup is not an upper bound of the chain")

    chain.sort(key=lambda c: sum(1 for d in chain if sys.poset.le(d, c)))
    sub_labels = tuple(sys.poset.labels[c] for c in chain)
    sub_leq = [
        (a, b)
        for a in range(len(chain))
        for b in range(len(chain))
        if sys.poset.le(chain[a], chain[b])
    ]
    sub_poset = DirectedPoset(sub_labels, sub_leq)
    sub_bonds = {
        (a, b): sys.bond(chain[a], chain[b])
        for a in range(len(chain))
        for b in range(len(chain))
        if sub_poset.le(a, b)
    }
    subsystem = InverseSystem(
        poset=sub_poset,
        spaces=tuple(sys.spaces[c] for c in chain),
        bonds=sub_bonds,
    )
    sublim = limit_space(subsystem)
    thread_index = {t: i for i, t in enumerate(sublim.threads)}
    sup_space = sys.spaces[sup]
    assign = []
    for p in range(sup_space.point_count):
        thread = tuple(sys.bond(c, sup).assign[p] for c in chain)
        assign.append(thread_index[thread])
    h = SpaceMap(sup_space, sublim.space, assign)
    if len(set(assign)) != sup_space.point_count:
        collided = next(
            t
            for t in range(sublim.space.point_count)
            if assign.count(t) > 1
        )
        return SigmaReport(False, sup, ("thread", sublim.threads[collided]))
    if set(assign) != set(range(sublim.space.point_count)):
        missing = next(
            t for t in range(sublim.space.point_count) if t not in set(assign)
        )
        return SigmaReport(False, sup, ("thread", sublim.threads[missing]))
    if not h.is_continuous():
        return SigmaReport(False, sup, ("not_continuous",))
    if not h.is_open_map():
        return SigmaReport(False, sup, ("not_open",))
    return SigmaReport(True, sup, None)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
