"""Exhaustive catalogues of labeled topologies on small point sets.

Two independent routes are kept on purpose.  The fast route walks
reflexive transitive relations and takes their up-set topologies (finite
topologies correspond one-to-one to preorders).  The slow route filters
raw families of subsets for the lattice axioms and exists solely to
cross-check the fast one; keep it dumb.
"""

from __future__ import annotations

from typing import Iterator

from .spaces import FiniteSpace

__all__ = [
    "preorders",
    "all_topologies",
    "all_spaces",
    "count_topologies_bruteforce",
    "opens_families_bruteforce",
]


def preorders(n: int) -> Iterator[tuple[int, ...]]:
    """All reflexive transitive relations on n points, as row bitmasks."""
    if n == 0:
        yield ()
        return
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    base = [1 << i for i in range(n)]
    for choice in range(1 << len(pairs)):
        rows = list(base)
        for k, (i, j) in enumerate(pairs):
            if (choice >> k) & 1:
                rows[i] |= 1 << j
        if _transitive(rows):
            yield tuple(rows)


def _transitive(rows: list[int]) -> bool:
    for i, row in enumerate(rows):
        acc = row
        m = row
        while m:
            low = m & -m
            acc |= rows[low.bit_length() - 1]
            m ^= low
        if acc != row:
            return False
    return True


def all_topologies(n: int) -> Iterator[FiniteSpace]:
    for rows in preorders(n):
        yield FiniteSpace.from_preorder(rows)


def all_spaces(max_points: int, min_points: int = 0) -> list[FiniteSpace]:
    out: list[FiniteSpace] = []
    for n in range(min_points, max_points + 1):
        out.extend(all_topologies(n))
    return out


def count_topologies_bruteforce(n: int) -> int:
    """Count families of subsets of an n-set that form a topology.

    Enumerates every candidate family containing the empty and full sets
    and tests closure under pairwise union and intersection directly.
    Exponential in 2**n; meant for n <= 4.
    """
    if n == 0:
        return 1
    full = (1 << n) - 1
    middle = [s for s in range(1 << n) if s not in (0, full)]
    count = 0
    for pick in range(1 << len(middle)):
        fam = {0, full}
        for k, s in enumerate(middle):
            if (pick >> k) & 1:
                fam.add(s)
        if _is_lattice_closed(fam):
            count += 1
    return count


def opens_families_bruteforce(n: int) -> set[frozenset[int]]:
    """The full set of topologies on n points found by raw filtering."""
    if n == 0:
        return {frozenset({0})}
    full = (1 << n) - 1
    middle = [s for s in range(1 << n) if s not in (0, full)]
    found = set()
    for pick in range(1 << len(middle)):
        fam = {0, full}
        for k, s in enumerate(middle):
            if (pick >> k) & 1:
                fam.add(s)
        if _is_lattice_closed(fam):
            found.add(frozenset(fam))
    return found


def _is_lattice_closed(fam: set[int]) -> bool:
    members = sorted(fam)
    for idx, a in enumerate(members):
        for b in members[idx + 1 :]:
            if (a | b) not in fam or (a & b) not in fam:
                return False
    return True
