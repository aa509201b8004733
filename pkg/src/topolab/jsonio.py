"""Canonical JSON for every value that crosses the CLI boundary.

Sets of points serialize as sorted index lists, families as sorted lists
of those, and objects always dump with sorted keys and no whitespace, so
equal values produce byte-identical text.
"""

from __future__ import annotations

import json
from typing import Any

from .families import OpenFamily, Quotient
from .game import GameSolution, Strategy, Transcript
from .spaces import FiniteSpace, SpaceMap, bits_of, mask_of
from .systems import DirectedPoset, InverseSystem

__all__ = [
    "dumps",
    "mask_to_list",
    "list_to_mask",
    "encode_space",
    "decode_space",
    "encode_map",
    "decode_map",
    "encode_family",
    "decode_family",
    "encode_quotient",
    "encode_limit",
    "encode_system",
    "decode_system",
    "encode_transcript",
    "encode_solution",
    "encode_strategy",
]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def mask_to_list(mask: int) -> list[int]:
    return list(bits_of(mask))


def list_to_mask(points: list[int]) -> int:
    return mask_of(points)


def encode_space(space: FiniteSpace) -> dict:
    return {
        "points": space.point_count,
        "opens": sorted(mask_to_list(o) for o in space.opens),
    }


def decode_space(obj: dict) -> FiniteSpace:
    return FiniteSpace(int(obj["points"]), (list_to_mask(o) for o in obj["opens"]))


def encode_map(m: SpaceMap) -> dict:
    return {
        "domain": encode_space(m.domain),
        "codomain": encode_space(m.codomain),
        "assign": list(m.assign),
    }


def decode_map(obj: dict) -> SpaceMap:
    return SpaceMap(
        decode_space(obj["domain"]), decode_space(obj["codomain"]), obj["assign"]
    )


def encode_family(fam: OpenFamily) -> dict:
    return {
        "space": encode_space(fam.space),
        "members": sorted(mask_to_list(m) for m in fam.members),
    }


def decode_family(obj: dict) -> OpenFamily:
    space = decode_space(obj["space"])
    return OpenFamily.of(space, (list_to_mask(m) for m in obj["members"]))


def encode_quotient(q: Quotient) -> dict:
    return {
        "space": encode_space(q.space),
        "family": sorted(mask_to_list(m) for m in q.family.members),
        "classes": [mask_to_list(c) for c in q.classes],
        "assign": list(q.assign),
        "quotient": encode_space(q.quotient_space),
        "identity_holds": q.identity_holds,
        "continuous": q.q_continuous,
        "image_is_base": q.image_is_base,
    }


def encode_system(sys: InverseSystem) -> dict:
    return {
        "poset": {
            "elements": [str(lbl) for lbl in sys.poset.labels],
            "leq": [[i, j] for i, j in sys.poset.pairs()],
        },
        "spaces": {str(i): encode_space(sp) for i, sp in enumerate(sys.spaces)},
        "bonds": {
            "%d<=%d" % (i, j): list(sys.bond(i, j).assign)
            for i, j in sys.poset.pairs()
            if i != j
        },
    }


def decode_system(obj: dict) -> InverseSystem:
    labels = tuple(obj["poset"]["elements"])
    leq = [tuple(p) for p in obj["poset"]["leq"]]
    poset = DirectedPoset(labels, leq)
    spaces = tuple(decode_space(obj["spaces"][str(i)]) for i in range(len(labels)))
    bonds = {}
    for key, assign in obj["bonds"].items():
        low, high = key.split("<=")
        i, j = int(low), int(high)
        bonds[(i, j)] = SpaceMap(spaces[j], spaces[i], assign)
    return InverseSystem(poset=poset, spaces=spaces, bonds=bonds)


def encode_limit(lim) -> dict:
    """Limit report with the full thread table and projection assignments."""
    return {
        "threads": [list(t) for t in lim.threads],
        "space": encode_space(lim.space),
        "projections": [list(p.assign) for p in lim.projections],
    }


def encode_transcript(t: Transcript) -> dict:
    return {
        "rounds": [[mask_to_list(a), mask_to_list(b)] for a, b in t.rounds],
        "covered": [mask_to_list(c) for c in t.covered],
        "outcome": t.outcome,
    }


def encode_solution(sol: GameSolution) -> dict:
    return {
        "winner": sol.winner,
        "win_table": [
            {
                "covered": mask_to_list(c),
                "status": status,
                "move": None if move is None else mask_to_list(move),
            }
            for c, (status, move) in sorted(sol.table.items())
        ],
    }


def _masks_to_lists(value):
    if isinstance(value, dict):
        return {k: _masks_to_lists(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_masks_to_lists(v) for v in value]
    return value


def encode_strategy(strategy: Strategy) -> dict:
    desc = strategy.descriptor()
    out = {}
    for key, value in desc.items():
        if key in ("moves", "atoms"):
            out[key] = [mask_to_list(m) for m in value]
        elif key == "default":
            out[key] = mask_to_list(value)
        elif key == "table" and desc.get("kind") == "positional":
            out[key] = [
                {
                    "covered": mask_to_list(row["covered"]),
                    "status": row["status"],
                    "move": None if row["move"] is None else mask_to_list(row["move"]),
                }
                for row in value
            ]
        elif key == "table" and desc.get("kind") == "table":
            out[key] = [
                {
                    "state": row["state"],
                    "observed": None if row["observed"] is None else mask_to_list(row["observed"]),
                    "move": mask_to_list(row["move"]),
                    "next": row["next"],
                }
                for row in value
            ]
        else:
            out[key] = _masks_to_lists(value)
    return out
