"""Reducing Shrikhande coordinates to pairs of K4 coordinates.

The 16 maximum independent sets of the Shrikhande graph can be matched with
16 of the 24 maximum independent sets of K4 x K4 so that two Shrikhande codes
intersect exactly when their partners do.  Applying that table fiberwise at
the last Shrikhande coordinate turns a code of D(m+1,n) into a code of
D(m,n+2); iterating eliminates all Shrikhande coordinates and lands in a
Hamming graph.  The table is not unique, so the canonical one here is the
lexicographically least valid assignment under the canonical orderings of
both code lists.  The end result of the iteration can depend on the order in
which Shrikhande coordinates are consumed; the order is therefore an explicit
argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .codes import Code
from .errors import ConsistencyError
from .graphs import DoobParams, DoobVertex, decode_vertex, encode_vertex
from .search import enumerate_mds


@lru_cache(maxsize=None)
def sh_codes() -> tuple[Code, ...]:
    """The 16 maximum independent sets of the Shrikhande graph, canonical order."""
    return enumerate_mds(DoobParams(1, 0)).codes


@lru_cache(maxsize=None)
def k4_pair_codes() -> tuple[Code, ...]:
    """The 24 maximum independent sets of K4 x K4, canonical order."""
    return enumerate_mds(DoobParams(0, 2)).codes


@dataclass(frozen=True)
class PairingTable:
    """Intersection-preserving matching of Shrikhande codes with K4-pair codes.

    domain[i] and image[i] are partners; two domain codes intersect iff the
    corresponding image codes do.
    """

    domain: tuple[Code, ...]
    image: tuple[Code, ...]

    def image_lookup(self) -> dict[tuple[int, ...], Code]:
        """Map from a domain code's member tuple to its partner code."""
        return {dom.members: img for dom, img in zip(self.domain, self.image)}


def pairing_violations(table: PairingTable) -> list[tuple[int, int]]:
    """Pairs (i, j), i <= j, where the meet-iff-partners-meet property fails."""
    out = []
    size = len(table.domain)
    for i in range(size):
        for j in range(i, size):
            domain_meet = table.domain[i].intersection_size(table.domain[j]) > 0
            image_meet = table.image[i].intersection_size(table.image[j]) > 0
            if domain_meet != image_meet:
                out.append((i, j))
    return out


@lru_cache(maxsize=None)
def derive_pairing() -> PairingTable:
    """Search for the canonical intersection-preserving matching.

    Backtracking over domain slots in canonical order, trying candidate image
    codes in canonical order; the first complete assignment found is the
    lexicographically least one.
    """
    domain = sh_codes()
    candidates = k4_pair_codes()
    domain_meet = [[bool(a.mask & b.mask) for b in domain] for a in domain]
    candidate_meet = [[bool(a.mask & b.mask) for b in candidates] for a in candidates]
    assignment: list[int] = []
    used = [False] * len(candidates)

    def extend() -> bool:
        slot = len(assignment)
        if slot == len(domain):
            return True
        for c in range(len(candidates)):
            if used[c]:
                continue
            if any(
                candidate_meet[assignment[j]][c] != domain_meet[j][slot]
                for j in range(slot)
            ):
                continue
            assignment.append(c)
            used[c] = True
            if extend():
                return True
            assignment.pop()
            used[c] = False
        return False

    if not extend():
        raise ConsistencyError(
            "no intersection-preserving matching of Shrikhande codes onto "
            "K4-pair codes exists; the Shrikhande connection set is wrong"
        )
    return PairingTable(domain, tuple(candidates[c] for c in assignment))


def last_sh_fibers(code: Code) -> dict[tuple[int, int], tuple[int, ...]]:
    """Fibers at the last Shrikhande coordinate.

    Keys are (prefix, suffix) where prefix is the packed value of the other
    Shrikhande coordinates and suffix the packed value of the K4 coordinates;
    values are the sorted Shrikhande vertex indices appearing there.
    """
    if code.params.m < 1:
        raise ValueError("code has no Shrikhande coordinate")
    suffix_size = 4 ** code.params.n
    fibers: dict[tuple[int, int], list[int]] = {}
    for index in code.members:
        rest, suffix = divmod(index, suffix_size)
        prefix, s = divmod(rest, 16)
        fibers.setdefault((prefix, suffix), []).append(s)
    return {key: tuple(sorted(values)) for key, values in fibers.items()}


def reduce_last_sh_coordinate(code: Code, table: Optional[PairingTable] = None) -> Code:
    """Replace the last Shrikhande coordinate by two K4 coordinates.

    Every fiber of a maximum independent set at that coordinate is one of the
    16 Shrikhande codes; each fiber is replaced by its partner code, whose
    members supply the two new K4 values.  The new values sit between the
    remaining Shrikhande block and the old K4 block.  Requires a maximum
    independent set; preserves cardinality and the property of being one.
    """
    params = code.params
    if params.m < 1:
        raise ValueError("code has no Shrikhande coordinate to reduce")
    code.assert_mds(context="reduction input")
    if table is None:
        table = derive_pairing()
    lookup = table.image_lookup()
    suffix_size = 4 ** params.n
    out_params = DoobParams(params.m - 1, params.n + 2)
    members = []
    for (prefix, suffix), fiber in last_sh_fibers(code).items():
        image = lookup.get(fiber)
        if image is None:
            raise ConsistencyError(
                f"fiber {fiber} at prefix {prefix}, suffix {suffix} "
                f"is not a Shrikhande code"
            )
        for z in image.members:
            members.append(prefix * 16 * suffix_size + z * suffix_size + suffix)
    return Code.from_members(out_params, members)


def permute_sh_coordinates(code: Code, perm: Sequence[int]) -> Code:
    """Relabel so that new Shrikhande slot p holds old coordinate perm[p]."""
    params = code.params
    if sorted(perm) != list(range(params.m)):
        raise ValueError(f"{tuple(perm)!r} is not a permutation of {params.m} coordinates")
    if tuple(perm) == tuple(range(params.m)):
        return code
    members = []
    for index in code.members:
        vertex = decode_vertex(index, params)
        shuffled = tuple(vertex.sh[p] for p in perm)
        members.append(encode_vertex(DoobVertex(shuffled, vertex.k), params))
    return Code.from_members(params, members)


def reduce_sh_coordinates(
    code: Code,
    table: Optional[PairingTable] = None,
    order: Optional[Sequence[int]] = None,
) -> Code:
    """Eliminate all Shrikhande coordinates, landing in a Hamming graph.

    order lists original Shrikhande coordinate positions in the order they
    are consumed; default is last first (m-1, m-2, ..., 0).  Different orders
    can produce different results.
    """
    m = code.params.m
    if order is None:
        order = tuple(range(m - 1, -1, -1))
    order = tuple(order)
    if sorted(order) != list(range(m)):
        raise ValueError(f"{order!r} is not a consumption order for {m} coordinates")
    if m == 0:
        code.assert_mds(context="reduction input")
        return code
    # Arrange slots so plain last-coordinate reduction consumes them in order.
    perm = tuple(order[m - 1 - p] for p in range(m))
    current = permute_sh_coordinates(code, perm)
    while current.params.m:
        current = reduce_last_sh_coordinate(current, table)
    return current
