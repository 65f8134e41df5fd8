"""Exhaustive enumeration of maximum independent sets in desk-scale Doob graphs.

Single factors (one Shrikhande graph or one K4) are solved by direct DFS over
vertex indices with a conflict bitmask.  Products are solved by fibering at
the last coordinate: a maximum independent set of G x F restricts, for each
vertex f of F, to a fiber in G, and a counting argument forces every fiber to
be a maximum independent set of G.  Independence across fibers then says the
fibers at adjacent factor vertices are disjoint, so enumeration reduces to
assembling pairwise-compatible smaller codes.  Output order is lexicographic
on the member tuples, independent of the search order and of the worker
count.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Optional

from .codes import Code
from .graphs import (
    DoobParams,
    Graph,
    check_desk_scale,
    complete_graph,
    doob_graph,
    shrikhande,
)

# Externally published census counts; everything else this tool reports is
# derived by its own search and flagged so.
PUBLISHED_COUNTS = {(0, 1): 4, (0, 2): 24, (1, 0): 16}


@dataclass(frozen=True)
class EnumerationResult:
    params: DoobParams
    count: int
    codes: Optional[tuple[Code, ...]]

    def is_materialized(self) -> bool:
        return self.codes is not None


def independent_sets_of_size(graph: Graph, size: int) -> list[tuple[int, ...]]:
    """All independent sets of exactly the given size, lexicographically ordered."""
    n = graph.vertex_count
    masks = graph.neighbor_masks
    out = []
    chosen = []

    def walk(start, banned, need):
        if need == 0:
            out.append(tuple(chosen))
            return
        for v in range(start, n - need + 1):
            if banned >> v & 1:
                continue
            chosen.append(v)
            walk(v + 1, banned | masks[v] | 1 << v, need - 1)
            chosen.pop()

    walk(0, 0, size)
    return out


def _decompose(params: DoobParams):
    """Split off the last coordinate: (params of the rest, factor graph).

    The rest is None when the graph is a single factor.
    """
    if params.n >= 1:
        rest = DoobParams(params.m, params.n - 1) if params.word_length > 1 else None
        return rest, complete_graph(4)
    rest = DoobParams(params.m - 1, 0) if params.m >= 2 else None
    return rest, shrikhande()


def _compatibility(sub_masks):
    """Bitmask over sub-code indices: bit j of entry i set iff codes i, j are disjoint."""
    count = len(sub_masks)
    compat = []
    for i in range(count):
        mask_i = sub_masks[i]
        bits = 0
        for j in range(count):
            if not mask_i & sub_masks[j]:
                bits |= 1 << j
        compat.append(bits)
    return compat


def _assemble(factor_masks, sub_masks, first_slots=None, count_only=False):
    """Assign a sub-code to every factor vertex, disjoint across factor edges.

    Returns assignment tuples (sub-code index per factor vertex), or just
    their number when count_only.  first_slots restricts the choice at factor
    vertex 0; the parallel driver uses it to split the search.
    """
    factor_count = len(factor_masks)
    sub_count = len(sub_masks)
    full = (1 << sub_count) - 1
    compat = _compatibility(sub_masks)
    assignment = [0] * factor_count
    out = []
    total = 0

    def walk(t):
        nonlocal total
        if t == factor_count:
            if count_only:
                total += 1
            else:
                out.append(tuple(assignment))
            return
        allowed = full
        row = factor_masks[t] & ((1 << t) - 1)
        while row and allowed:
            low = row & -row
            allowed &= compat[assignment[low.bit_length() - 1]]
            row ^= low
        if t == 0 and first_slots is not None:
            for i in first_slots:
                assignment[0] = i
                walk(1)
            return
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            assignment[t] = low.bit_length() - 1
            walk(t + 1)

    walk(0)
    return total if count_only else out


def _assembly_worker(task):
    factor_masks, sub_masks, chunk, count_only = task
    return _assemble(factor_masks, sub_masks, first_slots=chunk, count_only=count_only)


def _run_assembly(factor: Graph, sub_masks, jobs, count_only):
    sub_count = len(sub_masks)
    if jobs <= 1 or sub_count < 2 * jobs:
        return _assemble(factor.neighbor_masks, sub_masks, count_only=count_only)
    chunks = [range(start, sub_count, jobs) for start in range(jobs)]
    tasks = [
        (factor.neighbor_masks, tuple(sub_masks), tuple(chunk), count_only)
        for chunk in chunks
    ]
    context = multiprocessing.get_context("fork")
    with context.Pool(jobs) as pool:
        parts = pool.map(_assembly_worker, tasks)
    if count_only:
        return sum(parts)
    return [assignment for part in parts for assignment in part]


def _member_tuples(params: DoobParams, jobs: int) -> list[tuple[int, ...]]:
    rest, factor = _decompose(params)
    if rest is None:
        return independent_sets_of_size(factor, params.code_size)
    sub_members = _member_tuples(rest, 1)
    sub_masks = [_mask(t) for t in sub_members]
    assignments = _run_assembly(factor, sub_masks, jobs, count_only=False)
    width = factor.vertex_count
    out = []
    for assignment in assignments:
        members = sorted(
            g * width + f for f, i in enumerate(assignment) for g in sub_members[i]
        )
        out.append(tuple(members))
    return out


def _mask(members) -> int:
    mask = 0
    for v in members:
        mask |= 1 << v
    return mask


def enumerate_mds(
    params: DoobParams, materialize: bool = True, jobs: int = 1, verify: bool = True
) -> EnumerationResult:
    """All maximum independent sets of D(m,n), verified and in canonical order.

    With materialize=False only the count is produced (constant memory in the
    number of codes at the target parameters).
    """
    check_desk_scale(params)
    if not materialize:
        return EnumerationResult(params, count_mds(params, jobs=jobs), None)
    tuples = sorted(_member_tuples(params, jobs))
    codes = tuple(Code(params, members) for members in tuples)
    if verify:
        graph = doob_graph(params)
        for position, code in enumerate(codes):
            code.assert_mds(graph, context=f"enumerated code {position}")
    return EnumerationResult(params, len(codes), codes)


def count_mds(params: DoobParams, jobs: int = 1) -> int:
    """Number of maximum independent sets of D(m,n), without materializing them."""
    check_desk_scale(params)
    rest, factor = _decompose(params)
    if rest is None:
        return len(independent_sets_of_size(factor, params.code_size))
    sub_masks = [_mask(t) for t in _member_tuples(rest, 1)]
    return _run_assembly(factor, sub_masks, jobs, count_only=True)
