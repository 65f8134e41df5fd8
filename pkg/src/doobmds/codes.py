"""Vertex codes in Doob graphs: validation, intersections, and file round-trips.

A code is a subset of the vertices of D(m,n), stored as a strictly increasing
tuple of vertex indices plus a membership bitmask.  The on-disk form is one
JSON object: {"m": m, "n": n, "members": [...]} where each member lists its m
Shrikhande coordinates as [a, b] pairs followed by its n K4 values, and the
members appear in increasing index order.  Serialization is canonical (sorted
keys, no whitespace, single trailing newline) so equal codes produce
byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ConsistencyError, FormatError, ParameterMismatchError
from .graphs import DoobParams, DoobVertex, Graph, decode_vertex, doob_graph, encode_vertex


@dataclass(frozen=True)
class Code:
    """An immutable vertex subset of D(m,n)."""

    params: DoobParams
    members: tuple[int, ...]
    mask: int = field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        mask = 0
        prev = -1
        for v in self.members:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"member {v!r} is not an integer index")
            if not 0 <= v < self.params.vertex_count:
                raise ValueError(f"member {v} out of range for {self.params}")
            if v <= prev:
                raise ValueError("members must be strictly increasing")
            prev = v
            mask |= 1 << v
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_members(cls, params: DoobParams, members: Iterable[int]) -> "Code":
        """Build a code from an unordered member iterable; duplicates are an error."""
        ordered = tuple(sorted(members))
        return cls(params, ordered)

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return isinstance(v, int) and 0 <= v < self.params.vertex_count and self.mask >> v & 1

    def intersection_size(self, other: "Code") -> int:
        if self.params != other.params:
            raise ParameterMismatchError(
                f"intersecting codes from {self.params} and {other.params}"
            )
        return (self.mask & other.mask).bit_count()

    def _resolve_graph(self, graph: Optional[Graph]) -> Graph:
        if graph is None:
            return doob_graph(self.params)
        if graph.params is not None and graph.params != self.params:
            raise ParameterMismatchError(
                f"code over {self.params} checked against graph of {graph.params}"
            )
        if graph.vertex_count != self.params.vertex_count:
            raise ParameterMismatchError(
                f"code over {self.params} checked against a {graph.vertex_count}-vertex graph"
            )
        return graph

    def is_independent(self, graph: Optional[Graph] = None) -> bool:
        g = self._resolve_graph(graph)
        return all(not (g.neighbor_masks[v] & self.mask) for v in self.members)

    def is_mds(self, graph: Optional[Graph] = None) -> bool:
        """True iff this is a maximum independent set (a distance-2 MDS code)."""
        return len(self.members) == self.params.code_size and self.is_independent(graph)

    def assert_mds(self, graph: Optional[Graph] = None, context: str = "code"):
        """Raise ConsistencyError with a reason if this is not an MDS code."""
        if len(self.members) != self.params.code_size:
            raise ConsistencyError(
                f"{context}: {len(self.members)} members, expected {self.params.code_size}"
            )
        g = self._resolve_graph(graph)
        for v in self.members:
            hit = g.neighbor_masks[v] & self.mask
            if hit:
                other = (hit & -hit).bit_length() - 1
                raise ConsistencyError(f"{context}: adjacent members {v} and {other}")

    def vertices(self) -> tuple[DoobVertex, ...]:
        return tuple(decode_vertex(v, self.params) for v in self.members)


def sort_codes(codes: Iterable[Code]) -> list[Code]:
    """Deterministic order: lexicographic by member tuple."""
    return sorted(codes, key=lambda c: c.members)


def intersection_profile(code: Code, family: Iterable[Code]) -> tuple[int, ...]:
    """Intersection sizes of one code against a fixed ordered family."""
    return tuple(code.intersection_size(other) for other in family)


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------


def canonical_json(obj) -> str:
    """Canonical serialization: sorted keys, compact separators, one newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def member_to_obj(index: int, params: DoobParams) -> list:
    vertex = decode_vertex(index, params)
    return [list(pair) for pair in vertex.sh] + list(vertex.k)


def _plain_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def member_from_obj(obj, params: DoobParams) -> int:
    if not isinstance(obj, list) or len(obj) != params.m + params.n:
        raise FormatError(
            f"member {obj!r} does not have {params.m} Shrikhande + {params.n} K4 coordinates"
        )
    sh = []
    for pair in obj[: params.m]:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(_plain_int(x) and 0 <= x <= 3 for x in pair)
        ):
            raise FormatError(f"bad Shrikhande coordinate {pair!r} in member {obj!r}")
        sh.append((pair[0], pair[1]))
    k = []
    for value in obj[params.m :]:
        if not _plain_int(value) or not 0 <= value <= 3:
            raise FormatError(f"bad K4 coordinate {value!r} in member {obj!r}")
        k.append(value)
    return encode_vertex(DoobVertex(tuple(sh), tuple(k)), params)


def code_to_obj(code: Code) -> dict:
    return {
        "m": code.params.m,
        "n": code.params.n,
        "members": [member_to_obj(v, code.params) for v in code.members],
    }


def params_from_obj(obj) -> DoobParams:
    if not isinstance(obj, dict):
        raise FormatError("top level is not a JSON object")
    for key in ("m", "n"):
        if key not in obj:
            raise FormatError(f"missing key {key!r}")
        if not _plain_int(obj[key]) or obj[key] < 0:
            raise FormatError(f"key {key!r} must be a nonnegative integer")
    try:
        return DoobParams(obj["m"], obj["n"])
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def code_from_obj(obj) -> Code:
    params = params_from_obj(obj)
    if "members" not in obj or not isinstance(obj["members"], list):
        raise FormatError("missing or malformed 'members' list")
    indices = [member_from_obj(member, params) for member in obj["members"]]
    for earlier, later in zip(indices, indices[1:]):
        if later <= earlier:
            raise FormatError("members are not in strictly increasing index order")
    return Code(params, tuple(indices))


def dump_code(code: Code) -> str:
    return canonical_json(code_to_obj(code))


def load_code(text: str) -> Code:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return code_from_obj(obj)


def write_code(code: Code, path):
    with open(path, "w") as handle:
        handle.write(dump_code(code))


def read_code(path) -> Code:
    with open(path) as handle:
        return load_code(handle.read())
