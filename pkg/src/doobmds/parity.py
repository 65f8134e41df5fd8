"""The parity family of maximum independent sets, and the bounds it yields.

Write every coordinate as a pair: a Shrikhande vertex (a, b) contributes
first component a and second component b (both mod 4), a K4 value v the bit
pair (v div 2, v mod 2).  For any rule assigning a target bit to each vector
of first components, the vertices whose first components have even sum and
whose second components sum to the target parity form a maximum independent
set.  The rule's values at odd-sum vectors never matter, since no member has
one; rules agreeing on the even-sum vectors are 'essentially equal' and yield
the same code, and essentially different rules yield different codes.  That
gives 2^(2^(2m+n-1)) distinct codes, the lower bound reported here; the
upper bound comes from the injection of all codes into those of the Hamming
graph H(2m+n,4).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .codes import Code, canonical_json, params_from_obj
from .errors import DeskScaleError, FormatError, ParameterMismatchError
from .graphs import DoobParams, check_desk_scale, decode_vertex
from .search import count_mds

# Largest rule-table size we will enumerate rules over (2^16 rules).
_RULE_ENUMERATION_LIMIT = 16

# Above this word length the class count 2^(2^(2m+n-1)) is left symbolic.
_EXACT_CLASS_COUNT_LIMIT = 6


def rule_domain_size(params: DoobParams) -> int:
    """Number of first-component vectors: 4^m * 2^n."""
    return 4 ** params.m * 2 ** params.n


def point_index(params: DoobParams, point: Sequence[int]) -> int:
    """Mixed-radix index of a first-component vector, most significant first.

    Shrikhande positions are base-4 digits, K4 positions base-2.
    """
    if len(point) != params.m + params.n:
        raise ValueError(f"point {tuple(point)!r} has wrong length for {params}")
    index = 0
    for position, value in enumerate(point):
        radix = 4 if position < params.m else 2
        if not 0 <= value < radix:
            raise ValueError(f"component {value} out of range at position {position}")
        index = index * radix + value
    return index


def index_point(params: DoobParams, index: int) -> tuple[int, ...]:
    """Inverse of point_index."""
    if not 0 <= index < rule_domain_size(params):
        raise ValueError(f"point index {index} out of range for {params}")
    digits = []
    for position in range(params.m + params.n - 1, -1, -1):
        radix = 4 if position < params.m else 2
        index, digit = divmod(index, radix)
        digits.append(digit)
    return tuple(reversed(digits))


@dataclass(frozen=True)
class ParityRule:
    """A total map from first-component vectors to target parity bits."""

    params: DoobParams
    bits: tuple[int, ...]

    def __post_init__(self):
        expected = rule_domain_size(self.params)
        if len(self.bits) != expected:
            raise ValueError(
                f"rule table has {len(self.bits)} entries, {self.params} needs {expected}"
            )
        if any(bit not in (0, 1) for bit in self.bits):
            raise ValueError("rule table entries must be 0 or 1")

    @classmethod
    def constant(cls, params: DoobParams, bit: int) -> "ParityRule":
        return cls(params, (bit,) * rule_domain_size(params))

    def value_at(self, point: Sequence[int]) -> int:
        return self.bits[point_index(self.params, point)]

    def bit_string(self) -> str:
        return "".join(str(bit) for bit in self.bits)


@lru_cache(maxsize=None)
def even_point_indices(params: DoobParams) -> tuple[int, ...]:
    """Indices of the first-component vectors with even coordinate sum."""
    return tuple(
        index
        for index in range(rule_domain_size(params))
        if sum(index_point(params, index)) % 2 == 0
    )


def essentially_equal(rule_a: ParityRule, rule_b: ParityRule) -> bool:
    """True iff the rules agree at every even-sum vector."""
    if rule_a.params != rule_b.params:
        raise ParameterMismatchError(
            f"comparing rules over {rule_a.params} and {rule_b.params}"
        )
    return all(
        rule_a.bits[index] == rule_b.bits[index]
        for index in even_point_indices(rule_a.params)
    )


def essential_key(rule: ParityRule) -> tuple[int, ...]:
    """Restriction to the even-sum vectors; a class invariant for essential equality."""
    return tuple(rule.bits[index] for index in even_point_indices(rule.params))


def all_parity_rules(params: DoobParams) -> Iterator[ParityRule]:
    """Every rule over the given parameters, in table order."""
    size = rule_domain_size(params)
    if size > _RULE_ENUMERATION_LIMIT:
        raise DeskScaleError(
            f"rule table for {params} has {size} entries; "
            f"enumeration is capped at {_RULE_ENUMERATION_LIMIT}"
        )
    for packed in range(2 ** size):
        bits = tuple(packed >> (size - 1 - position) & 1 for position in range(size))
        yield ParityRule(params, bits)


def representative_rules(params: DoobParams) -> Iterator[ParityRule]:
    """One rule per essential class: zero at odd-sum vectors, everything else free."""
    even = even_point_indices(params)
    if len(even) > _RULE_ENUMERATION_LIMIT:
        raise DeskScaleError(
            f"{params} has {len(even)} even-sum vectors; "
            f"representative enumeration is capped at {_RULE_ENUMERATION_LIMIT}"
        )
    size = rule_domain_size(params)
    for packed in range(2 ** len(even)):
        bits = [0] * size
        for position, index in enumerate(even):
            bits[index] = packed >> (len(even) - 1 - position) & 1
        yield ParityRule(params, tuple(bits))


@lru_cache(maxsize=None)
def _vertex_profile(params: DoobParams):
    """Per vertex: (first-component vector index, first-sum parity, second-sum parity)."""
    check_desk_scale(params)
    profile = []
    for index in range(params.vertex_count):
        vertex = decode_vertex(index, params)
        first = tuple(a for a, _ in vertex.sh) + tuple(v >> 1 for v in vertex.k)
        second_sum = sum(b for _, b in vertex.sh) + sum(v & 1 for v in vertex.k)
        profile.append((point_index(params, first), sum(first) % 2, second_sum % 2))
    return tuple(profile)


def build_parity_code(rule: ParityRule) -> Code:
    """The code selected by a rule: even first sum, prescribed second parity."""
    members = tuple(
        index
        for index, (point, first_parity, second_parity) in enumerate(
            _vertex_profile(rule.params)
        )
        if first_parity == 0 and second_parity == rule.bits[point]
    )
    return Code(rule.params, members)


@dataclass(frozen=True)
class EssentialClassCount:
    """The number of essential classes 2^(2^(2m+n-1)), exact when small enough."""

    log2_log2: int
    exact: Optional[int]


def count_essential_classes(params: DoobParams) -> EssentialClassCount:
    exponent = params.word_length - 1
    if params.word_length <= _EXACT_CLASS_COUNT_LIMIT:
        return EssentialClassCount(exponent, 2 ** (2 ** exponent))
    return EssentialClassCount(exponent, None)


@dataclass(frozen=True)
class BoundsReport:
    """Sandwich of the code count: parity family below, Hamming count above."""

    params: DoobParams
    lower_log2_log2: int
    lower_exact: Optional[int]
    upper_params: DoobParams
    upper_exact: Optional[int]
    actual: Optional[int]


def bounds_report(params: DoobParams) -> BoundsReport:
    """Lower and upper bounds on the number of codes, with exact values when cheap.

    The upper reference count |MDS(0,2m+n)| and the actual count are attached
    only for word length 2m+n up to 3, where enumeration takes well under a
    second; deeper counts are available through the enumeration interface.
    """
    classes = count_essential_classes(params)
    upper_params = DoobParams(0, params.word_length)
    upper_exact = None
    actual = None
    if params.word_length <= 3:
        upper_exact = count_mds(upper_params)
        actual = count_mds(params)
    return BoundsReport(
        params=params,
        lower_log2_log2=classes.log2_log2,
        lower_exact=classes.exact,
        upper_params=upper_params,
        upper_exact=upper_exact,
        actual=actual,
    )


# ---------------------------------------------------------------------------
# Rule files
# ---------------------------------------------------------------------------


def rule_to_obj(rule: ParityRule) -> dict:
    return {"m": rule.params.m, "n": rule.params.n, "bits": rule.bit_string()}


def rule_from_obj(obj) -> ParityRule:
    params = params_from_obj(obj)
    bits = obj.get("bits")
    if not isinstance(bits, str):
        raise FormatError("missing or malformed 'bits' string")
    if len(bits) != rule_domain_size(params):
        raise FormatError(
            f"'bits' has length {len(bits)}, {params} needs {rule_domain_size(params)}"
        )
    if any(ch not in "01" for ch in bits):
        raise FormatError("'bits' may contain only 0 and 1")
    return ParityRule(params, tuple(int(ch) for ch in bits))


def rule_from_hex(params: DoobParams, text: str) -> ParityRule:
    """Inline hex form: the bit string read as a big-endian hex integer."""
    size = rule_domain_size(params)
    try:
        value = int(text, 16)
    except ValueError:
        raise FormatError(f"not a hex string: {text!r}") from None
    if value < 0 or value >= 2 ** size:
        raise FormatError(f"hex value {text!r} out of range for a {size}-bit table")
    bits = tuple(value >> (size - 1 - position) & 1 for position in range(size))
    return ParityRule(params, bits)


def dump_rule(rule: ParityRule) -> str:
    return canonical_json(rule_to_obj(rule))


def load_rule(text: str) -> ParityRule:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return rule_from_obj(obj)


def write_rule(rule: ParityRule, path):
    with open(path, "w") as handle:
        handle.write(dump_rule(rule))


def read_rule(path) -> ParityRule:
    with open(path) as handle:
        return load_rule(handle.read())
