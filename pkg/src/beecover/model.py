"""System model: parameter systems, strength requirements, and their parser.

A system under test is described by an ASCII string:

    CA(N;2,3^4)                          4 ternary parameters, pairwise
    MCA(N;2,3^6 2^4)                     mixed cardinalities
    VSCA(N;2,3^15,{CA(3,3^3)})           main strength 2 plus a strength-3
                                         sub-configuration on columns 0..2
    VSCA(N;2,3^15,{CA(3,[0,4,8])})       explicit column list form

Grammar (whitespace-insensitive between tokens):

    spec     := ("CA"|"MCA") "(" "N" ";" t "," params ")"
              | "VSCA" "(" "N" ";" t "," params "," "{" sublist "}" ")"
    params   := group+                   group := v "^" k
    sublist  := sub ("," sub)*           sub   := ("CA"|"MCA") "(" t "," params ")"
                                                | "CA" "(" t "," "[" idx ("," idx)* "]" ")"

The leading "N" is a placeholder for the row count being minimized and is
ignored.  A sub written in `v^k` form binds to the leftmost not-yet-assigned
run of consecutive columns whose cardinalities match, in declaration order;
the bracket form names its columns explicitly.  Parameter values are always
the integers 0..v-1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np


class SpecError(ValueError):
    """Base for specification-string problems."""


class SpecSyntaxError(SpecError):
    """The string does not match the grammar."""


class SpecSemanticError(SpecError):
    """The string parses but describes an invalid system."""


@dataclass(frozen=True)
class ParameterSystem:
    """Ordered parameter cardinalities; cardinalities[j] counts the values
    of parameter j (the values themselves are 0..v_j-1)."""

    cardinalities: tuple[int, ...]

    def __post_init__(self):
        if len(self.cardinalities) < 2:
            raise SpecSemanticError("a system needs at least 2 parameters")
        for j, v in enumerate(self.cardinalities):
            if v < 2:
                raise SpecSemanticError(f"parameter {j} has cardinality {v}; minimum is 2")

    @property
    def p(self) -> int:
        return len(self.cardinalities)

    def cards_array(self) -> np.ndarray:
        return np.asarray(self.cardinalities, dtype=np.int64)


@dataclass(frozen=True)
class SubConfiguration:
    """A higher-strength requirement on a subset of columns."""

    columns: tuple[int, ...]
    strength: int

    def __post_init__(self):
        if any(b <= a for a, b in itertools.pairwise(self.columns)):
            raise SpecSemanticError(f"sub columns must be strictly increasing: {self.columns}")
        if not 2 <= self.strength <= len(self.columns):
            raise SpecSemanticError(
                f"sub strength {self.strength} must lie in [2, {len(self.columns)}]"
            )


@dataclass(frozen=True)
class StrengthSpec:
    """Main interaction strength plus any sub-configurations."""

    main_strength: int
    subs: tuple[SubConfiguration, ...] = ()

    def __post_init__(self):
        if self.main_strength < 2:
            raise SpecSemanticError(f"main strength {self.main_strength} below minimum 2")


@dataclass(frozen=True)
class TestCase:
    """One row: a value index per parameter."""

    __test__ = False  # domain type, not a pytest class

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    @classmethod
    def from_array(cls, arr) -> "TestCase":
        return cls(tuple(int(x) for x in arr))


@dataclass
class TestSet:
    """Ordered rows, all drawn from the same parameter system."""

    __test__ = False  # domain type, not a pytest class

    rows: list[TestCase] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def append(self, tc: TestCase) -> None:
        self.rows.append(tc)

    def as_array(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, 0), dtype=np.int64)
        return np.asarray([tc.values for tc in self.rows], dtype=np.int64)


def check_spec_against_system(system: ParameterSystem, spec: StrengthSpec) -> None:
    """Cross-validate a strength spec against its system; raises on mismatch."""
    if spec.main_strength > system.p:
        raise SpecSemanticError(
            f"main strength {spec.main_strength} exceeds parameter count {system.p}"
        )
    for sub in spec.subs:
        if sub.columns[-1] >= system.p:
            raise SpecSemanticError(
                f"sub column {sub.columns[-1]} out of range for {system.p} parameters"
            )


def validate_test_case(tc: TestCase, system: ParameterSystem) -> list[str]:
    """Report every violation of tc against the system; empty list means ok."""
    if len(tc.values) != system.p:
        return [f"length mismatch: {len(tc.values)} values for {system.p} parameters"]
    out = []
    for j, (x, v) in enumerate(zip(tc.values, system.cardinalities)):
        if not 0 <= x < v:
            out.append(f"index {j}: value {x} outside [0, {v - 1}]")
    return out


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(CA|MCA|VSCA|N|\d+|[();,{}\[\]^])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise SpecSyntaxError(f"unexpected character {rest[0]!r} at offset {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise SpecSyntaxError("unexpected end of specification")
        self.i += 1
        return tok

    def expect(self, want: str) -> None:
        tok = self.next()
        if tok != want:
            raise SpecSyntaxError(f"expected {want!r}, found {tok!r}")

    def expect_int(self) -> int:
        tok = self.next()
        if not tok.isdigit():
            raise SpecSyntaxError(f"expected an integer, found {tok!r}")
        return int(tok)


def _parse_params(ts: _TokenStream) -> list[tuple[int, int]]:
    """One or more `v^k` groups; returns [(v, k), ...]."""
    groups = []
    while ts.peek() is not None and ts.peek().isdigit():
        v = ts.expect_int()
        ts.expect("^")
        k = ts.expect_int()
        if k < 1:
            raise SpecSemanticError(f"group {v}^{k}: exponent must be >= 1")
        groups.append((v, k))
    if not groups:
        raise SpecSyntaxError("expected at least one v^k parameter group")
    return groups


def _parse_sub(ts: _TokenStream, cards: list[int], cursor: int) -> tuple[SubConfiguration, int]:
    """One sublist entry. `cursor` is the first column not yet claimed by a
    positional sub; returns the sub and the advanced cursor."""
    kw = ts.next()
    if kw not in ("CA", "MCA"):
        raise SpecSyntaxError(f"expected CA in sub-configuration, found {kw!r}")
    ts.expect("(")
    strength = ts.expect_int()
    ts.expect(",")
    if ts.peek() == "[":
        ts.next()
        cols = [ts.expect_int()]
        while ts.peek() == ",":
            ts.next()
            cols.append(ts.expect_int())
        ts.expect("]")
        if len(set(cols)) != len(cols):
            raise SpecSemanticError(f"duplicate sub columns: {cols}")
        columns = tuple(sorted(cols))
    else:
        groups = _parse_params(ts)
        width = sum(k for _, k in groups)
        if cursor + width > len(cards):
            raise SpecSemanticError(
                f"sub needs {width} columns starting at {cursor}; only {len(cards)} exist"
            )
        want = [v for v, k in groups for _ in range(k)]
        got = cards[cursor : cursor + width]
        if want != got:
            raise SpecSemanticError(
                f"sub cardinalities {want} do not match columns {cursor}..{cursor + width - 1}"
                f" of the system ({got})"
            )
        columns = tuple(range(cursor, cursor + width))
        cursor += width
    ts.expect(")")
    return SubConfiguration(columns=columns, strength=strength), cursor


def parse_spec(text: str) -> tuple[ParameterSystem, StrengthSpec]:
    """Parse a CA/MCA/VSCA string into a validated (system, spec) pair."""
    ts = _TokenStream(_tokenize(text))
    kind = ts.next()
    if kind not in ("CA", "MCA", "VSCA"):
        raise SpecSyntaxError(f"expected CA, MCA or VSCA, found {kind!r}")
    ts.expect("(")
    ts.expect("N")
    ts.expect(";")
    t = ts.expect_int()
    ts.expect(",")
    groups = _parse_params(ts)
    cards = [v for v, k in groups for _ in range(k)]

    subs: list[SubConfiguration] = []
    if kind == "VSCA":
        ts.expect(",")
        ts.expect("{")
        cursor = 0
        sub, cursor = _parse_sub(ts, cards, cursor)
        subs.append(sub)
        while ts.peek() == ",":
            ts.next()
            sub, cursor = _parse_sub(ts, cards, cursor)
            subs.append(sub)
        ts.expect("}")
    ts.expect(")")
    if ts.peek() is not None:
        raise SpecSyntaxError(f"trailing input: {ts.peek()!r}")

    system = ParameterSystem(cardinalities=tuple(cards))
    spec = StrengthSpec(main_strength=t, subs=tuple(subs))
    check_spec_against_system(system, spec)
    return system, spec


def canonical_spec(system: ParameterSystem, spec: StrengthSpec) -> str:
    """Render a (system, spec) pair back to a string that re-parses to an
    identical pair.  Runs of equal cardinalities collapse to v^k; subs use
    the explicit column-list form, which is binding-order independent."""
    groups = [f"{v}^{len(list(g))}" for v, g in itertools.groupby(system.cardinalities)]
    params = " ".join(groups)
    if spec.subs:
        subs = ",".join(
            f"CA({s.strength},[{','.join(str(c) for c in s.columns)}])" for s in spec.subs
        )
        return f"VSCA(N;{spec.main_strength},{params},{{{subs}}})"
    uniform = len(set(system.cardinalities)) == 1
    kind = "CA" if uniform else "MCA"
    return f"{kind}(N;{spec.main_strength},{params})"
