"""Shared vocabulary: exact rationals, chain types, HN types, stability parameters.

Every number in the package is either a Python ``int`` or a
:class:`fractions.Fraction`; nothing is ever converted to a float.

Index convention: slot ``i`` of a rank/degree vector is the bundle ``E_i`` of
the chain ``E_r -> ... -> E_1 -> E_0``, so slot 0 is the rightmost bundle and
the maps go from slot ``i`` to slot ``i - 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class ChainError(ValueError):
    """Malformed input to one of the engine operations."""


class ChainTypeError(ChainError):
    pass


class LengthMismatch(ChainError):
    pass


class CapExceeded(RuntimeError):
    """An enumeration hit its search window; the result would be truncated."""


# -- rationals ---------------------------------------------------------------

def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected outright: a float slope is already wrong.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ChainError("empty rational")
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except ZeroDivisionError:
        raise
    except ValueError as exc:
        raise ChainError(f"not a rational: {s!r}") from exc


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in xs)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise LengthMismatch(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


# -- genus and stability parameters -------------------------------------------

def check_genus(g: int) -> int:
    if isinstance(g, bool) or not isinstance(g, int):
        raise ChainError(f"genus must be an integer, got {g!r}")
    if g < 2:
        raise ChainError(f"genus must be at least 2, got {g}")
    return g


def alpha_higgs(length: int, g: int) -> tuple[Fraction, ...]:
    """The parameter ``(i(2g-2))_i`` matching Higgs-bundle stability."""
    check_genus(g)
    return tuple(Fraction(i * (2 * g - 2)) for i in range(length))


def is_above_higgs(alpha: Sequence, g: int) -> bool:
    """True iff every gap ``alpha[i+1] - alpha[i]`` exceeds ``2g - 2``."""
    alpha = rational_vector(alpha)
    return all(alpha[i + 1] - alpha[i] > 2 * g - 2 for i in range(len(alpha) - 1))


def ray_direction(length: int) -> tuple[Fraction, ...]:
    """The direction ``(0, 1, ..., r)``."""
    return tuple(Fraction(i) for i in range(length))


def along(alpha: Sequence, direction: Sequence, t) -> tuple[Fraction, ...]:
    t = as_rational(t)
    if len(alpha) != len(direction):
        raise LengthMismatch("parameter and direction lengths differ")
    return tuple(as_rational(a) + t * as_rational(d) for a, d in zip(alpha, direction))


# -- chain types --------------------------------------------------------------

@dataclass(frozen=True)
class ChainType:
    """Rank and degree vectors of a chain, slot 0 first."""

    ranks: tuple[int, ...]
    degs: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(self.ranks)
        degs = tuple(self.degs)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "degs", degs)
        for x in ranks + degs:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ChainTypeError(f"ranks and degrees must be integers, got {x!r}")
        if not ranks and not degs:
            raise ChainTypeError("empty chain type")
        if len(ranks) != len(degs):
            raise LengthMismatch(
                f"ranks and degs have different lengths ({len(ranks)} vs {len(degs)})")
        for i, (n, d) in enumerate(zip(ranks, degs)):
            if n < 0:
                raise ChainTypeError(f"negative rank {n} in slot {i}")
            if n == 0 and d != 0:
                raise ChainTypeError(f"nonzero degree {d} at zero rank in slot {i}")
        if sum(ranks) < 1:
            raise ChainTypeError("total rank must be positive")

    @property
    def length(self) -> int:
        return len(self.ranks)

    @property
    def r(self) -> int:
        return len(self.ranks) - 1

    @property
    def rank(self) -> int:
        return sum(self.ranks)

    @property
    def degree(self) -> int:
        return sum(self.degs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.ranks) if n)

    def is_constant_rank(self) -> bool:
        return len(set(self.ranks)) == 1

    def __add__(self, other: ChainType) -> ChainType:
        if self.length != other.length:
            raise LengthMismatch("cannot add chain types of different lengths")
        return ChainType(tuple(a + b for a, b in zip(self.ranks, other.ranks)),
                         tuple(a + b for a, b in zip(self.degs, other.degs)))

    def to_json(self) -> dict:
        return {"ranks": list(self.ranks), "degs": list(self.degs)}

    @classmethod
    def from_json(cls, obj: dict) -> ChainType:
        return cls(tuple(obj["ranks"]), tuple(obj["degs"]))

    def __str__(self):
        return f"({','.join(map(str, self.ranks))};{','.join(map(str, self.degs))})"


def chain_type(ranks: Sequence[int], degs: Sequence[int]) -> ChainType:
    return ChainType(tuple(ranks), tuple(degs))


def validate_chain_type(t) -> ChainType:
    """Return ``t`` if it is a well-formed chain type, else raise.

    Accepts a :class:`ChainType` or anything with ``ranks`` and ``degs``
    (including the JSON dict form).
    """
    if isinstance(t, ChainType):
        return ChainType(t.ranks, t.degs)
    if isinstance(t, dict):
        return ChainType.from_json(t)
    return ChainType(tuple(t.ranks), tuple(t.degs))


def slot_type(length: int, slot: int, rank: int, deg: int) -> ChainType:
    """A chain type supported in a single slot."""
    ranks = [0] * length
    degs = [0] * length
    ranks[slot] = rank
    degs[slot] = deg
    return ChainType(tuple(ranks), tuple(degs))


@dataclass(frozen=True)
class HiggsFixedType(ChainType):
    """Ranks and degrees of a fixed-point stratum, Higgs convention.

    The Higgs field goes ``E_i -> E_{i-1} (x) Omega``; every piece is nonzero.
    """

    def __post_init__(self):
        super().__post_init__()
        if any(n == 0 for n in self.ranks):
            raise ChainTypeError("fixed-point types have no zero-rank pieces")

    @classmethod
    def from_json(cls, obj: dict) -> HiggsFixedType:
        return cls(tuple(obj["ranks"]), tuple(obj["degs"]))


@dataclass(frozen=True)
class HNType:
    """An ordered list of blocks; block 0 is the first (maximal slope) piece."""

    blocks: tuple[ChainType, ...]

    def __post_init__(self):
        blocks = tuple(validate_chain_type(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ChainTypeError("an HN type needs at least one block")
        if len({b.length for b in blocks}) != 1:
            raise LengthMismatch("HN blocks have different chain lengths")

    @property
    def total(self) -> ChainType:
        out = self.blocks[0]
        for b in self.blocks[1:]:
            out = out + b
        return out

    @property
    def length(self) -> int:
        return self.blocks[0].length

    def __len__(self):
        return len(self.blocks)

    def check_total(self, total: ChainType) -> HNType:
        if self.total != total:
            raise ChainTypeError(f"blocks sum to {self.total}, expected {total}")
        return self

    def to_json(self) -> list:
        return [b.to_json() for b in self.blocks]

    @classmethod
    def from_json(cls, obj: list) -> HNType:
        return cls(tuple(ChainType.from_json(b) for b in obj))

    def __str__(self):
        return "[" + "; ".join(str(b) for b in self.blocks) + "]"


# -- JSON helpers ---------------------------------------------------------------

def canonical_json(obj) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def rationals_json(xs) -> list[str]:
    return [format_rational(x) for x in xs]


def is_coprime(n: int, d: int) -> bool:
    return gcd(n, d) == 1
