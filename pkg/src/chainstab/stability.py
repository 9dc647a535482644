"""Canonical test chains, necessary existence conditions, walls.

A wall for a total type ``(n, D)`` is labelled by a sub-rank vector ``n'``
and a sub-degree ``e'``.  Because the alpha-slope only sees the sum of the
sub-degrees, the pair ``(n', e')`` is all the data there is.  The wall
through ``alpha`` exists iff::

    e' = m' * mu_alpha(n, D) - sum_i alpha_i n'_i

is an integer, where ``m' = sum n'``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Sequence

from .calculus import slope
from .core import (ChainError, ChainType, LengthMismatch, format_rational,
                   is_above_higgs, rational_vector, rationals_json, dot)

SUB_KINDS = ("trunc", "S")


@dataclass(frozen=True)
class TestChain:
    __test__ = False  # not a pytest class

    kind: str                 # "trunc", "S" or "Q"
    index: tuple[int, ...]    # (i,) for truncations, (l, k) otherwise
    induced_type: ChainType

    @property
    def side(self) -> str:
        return {"trunc": "sub", "S": "map-in", "Q": "map-out"}[self.kind]

    @property
    def label(self) -> str:
        if self.kind == "trunc":
            return f"Trunc({self.index[0]})"
        return f"{self.kind}({self.index[0]},{self.index[1]})"

    def violation(self, t: ChainType, alpha) -> Fraction:
        """Positive exactly when this test chain's inequality fails at alpha."""
        if self.kind == "Q":
            return slope(t, alpha) - slope(self.induced_type, alpha)
        return slope(self.induced_type, alpha) - slope(t, alpha)

    def violation_gradient(self, t: ChainType) -> tuple[Fraction, ...]:
        """Gradient in alpha of :meth:`violation` (it is affine in alpha)."""
        u, m = self.induced_type.ranks, self.induced_type.rank
        w = tuple(Fraction(a, m) - Fraction(b, t.rank) for a, b in zip(u, t.ranks))
        return tuple(-x for x in w) if self.kind == "Q" else w

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": list(self.index), "side": self.side,
                "type": self.induced_type.to_json()}

    @classmethod
    def from_json(cls, obj) -> TestChain:
        return cls(obj["kind"], tuple(obj["index"]), ChainType.from_json(obj["type"]))

    def __str__(self):
        return self.label


def _repeat(t: ChainType, lo: int, hi: int, src: int) -> Optional[ChainType]:
    """Copy slot ``src`` over slots ``lo..hi``; None if nothing is left."""
    ranks = list(t.ranks)
    degs = list(t.degs)
    for i in range(lo, hi + 1):
        ranks[i] = t.ranks[src]
        degs[i] = t.degs[src]
    if not any(ranks):
        return None
    return ChainType(tuple(ranks), tuple(degs))


@lru_cache(maxsize=None)
def _templates(ranks: tuple[int, ...]):
    """``(kind, index, src)`` per test chain; slot ``s`` copies slot ``src[s]``.

    ``src[s]`` is None where the test chain is zero.  Depends on ranks only.
    """
    r = len(ranks) - 1
    out = []
    for i in range(r):
        out.append(("trunc", (i,), tuple(s if s <= i else None for s in range(r + 1))))
    pairs = [(l, k) for l in range(r + 1) for k in range(l + 1, r + 1)]
    for kind in ("S", "Q"):
        for l, k in pairs:
            pin = k if kind == "S" else l
            if all(ranks[i] >= ranks[pin] for i in range(l, k)):
                out.append((kind, (l, k),
                            tuple(pin if l <= s <= k else s for s in range(r + 1))))
    kept = []
    for kind, index, src in out:
        induced = tuple(0 if j is None else ranks[j] for j in src)
        if any(induced):
            kept.append((kind, index, tuple(None if j is None or not ranks[j] else j
                                            for j in src), induced))
    return tuple(kept)


def _induce(t: ChainType, src) -> ChainType:
    return ChainType(tuple(0 if j is None else t.ranks[j] for j in src),
                     tuple(0 if j is None else t.degs[j] for j in src))


def test_chains(t: ChainType) -> list[TestChain]:
    """Truncations, then ``S(l,k)``, then ``Q(l,k)``, each in index order.

    Test chains whose induced total rank is zero carry no inequality and are
    left out (this only happens for types with zero-rank slots).
    """
    return [TestChain(kind, index, _induce(t, src))
            for kind, index, src, _ in _templates(t.ranks)]


test_chains.__test__ = False


def _le(a, b, side: int, strict: bool) -> bool:
    """Compare slopes at ``alpha + side*eps*direction`` for infinitesimal eps."""
    if a[0] != b[0]:
        return a[0] < b[0]
    x, y = side * a[1], side * b[1]
    return x < y if strict else x <= y


@dataclass(frozen=True)
class ExistenceResult:
    passed: bool
    witness: Optional[TestChain]
    strict: bool
    above_higgs: Optional[bool] = None

    def __bool__(self):
        return self.passed

    @property
    def label(self) -> str:
        if not self.passed:
            return f"fails at {self.witness.label}"
        return "candidate nonempty (stable)" if self.strict else "candidate nonempty"

    def to_json(self) -> dict:
        return {"passed": self.passed, "strict": self.strict,
                "witness": None if self.witness is None else self.witness.to_json(),
                "above_higgs": self.above_higgs}


def existence_necessary(t: ChainType, alpha: Sequence, g: Optional[int] = None,
                        direction: Optional[Sequence] = None,
                        side: int = 1) -> ExistenceResult:
    """Check the test-chain inequalities for ``t`` at ``alpha``.

    With ``direction`` given, the check is made at ``alpha + side*eps*direction``
    for all sufficiently small ``eps > 0``, decided exactly by comparing slope
    derivatives at ties.  Semistable (weak) inequalities decide ``passed``;
    ``strict`` records whether every inequality held strictly.
    """
    alpha = rational_vector(alpha)
    if len(alpha) != t.length:
        raise LengthMismatch(
            f"parameter has length {len(alpha)}, chain type has {t.length}")
    if direction is not None:
        direction = rational_vector(direction)
        if len(direction) != t.length:
            raise LengthMismatch("direction length does not match chain type")
    if side not in (1, -1):
        raise ChainError("side must be +1 or -1")
    N = t.rank
    whole = ((t.degree + dot(alpha, t.ranks)) / Fraction(N),
             Fraction(0) if direction is None else dot(direction, t.ranks) / Fraction(N))
    strict = True
    for kind, index, src, induced in _templates(t.ranks):
        degs = tuple(0 if j is None else t.degs[j] for j in src)
        if induced == t.ranks and degs == t.degs:
            continue  # repeated degrees can reproduce t itself: no information
        m = sum(induced)
        part = ((sum(degs) + dot(alpha, induced)) / Fraction(m),
                Fraction(0) if direction is None else dot(direction, induced) / Fraction(m))
        lo, hi = (whole, part) if kind == "Q" else (part, whole)
        if not _le(lo, hi, side, strict=False):
            tc = TestChain(kind, index, ChainType(induced, degs))
            return ExistenceResult(False, tc, False, _region(alpha, g))
        if not _le(lo, hi, side, strict=True):
            strict = False
    return ExistenceResult(True, None, strict, _region(alpha, g))


def _region(alpha, g):
    return None if g is None else is_above_higgs(alpha, g)


# -- walls --------------------------------------------------------------------

@dataclass(frozen=True)
class Wall:
    """The hyperplane ``mu_alpha(n', e') = mu_alpha(n, D)`` in parameter space."""

    ranks: tuple[int, ...]
    total_deg: int
    nprime: tuple[int, ...]
    eprime: int

    @property
    def mprime(self) -> int:
        return sum(self.nprime)

    @property
    def normal(self) -> tuple[Fraction, ...]:
        N, m = sum(self.ranks), self.mprime
        return tuple(Fraction(m * n, N) - q for n, q in zip(self.ranks, self.nprime))

    @property
    def offset(self) -> Fraction:
        return self.eprime - Fraction(self.mprime * self.total_deg, sum(self.ranks))

    def functional(self, alpha) -> Fraction:
        """``(m'/N)(D + alpha.n) - alpha.n'``; equals ``e'`` on the wall."""
        alpha = rational_vector(alpha)
        N = sum(self.ranks)
        return (Fraction(self.mprime, N) * (self.total_deg + dot(alpha, self.ranks))
                - dot(alpha, self.nprime))

    def contains(self, alpha) -> bool:
        return self.functional(alpha) == self.eprime

    def complement(self) -> Wall:
        return Wall(self.ranks, self.total_deg,
                    tuple(n - q for n, q in zip(self.ranks, self.nprime)),
                    self.total_deg - self.eprime)

    def canonical(self) -> Wall:
        c = self.complement()
        return min(self, c, key=lambda w: (w.nprime, w.eprime))

    def hyperplane(self) -> tuple:
        """Hashable key identifying the hyperplane (scaled normal, offset)."""
        nv = self.normal
        lead = next(x for x in nv if x != 0)
        return tuple(x / lead for x in nv) + (self.offset / lead,)

    def to_json(self) -> dict:
        return {"nprime": list(self.nprime), "eprime": self.eprime,
                "normal": rationals_json(self.normal),
                "offset": format_rational(self.offset)}

    @classmethod
    def from_json(cls, obj, ranks, total_deg) -> Wall:
        return cls(tuple(ranks), int(total_deg), tuple(obj["nprime"]), int(obj["eprime"]))

    def __str__(self):
        return f"wall(n'={list(self.nprime)}, e'={self.eprime})"


def proportional(u: Sequence[int], v: Sequence[int]) -> bool:
    """Exact cross-multiplication test for ``u`` being a multiple of ``v``."""
    su, sv = sum(u), sum(v)
    return all(a * sv == b * su for a, b in zip(u, v))


def sub_rank_vectors(ranks: Sequence[int]) -> list[tuple[int, ...]]:
    """All admissible ``n'``: ``0 <= n' <= n``, ``0 < m' < N``, not proportional."""
    ranks = tuple(ranks)
    N = sum(ranks)
    out = []
    for nprime in itertools.product(*(range(n + 1) for n in ranks)):
        m = sum(nprime)
        if 0 < m < N and not proportional(nprime, ranks):
            out.append(nprime)
    return out


def canonical_sub_rank_vectors(ranks: Sequence[int]) -> list[tuple[int, ...]]:
    """One representative ``n'`` per complementary pair."""
    ranks = tuple(ranks)
    out = []
    for nprime in sub_rank_vectors(ranks):
        comp = tuple(n - q for n, q in zip(ranks, nprime))
        if nprime <= comp:
            out.append(nprime)
    return out


def dedupe_walls(walls) -> list[Wall]:
    """Keep one wall per hyperplane, the smallest ``(n', e')`` representative."""
    best = {}
    for w in walls:
        w = w.canonical()
        key = w.hyperplane()
        if key not in best or (w.nprime, w.eprime) < (best[key].nprime, best[key].eprime):
            best[key] = w
    return sorted(best.values(), key=lambda w: (w.nprime, w.eprime))


def is_critical(ranks: Sequence[int], D: int, alpha: Sequence) -> list[Wall]:
    """All walls for total ``(ranks, D)`` through ``alpha``.

    An empty list means ``alpha`` is not critical.
    """
    ranks = tuple(ranks)
    alpha = rational_vector(alpha)
    if len(alpha) != len(ranks):
        raise LengthMismatch("parameter length does not match ranks")
    N = sum(ranks)
    mu = (D + dot(alpha, ranks)) / Fraction(N)
    found = []
    for nprime in canonical_sub_rank_vectors(ranks):
        e = sum(nprime) * mu - dot(alpha, nprime)
        if e.denominator == 1:
            found.append(Wall(ranks, D, nprime, e.numerator))
    return dedupe_walls(found)
