"""Harder-Narasimhan flip loci at a wall and the maximality tests.

Conventions: block 0 of an :class:`HNType` is the first step of the
filtration (largest slope on the chosen side).  For a pair of blocks
``l < j`` the relevant Hom-complex is the one computing ``chi(E^l, E^j)``:
the earlier block is the *source* ``E''`` and the later block the *target*
``E'`` of a maximal pair.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .calculus import chi_chain, hn_codim, hn_stratum_dim, hom_complex_ranks, slope
from .core import (CapExceeded, ChainError, ChainType, HNType, LengthMismatch,
                   format_rational, ray_direction, rational_vector, rationals_json)
from .stability import SUB_KINDS, Wall, _repeat, existence_necessary, test_chains

PLUS, MINUS = "plus", "minus"


def opposite_type(t: HNType) -> HNType:
    return HNType(tuple(reversed(t.blocks)))


# -- maximal pairs --------------------------------------------------------------

def _drop(vec: tuple, i: int) -> tuple:
    return vec[:i] + vec[i + 1:]


@lru_cache(maxsize=None)
def _feasible(n2: tuple, d2: tuple, n1: tuple, d1: tuple) -> bool:
    r = len(n2) - 1
    if r == 0:
        return n2[0] * n1[0] == 0
    if r == 1 and n2[1] == 0 and n1[0] == 0:
        return True
    for i in range(1, r + 1):
        # phi'_i can be an isomorphism: remove slot i from both chains
        if n1[i] == n1[i - 1] and d1[i] == d1[i - 1]:
            if _feasible(_drop(n2, i), _drop(d2, i), _drop(n1, i), _drop(d1, i)):
                return True
        # phi''_i can be an isomorphism: remove slot i-1 from both chains
        if n2[i] == n2[i - 1] and d2[i] == d2[i - 1]:
            j = i - 1
            if _feasible(_drop(n2, j), _drop(d2, j), _drop(n1, j), _drop(d1, j)):
                return True
    return False


def maximal_pair_feasible(e2: ChainType, e1: ChainType) -> bool:
    """Can ``b: (+)Hom(E''_i, E'_i) -> (+)Hom(E''_i, E'_{i-1})`` be an isomorphism?

    ``e2`` is ``E''`` and ``e1`` is ``E'``.  Decided by exhaustive shortening:
    whenever one of the maps in either chain could be an isomorphism
    (equal rank and degree on both ends) the corresponding slot is removed,
    until a chain of length one or two is reached where the answer is
    immediate.
    """
    if e2.length != e1.length:
        raise LengthMismatch("maximal pair needs chains of equal length")
    ok = _feasible(e2.ranks, e2.degs, e1.ranks, e1.degs)
    if ok:
        assert any(a == 0 or b == 0 for a, b in zip(e2.ranks, e1.ranks)), \
            "feasible maximal pair without a zero slot"
    return ok


# -- canonical summand pattern ----------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    kind: str                       # "Case1", "Case2", "Case3" or "none"
    params: tuple = ()              # (("j", j),) or (("k", k), ("l", l))
    summand: Optional[ChainType] = None
    reason: str = ""

    def __bool__(self):
        return self.kind != "none"

    def to_json(self):
        out = {"case": self.kind}
        out.update(dict(self.params))
        if self.summand is not None:
            out["summand"] = self.summand.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self):
        if not self.params:
            return self.kind
        return f"{self.kind}({', '.join(f'{k}={v}' for k, v in self.params)})"


def _consecutive(idx: Sequence[int]) -> bool:
    return bool(idx) and list(idx) == list(range(idx[0], idx[-1] + 1))


def summand_pattern(sub: ChainType, quot: ChainType) -> Pattern:
    """Classify the pair ``(E'' = sub, E' = quot)`` by its supports."""
    r = sub.r
    two, one = sub.support, quot.support          # I'', I'
    if not (_consecutive(two) and _consecutive(one)) or set(two) | set(one) != set(range(r + 1)):
        return Pattern("none", reason="multi-wall configuration")
    for j in range(r + 1):
        if one == tuple(range(j + 1, r + 1)) and two == tuple(range(j + 1)):
            return Pattern("Case1", (("j", j),))
    if r not in one:
        k, l = one[-1] + 1, one[0]
        return Pattern("Case2", (("k", k), ("l", l)), _repeat(sub, l, k, k))
    if 0 not in two:
        l, k = two[0] - 1, two[-1]
        return Pattern("Case3", (("k", k), ("l", l)), _repeat(quot, l, k, l))
    return Pattern("none", reason="no canonical configuration")


def maximal_summand_pattern(t: HNType) -> Pattern:
    """Pattern of the pair (first block, sum of the remaining blocks)."""
    if len(t.blocks) < 2:
        return Pattern("none", reason="single block")
    rest = t.blocks[1]
    for b in t.blocks[2:]:
        rest = rest + b
    return summand_pattern(t.blocks[0], rest)


# -- maximality -----------------------------------------------------------------

@dataclass(frozen=True)
class MaximalityVerdict:
    chi_vanishing: bool
    rank_iso: bool
    pair_feasible: bool
    pattern: Pattern

    @property
    def maximal(self) -> bool:
        return self.chi_vanishing and self.rank_iso and self.pair_feasible

    def to_json(self):
        return {"maximal": self.maximal, "chi_vanishing": self.chi_vanishing,
                "rank_iso": self.rank_iso, "pair_feasible": self.pair_feasible,
                "pattern": self.pattern.to_json()}


def is_maximal_type(t: HNType, g: int) -> MaximalityVerdict:
    bs = t.blocks
    if len(bs) < 2:
        return MaximalityVerdict(False, False, False, Pattern("none", reason="single block"))
    pairs = [(l, j) for l in range(len(bs)) for j in range(l + 1, len(bs))]
    chi0 = all(chi_chain(bs[l], bs[j], g) == 0 for l, j in pairs)
    iso = all(len(set(hom_complex_ranks(bs[l], bs[j]))) == 1 for l, j in pairs)
    feas = all(maximal_pair_feasible(bs[l], bs[j]) for l, j in pairs)
    return MaximalityVerdict(chi0, iso, feas, maximal_summand_pattern(t))


# -- flip loci -------------------------------------------------------------------

@dataclass(frozen=True)
class FlipType:
    hn_type: HNType
    stratum_dim: int
    codim: int
    verdict: MaximalityVerdict

    @property
    def maximal(self) -> bool:
        return self.verdict.maximal

    def to_json(self):
        out = {"blocks": self.hn_type.to_json(), "dim": self.stratum_dim,
               "codim": self.codim}
        out.update(self.verdict.to_json())
        return out


@dataclass(frozen=True)
class FlipLocus:
    wall: Wall
    alpha0: tuple[Fraction, ...]
    direction: tuple[Fraction, ...]
    side: str
    types: tuple[FlipType, ...]
    t_value: Optional[Fraction] = None
    violations: tuple[str, ...] = field(default=())

    @property
    def maximal_types(self) -> list[FlipType]:
        return [ft for ft in self.types if ft.maximal]

    @property
    def hn_types(self) -> list[HNType]:
        return [ft.hn_type for ft in self.types]

    def to_json(self):
        return {"wall": self.wall.to_json(),
                "alpha": rationals_json(self.alpha0),
                "direction": rationals_json(self.direction),
                "side": self.side,
                "t": None if self.t_value is None else format_rational(self.t_value),
                "types": [ft.to_json() for ft in self.types],
                "violations": list(self.violations)}


def rank_compositions(ranks: tuple[int, ...], min_parts: int = 2):
    """Ordered decompositions of ``ranks`` into nonzero rank vectors."""
    def rec(rem):
        if not any(rem):
            yield ()
            return
        for part in itertools.product(*(range(x + 1) for x in rem)):
            if any(part):
                left = tuple(a - b for a, b in zip(rem, part))
                for tail in rec(left):
                    yield (part,) + tail
    for comp in rec(tuple(ranks)):
        if len(comp) >= min_parts:
            yield comp


def _degree_boxes(t: ChainType, comp, window):
    """Per slot: cells ``(block, lo, hi)`` with ``lo..hi`` the window box."""
    slots = []
    for s in range(t.length):
        cells = []
        for b, part in enumerate(comp):
            if part[s]:
                centre = Fraction(t.degs[s] * part[s], t.ranks[s])
                cells.append((b, math.ceil(centre - window), math.floor(centre + window)))
        slots.append(cells)
    return slots


def _slot_fillings(cells, total):
    if not cells:
        yield ()
        return
    *head, last = cells
    for vals in itertools.product(*(range(lo, hi + 1) for _, lo, hi in head)):
        v = total - sum(vals)
        if last[1] <= v <= last[2]:
            yield vals + (v,)


def degree_fillings(t: ChainType, comp, block_degs, window):
    """Integer degree matrices for ``comp`` with the given row and column sums.

    Yields ``(degs_per_block, touched)`` where ``touched`` says whether a free
    entry sits on the edge of the window box.
    """
    slots = _degree_boxes(t, comp, window)
    per_slot = [list(_slot_fillings(cells, t.degs[s])) for s, cells in enumerate(slots)]
    for choice in itertools.product(*per_slot):
        degs = [[0] * t.length for _ in comp]
        touched = False
        for s, (cells, vals) in enumerate(zip(slots, choice)):
            for (b, lo, hi), v in zip(cells, vals):
                degs[b][s] = v
                if len(cells) > 1 and (v == lo or v == hi):
                    touched = True
        if all(sum(row) == e for row, e in zip(degs, block_degs)):
            yield [tuple(row) for row in degs], touched


def _flip_type(hn_type: HNType, g: int) -> FlipType:
    return FlipType(hn_type, hn_stratum_dim(hn_type, g), hn_codim(hn_type, g),
                    is_maximal_type(hn_type, g))


def enumerate_flip_types(t: ChainType, wall: Wall, alpha0: Sequence, side: str, g: int,
                         window: Optional[int] = None,
                         direction: Optional[Sequence] = None,
                         t_value=None, single_wall: Optional[bool] = None) -> FlipLocus:
    """Candidate HN types on one side of the wall through ``alpha0``.

    ``side`` is ``"plus"`` for ``alpha0 + eps*direction`` and ``"minus"`` for
    ``alpha0 - eps*direction``; ``direction`` defaults to ``(0, 1, ..., r)``.
    A type qualifies when its blocks sum to ``t``, all have the
    ``alpha0``-slope of ``t``, have strictly decreasing slopes on the chosen
    side and each passes the test-chain conditions there.  Intra-block degrees
    range over ``+-window`` (default ``2gN``) around the rank-proportional share
    of each slot's degree; :class:`CapExceeded` is raised if an accepted type
    touches the edge of that box.
    """
    alpha0 = rational_vector(alpha0)
    if side not in (PLUS, MINUS):
        raise ChainError(f"side must be {PLUS!r} or {MINUS!r}")
    if (tuple(t.ranks), t.degree) != (tuple(wall.ranks), wall.total_deg):
        raise ChainError("chain type does not have the wall's total rank and degree")
    if not wall.contains(alpha0):
        raise ChainError("alpha0 does not lie on the wall")
    if window is None:
        window = 2 * g * t.rank
    if window < 0:
        raise ChainError("window must be non-negative")
    direction = ray_direction(t.length) if direction is None else rational_vector(direction)
    if len(direction) != t.length:
        raise LengthMismatch("direction length does not match chain type")
    sign = 1 if side == PLUS else -1
    mu0 = slope(t, alpha0)
    found = []
    for comp in rank_compositions(t.ranks):
        block_degs = []
        for part in comp:
            e = sum(part) * mu0 - sum(a * n for a, n in zip(alpha0, part))
            if e.denominator != 1:
                break
            block_degs.append(e.numerator)
        else:
            rates = [sign * sum(d * n for d, n in zip(direction, part)) / Fraction(sum(part))
                     for part in comp]
            if not all(a > b for a, b in zip(rates, rates[1:])):
                continue
            for degs, touched in degree_fillings(t, comp, block_degs, window):
                blocks = tuple(ChainType(part, d) for part, d in zip(comp, degs))
                if all(existence_necessary(b, alpha0, direction=direction, side=sign)
                       for b in blocks):
                    if touched:
                        raise CapExceeded(
                            f"flip enumeration for {t} reached the degree window "
                            f"+-{window} (block ranks {list(comp)})")
                    found.append(_flip_type(HNType(blocks), g))
    found.sort(key=lambda ft: (len(ft.hn_type), str(ft.hn_type.to_json())))
    return FlipLocus(wall, alpha0, direction, side, tuple(found), t_value,
                     tuple(_violations(found, single_wall)))


def _violations(found, single_wall) -> list[str]:
    out = []
    for ft in found:
        label = str(ft.hn_type)
        if ft.codim < 0:
            out.append(f"{label}: negative codimension {ft.codim}")
        if (ft.codim == 0) != ft.verdict.chi_vanishing:
            out.append(f"{label}: codim {ft.codim} disagrees with chi test")
        if ft.maximal and single_wall and not ft.verdict.pattern:
            out.append(f"{label}: maximal at a single wall without a canonical pattern")
    return out


@dataclass(frozen=True)
class BijectionReport:
    """How well ``opposite_type`` matches the two sides of a wall.

    ``full`` compares the whole lists.  ``two_sided`` only compares types
    whose blocks pass the test chains on both sides of the wall; a block
    that itself lies on the wall can make a type's opposite impossible, so
    only this restricted matching can be expected in general.
    """
    full: bool
    two_sided: bool
    unmatched_plus: tuple[str, ...]
    unmatched_minus: tuple[str, ...]

    def to_json(self):
        return {"full": self.full, "two_sided": self.two_sided,
                "unmatched_plus": list(self.unmatched_plus),
                "unmatched_minus": list(self.unmatched_minus)}


def _two_sided(h: HNType, alpha0, direction) -> bool:
    return all(existence_necessary(b, alpha0, direction=direction, side=s)
               for b in h.blocks for s in (1, -1))


def bijection_report(plus: FlipLocus, minus: FlipLocus) -> BijectionReport:
    if plus.alpha0 != minus.alpha0 or plus.direction != minus.direction:
        raise ChainError("flip loci come from different crossings")
    a0, d = plus.alpha0, plus.direction
    ups = [opposite_type(h) for h in plus.hn_types]
    downs = list(minus.hn_types)
    key = lambda hs: sorted(str(h.to_json()) for h in hs)
    full = key(ups) == key(downs)
    two = key(h for h in ups if _two_sided(h, a0, d)) == key(h for h in downs if _two_sided(h, a0, d))
    return BijectionReport(full, two,
                           tuple(str(opposite_type(h)) for h in ups if h not in downs),
                           tuple(str(h) for h in downs if h not in ups))


def matches_test_chain(ft_type: HNType, t: ChainType) -> Optional[str]:
    """Label of the canonical test chain of ``t`` this two-step type comes from."""
    if len(ft_type.blocks) != 2:
        return None
    first, last = ft_type.blocks
    for tc in test_chains(t):
        if tc.kind in SUB_KINDS and tc.induced_type == first:
            return tc.label
        if tc.kind == "Q" and tc.induced_type == last:
            return tc.label
    return None
