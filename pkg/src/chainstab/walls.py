"""Walls met by a segment of stability parameters, and multi-wall repair."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import (ChainError, LengthMismatch, along, as_rational, dot,
                   format_rational, is_above_higgs, rational_vector,
                   rationals_json)
from .stability import Wall, canonical_sub_rank_vectors, dedupe_walls, is_critical


class WallError(ChainError):
    pass


@dataclass(frozen=True)
class Segment:
    """``alpha(t) = start + t * direction`` for ``0 <= t <= t_max``."""

    start: tuple[Fraction, ...]
    direction: tuple[Fraction, ...]
    t_max: Fraction

    def __post_init__(self):
        start = rational_vector(self.start)
        direction = rational_vector(self.direction)
        t_max = as_rational(self.t_max)
        if len(start) != len(direction):
            raise LengthMismatch("segment start and direction lengths differ")
        if not any(direction):
            raise WallError("segment direction is zero")
        if t_max <= 0:
            raise WallError("segment length t_max must be positive")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "t_max", t_max)

    def point(self, t) -> tuple[Fraction, ...]:
        return along(self.start, self.direction, t)

    @property
    def end(self) -> tuple[Fraction, ...]:
        return self.point(self.t_max)

    def reversed(self) -> Segment:
        return Segment(self.end, tuple(-x for x in self.direction), self.t_max)

    def in_region(self, g: int) -> bool:
        # The region alpha > alpha_Higgs is convex: checking endpoints suffices.
        return is_above_higgs(self.start, g) and is_above_higgs(self.end, g)

    def to_json(self) -> dict:
        return {"start": rationals_json(self.start),
                "direction": rationals_json(self.direction),
                "tmax": format_rational(self.t_max)}

    @classmethod
    def from_json(cls, obj) -> Segment:
        return cls(tuple(obj["start"]), tuple(obj["direction"]), obj["tmax"])


@dataclass(frozen=True)
class Crossing:
    t: Fraction
    walls: tuple[Wall, ...]

    @property
    def multi_wall(self) -> bool:
        return len(self.walls) > 1

    def to_json(self) -> dict:
        return {"t": format_rational(self.t),
                "walls": [w.to_json() for w in self.walls],
                "multi_wall": self.multi_wall}


@dataclass(frozen=True)
class CrossingReport:
    segment: Segment
    crossings: tuple[Crossing, ...]
    chambers: tuple[tuple[Fraction, Fraction], ...] = field(default=())

    @property
    def multi_wall(self) -> list[Crossing]:
        return [c for c in self.crossings if c.multi_wall]

    def to_json(self) -> dict:
        return {"segment": self.segment.to_json(),
                "crossings": [c.to_json() for c in self.crossings],
                "chambers": [[format_rational(a), format_rational(b)]
                             for a, b in self.chambers]}


def walls_on_segment(ranks: Sequence[int], D: int, seg: Segment) -> CrossingReport:
    """Every wall crossing strictly inside ``(0, t_max)``.

    For each sub-rank vector the wall functional is affine in ``t``, so its
    integer values over the segment are finite and are listed exactly.
    """
    ranks = tuple(ranks)
    if len(ranks) != len(seg.start):
        raise LengthMismatch("segment length does not match ranks")
    hits: dict[Fraction, list[Wall]] = {}
    for nprime in canonical_sub_rank_vectors(ranks):
        probe = Wall(ranks, D, nprime, 0)
        f0 = probe.functional(seg.start)
        rate = dot(probe.normal, seg.direction)
        if rate == 0:
            if f0.denominator == 1:
                raise WallError(f"segment lies inside the wall n'={list(nprime)}, e'={f0}")
            continue
        f1 = f0 + rate * seg.t_max
        lo, hi = min(f0, f1), max(f0, f1)
        for k in range(math.floor(lo) + 1, math.ceil(hi)):
            t = (k - f0) / rate
            hits.setdefault(t, []).append(Wall(ranks, D, nprime, k))
    crossings = tuple(Crossing(t, tuple(dedupe_walls(hits[t]))) for t in sorted(hits))
    cuts = [Fraction(0)] + [c.t for c in crossings] + [seg.t_max]
    chambers = tuple(zip(cuts[:-1], cuts[1:]))
    return CrossingReport(seg, crossings, chambers)


def _detour(ranks, D, a, p, b, expected, g, max_halvings):
    """Find ``v`` so that ``a -> v -> b`` meets each wall at ``p`` once, alone."""
    length = len(p)
    units = []
    for j in range(length):
        for sign in (1, -1):
            e = [Fraction(0)] * length
            e[j] = Fraction(sign)
            units.append(tuple(e))
    for k in range(1, max_halvings + 1):
        eps = Fraction(1, 2 ** k)
        for u in units:
            v = tuple(x + eps * y for x, y in zip(p, u))
            if is_critical(ranks, D, v):
                continue
            if g is not None and not is_above_higgs(v, g):
                continue
            pieces = [Segment(a, tuple(y - x for x, y in zip(a, v)), 1),
                      Segment(v, tuple(y - x for x, y in zip(v, b)), 1)]
            seen = []
            ok = True
            for piece in pieces:
                rep = walls_on_segment(ranks, D, piece)
                if rep.multi_wall:
                    ok = False
                    break
                seen.extend(c.walls[0].hyperplane() for c in rep.crossings)
            if ok and sorted(seen) == sorted(expected):
                return pieces
    return None


def perturb_to_single_walls(ranks: Sequence[int], D: int, seg: Segment,
                            g: Optional[int] = None,
                            max_halvings: int = 30) -> list[Segment]:
    """Replace ``seg`` by a path whose crossings each lie on a single wall.

    Each multi-wall point ``p`` is bypassed through ``p + eps * (+-e_j)``,
    trying ``eps = 1/2, 1/4, ...`` and coordinates in order; the first detour
    that meets exactly the walls through ``p``, one at a time, is used.  The
    endpoints are unchanged, so the end chambers are too.  With ``g`` given
    the detour also stays in the region ``alpha > alpha_Higgs``.
    """
    ranks = tuple(ranks)
    if is_critical(ranks, D, seg.start) or is_critical(ranks, D, seg.end):
        raise WallError("segment endpoint lies on a wall; nudge it first")
    report = walls_on_segment(ranks, D, seg)
    if not report.multi_wall:
        return [seg]
    ts = [c.t for c in report.crossings]
    out = []
    cursor = Fraction(0)
    for idx, c in enumerate(report.crossings):
        if not c.multi_wall:
            continue
        prev = ts[idx - 1] if idx else Fraction(0)
        nxt = ts[idx + 1] if idx + 1 < len(ts) else seg.t_max
        ta, tb = (prev + c.t) / 2, (c.t + nxt) / 2
        pieces = _detour(ranks, D, seg.point(ta), seg.point(c.t), seg.point(tb),
                         [w.hyperplane() for w in c.walls], g, max_halvings)
        if pieces is None:
            raise WallError(f"could not separate the walls meeting at t={c.t}")
        if ta > cursor:
            out.append(Segment(seg.point(cursor), seg.direction, ta - cursor))
        out.extend(pieces)
        cursor = tb
    if cursor < seg.t_max:
        out.append(Segment(seg.point(cursor), seg.direction, seg.t_max - cursor))
    return out
