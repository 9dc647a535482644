"""Wall-crossing paths for a chain type, with re-checkable certificates.

Constant rank types are walked along ``(0, 1, ..., r)`` past every wall that
can still carry a flip.  Where that happens is bounded by an exact linear
program: a flip type at ``alpha(s)`` needs real block degrees with equal
slopes and blockwise test-chain inequalities, and the largest feasible ``s``
over all block-rank splittings bounds every flip on the ray.

Other types are walked along a direction that eventually violates one of
their test-chain inequalities; the certificate ends just past that wall.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from sympy import Rational as SR
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from .core import (ChainError, ChainType, HNType, alpha_higgs, along, check_genus,
                   format_rational, is_above_higgs, parse_rational, ray_direction,
                   rational_vector, rationals_json, validate_chain_type)
from .hn import (MINUS, PLUS, FlipLocus, bijection_report, enumerate_flip_types,
                 matches_test_chain, opposite_type, rank_compositions)
from .stability import Wall, existence_necessary, is_critical, test_chains
from .walls import Segment, WallError, perturb_to_single_walls, walls_on_segment

CLEAR, TERMINAL, FAILED = "ConstantRankClear", "TerminalMaximal", "Failed"


# -- certificate data -----------------------------------------------------------

@dataclass(frozen=True)
class CrossingRecord:
    piece: int
    t: Fraction
    alpha: tuple[Fraction, ...]
    wall: Wall
    plus: FlipLocus
    minus: FlipLocus

    @property
    def plus_maximal(self) -> list[bool]:
        return [ft.maximal for ft in self.plus.types]

    def to_json(self) -> dict:
        return {"piece": self.piece, "t": format_rational(self.t),
                "alpha": rationals_json(self.alpha), "wall": self.wall.to_json(),
                "plus": {"types": [ft.to_json() for ft in self.plus.types]},
                "minus": {"types": [ft.to_json() for ft in self.minus.types]},
                "bijection": bijection_report(self.plus, self.minus).to_json()}


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str = ""
    wall: Optional[Wall] = None
    hn_type: Optional[HNType] = None
    test_chain: str = ""

    def __bool__(self):
        return self.kind != FAILED

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.reason:
            out["reason"] = self.reason
        if self.wall is not None:
            out["wall"] = self.wall.to_json()
        if self.hn_type is not None:
            out["type"] = self.hn_type.to_json()
        if self.test_chain:
            out["test_chain"] = self.test_chain
        return out


@dataclass
class PathCertificate:
    chain_type: ChainType
    g: int
    start: tuple[Fraction, ...]
    path: list[Segment]
    crossings: list[CrossingRecord]
    verdict: Verdict
    bound: Optional[Fraction] = None
    tried: int = 0

    def to_json(self) -> dict:
        return {"type": self.chain_type.to_json(), "genus": self.g,
                "start": rationals_json(self.start),
                "path": [s.to_json() for s in self.path],
                "crossings": [c.to_json() for c in self.crossings],
                "verdict": self.verdict.to_json(),
                "bound": None if self.bound is None else format_rational(self.bound),
                "directions_tried": self.tried}


# -- starting point ----------------------------------------------------------------

def higgs_chamber_start(ranks: Sequence[int], D: int, g: int) -> tuple[Fraction, ...]:
    """A point of the chamber next to ``alpha_Higgs`` inside the region.

    Moves from ``alpha_Higgs`` along ``(0, 1, ..., r)`` to half the first
    wall crossing (or by 1/2 if none is met before 1).
    """
    length = len(ranks)
    base = alpha_higgs(length, g)
    if length == 1:
        return base
    rep = walls_on_segment(ranks, D, Segment(base, ray_direction(length), 1))
    step = rep.crossings[0].t / 2 if rep.crossings else Fraction(1, 2)
    return along(base, ray_direction(length), step)


def nudge(ranks, D, alpha, g, max_halvings: int = 40) -> tuple[Fraction, ...]:
    """``alpha`` itself if it is off every wall, else the first clear ``alpha + eps*(0,..,r)``."""
    alpha = rational_vector(alpha)
    if not is_critical(ranks, D, alpha):
        return alpha
    d = ray_direction(len(alpha))
    for k in range(1, max_halvings + 1):
        cand = along(alpha, d, Fraction(1, 2 ** k))
        if not is_critical(ranks, D, cand) and is_above_higgs(cand, g):
            return cand
    raise WallError("could not move the start point off the walls")


# -- the flip horizon for the constant-rank ray ------------------------------------

def _tc_coeffs(tc_kind, index, part):
    """Which block-degree cells make up a test chain's degree, with multiplicity."""
    length = len(part)
    mult = [0] * length
    if tc_kind == "trunc":
        for s in range(index[0] + 1):
            mult[s] = 1
        return mult
    l, k = index
    src = k if tc_kind == "S" else l
    for s in range(length):
        mult[s] = 1
    for s in range(l, k + 1):
        mult[s] = 0
    mult[src] += k - l + 1
    return mult


def flip_horizon(t: ChainType, start: Sequence, direction: Sequence) -> Optional[Fraction]:
    """Largest ``s`` at which ``start + s*direction`` can carry any flip type.

    ``None`` when no block splitting can ever be semistable-balanced on the
    line.  Raises :class:`ChainError` if the bound is infinite.
    """
    start = rational_vector(start)
    direction = rational_vector(direction)
    N, D = t.rank, t.degree
    best = None
    for comp in rank_compositions(t.ranks):
        rates = [sum(d * n for d, n in zip(direction, p)) / Fraction(sum(p)) for p in comp]
        if not (all(a > b for a, b in zip(rates, rates[1:]))
                or all(a < b for a, b in zip(rates, rates[1:]))):
            continue
        cells = [(b, s) for b, p in enumerate(comp) for s in range(t.length) if p[s]]
        col = {c: i for i, c in enumerate(cells)}
        nv = len(cells) + 1                       # last variable is s
        A, B, Aeq, Beq = [], [], [], []
        for s in range(t.length):
            row = [Fraction(0)] * nv
            for b in range(len(comp)):
                if (b, s) in col:
                    row[col[b, s]] = Fraction(1)
            if any(row):
                Aeq.append(row)
                Beq.append(Fraction(t.degs[s]))

        def slope_row(b, mult, ranks):
            # coefficients of m * (slope of the sub-object) in (x, s), plus constant
            row = [Fraction(0)] * nv
            for s_, k in enumerate(mult):
                if k and (b, s_) in col:
                    row[col[b, s_]] += k
            row[-1] += sum(d * n for d, n in zip(direction, ranks))
            return row, sum(a * n for a, n in zip(start, ranks))

        for b, part in enumerate(comp):
            m = sum(part)
            row, const = slope_row(b, [1] * t.length, part)
            # block slope = total slope: row/m + const/m = (D + start.n + s dir.n)/N
            eq = [x / m for x in row]
            eq[-1] -= sum(d * n for d, n in zip(direction, t.ranks)) / Fraction(N)
            Aeq.append(eq)
            Beq.append(Fraction(D + sum(a * n for a, n in zip(start, t.ranks)), N) - const / m)
            block = ChainType(part, tuple(0 for _ in part))
            prow = [x / m for x in row]
            for tc in test_chains(block):
                u = tc.induced_type.ranks
                mu = sum(u)
                mult = _tc_coeffs(tc.kind, tc.index, part)
                trow, tconst = slope_row(b, mult, u)
                lhs = [x / mu for x in trow]
                diff = [x - y for x, y in zip(lhs, prow)]     # slope(tc) - slope(block)
                dconst = tconst / mu - const / m
                if tc.kind == "Q":
                    diff, dconst = [-x for x in diff], -dconst
                A.append(diff)
                B.append(-dconst)
        # free variables as differences of non-negative ones
        split = lambda rows: [[SR(c.numerator, c.denominator) for c in r]
                              + [SR(-c.numerator, c.denominator) for c in r] for r in rows]
        vals = lambda xs: [SR(v.numerator, v.denominator) for v in xs]
        if not A:
            A, B = [[Fraction(0)] * nv], [Fraction(0)]
        cost = [0] * (nv - 1) + [-1] + [0] * (nv - 1) + [1]
        try:
            val, _ = linprog(cost, split(A), vals(B), split(Aeq), vals(Beq))
        except InfeasibleLPError:
            continue
        except UnboundedLPError:
            raise ChainError(f"flips of block ranks {list(comp)} are unbounded on the ray")
        val = -val
        top = Fraction(int(val.p), int(val.q))
        best = top if best is None else max(best, top)
    return best


# -- walking -------------------------------------------------------------------------

def walk(t: ChainType, g: int, path: Sequence[Segment]) -> list[CrossingRecord]:
    """Every crossing along ``path`` with the flip loci on both sides."""
    out = []
    for i, seg in enumerate(path):
        rep = walls_on_segment(t.ranks, t.degree, seg)
        for c in rep.crossings:
            if c.multi_wall:
                raise WallError(f"multi-wall crossing at t={c.t} on piece {i}")
            alpha0 = seg.point(c.t)
            w = c.walls[0]
            plus = enumerate_flip_types(t, w, alpha0, PLUS, g, direction=seg.direction,
                                        t_value=c.t, single_wall=True)
            minus = enumerate_flip_types(t, w, alpha0, MINUS, g, direction=seg.direction,
                                         t_value=c.t, single_wall=True)
            out.append(CrossingRecord(i, c.t, alpha0, w, plus, minus))
    return out


def _judge_terminal(t: ChainType, last: CrossingRecord, seg: Segment) -> Verdict:
    far = existence_necessary(t, last.alpha, direction=seg.direction, side=1)
    if far:
        return Verdict(FAILED, "far side of the last wall is not empty")
    maxes = [ft for ft in last.plus.types if ft.maximal]
    if len(maxes) != 1:
        return Verdict(FAILED, f"{len(maxes)} maximal types at the last wall")
    label = matches_test_chain(maxes[0].hn_type, t)
    if label is None:
        return Verdict(FAILED, "maximal type does not come from a test chain")
    if opposite_type(maxes[0].hn_type) not in last.minus.hn_types:
        return Verdict(FAILED, "opposite of the maximal type missing on the near side")
    return Verdict(TERMINAL, wall=last.wall, hn_type=maxes[0].hn_type, test_chain=label)


def judge(t: ChainType, g: int, path: Sequence[Segment], records: Sequence[CrossingRecord],
          bound: Optional[Fraction]) -> Verdict:
    """Decide the verdict a path and its crossings support."""
    if t.length == 1:
        return Verdict(CLEAR, "single slot: no walls")
    if not path:
        return Verdict(FAILED, "empty path")
    for rec in records:
        if not bijection_report(rec.plus, rec.minus).two_sided:
            return Verdict(FAILED, f"opposite-type matching fails at t={rec.t}")
        if any(rec.plus.violations) or any(rec.minus.violations):
            return Verdict(FAILED, f"flip locus inconsistency at t={rec.t}")
    if t.is_constant_rank():
        for rec in records:
            if any(ft.maximal for ft in rec.plus.types):
                return Verdict(FAILED, f"maximal flip type at t={rec.t} on a constant-rank ray")
        end = path[-1].end
        ray = ray_direction(t.length)
        # the horizon is measured along the ray from the start
        s_end = (end[-1] - path[0].start[-1]) / ray[-1]
        if bound is not None and s_end <= bound:
            return Verdict(FAILED, "path stops before the flip horizon")
        if is_critical(t.ranks, t.degree, end):
            return Verdict(FAILED, "path ends on a wall")
        return Verdict(CLEAR)
    if not records:
        return Verdict(FAILED, "no crossing on the path")
    for rec in records[:-1]:
        if any(ft.maximal for ft in rec.plus.types):
            return Verdict(FAILED, f"maximal flip type before the last wall (t={rec.t})")
    return _judge_terminal(t, records[-1], path[records[-1].piece])


def _primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    gg = 0
    for x in ints:
        gg = math.gcd(gg, x)
    return tuple(Fraction(x // gg) for x in ints) if gg else tuple(Fraction(0) for _ in v)


def candidate_directions(t: ChainType, budget: int = 64) -> list[tuple[Fraction, ...]]:
    """Test-chain violation gradients, then the ray, then small combinations."""
    base = []
    for tc in test_chains(t):
        d = _primitive(tc.violation_gradient(t))
        if any(d) and d not in base:
            base.append(d)
    ray = ray_direction(t.length)
    out = list(base)
    if ray not in out:
        out.append(ray)
    for u, v in itertools.combinations(list(out), 2):
        for a, b in ((1, 1), (2, 1), (1, 2)):
            w = _primitive(tuple(a * x + b * y for x, y in zip(u, v)))
            if any(w) and w not in out:
                out.append(w)
    return out[:budget]


def _exit_time(t: ChainType, start, direction):
    """First ``s > 0`` where a test-chain inequality of ``t`` fails."""
    best = None
    for tc in test_chains(t):
        if tc.induced_type == t:
            continue
        v0 = tc.violation(t, start)
        rate = sum(a * b for a, b in zip(tc.violation_gradient(t), direction))
        if rate > 0 and v0 < 0:
            s = -v0 / rate
            best = s if best is None else min(best, s)
    return best


def _try_direction(t, g, start, direction):
    s_exit = _exit_time(t, start, direction)
    if s_exit is None:
        return None
    probe = walls_on_segment(t.ranks, t.degree, Segment(start, direction, s_exit + 1))
    if not any(c.t == s_exit for c in probe.crossings):
        return None
    here = next(c for c in probe.crossings if c.t == s_exit)
    if here.multi_wall:
        return None
    later = [c.t for c in probe.crossings if c.t > s_exit]
    t_end = (s_exit + (later[0] if later else s_exit + 1)) / 2
    seg = Segment(start, direction, t_end)
    if not seg.in_region(g):
        return None
    try:
        path = perturb_to_single_walls(t.ranks, t.degree, seg, g)
    except WallError:
        return None
    records = walk(t, g, path)
    verdict = judge(t, g, path, records, None)
    return path, records, verdict


def find_path(t: ChainType, g: int, start: Optional[Sequence] = None,
              budget: int = 64) -> PathCertificate:
    """Build a path certificate for ``t`` starting at ``start``.

    ``start`` defaults to the chamber next to ``alpha_Higgs``; a start on a
    wall is nudged along ``(0, 1, ..., r)``.
    """
    t = validate_chain_type(t)
    check_genus(g)
    ranks, D = t.ranks, t.degree
    if start is None:
        start = higgs_chamber_start(ranks, D, g)
    start = rational_vector(start)
    if len(start) != t.length:
        raise ChainError("start has the wrong length")
    if t.length == 1:
        return PathCertificate(t, g, start, [], [], Verdict(CLEAR, "single slot: no walls"))
    if not is_above_higgs(start, g):
        raise ChainError("start must satisfy alpha_{i+1} - alpha_i > 2g-2")
    start = nudge(ranks, D, start, g)
    if not existence_necessary(t, start):
        return PathCertificate(t, g, start, [], [],
                               Verdict(FAILED, "test chains already fail at the start"))
    if t.is_constant_rank():
        ray = ray_direction(t.length)
        bound = flip_horizon(t, start, ray)
        H = Fraction(1)
        while H <= max(bound or 0, 0) or is_critical(ranks, D, along(start, ray, H)):
            H *= 2
        try:
            path = perturb_to_single_walls(ranks, D, Segment(start, ray, H), g)
        except WallError as exc:
            return PathCertificate(t, g, start, [], [], Verdict(FAILED, str(exc)), bound)
        records = walk(t, g, path)
        return PathCertificate(t, g, start, path, records,
                               judge(t, g, path, records, bound), bound, 1)
    tried = 0
    reasons = []
    for d in candidate_directions(t, budget):
        tried += 1
        got = _try_direction(t, g, start, d)
        if got is None:
            continue
        path, records, verdict = got
        if verdict:
            return PathCertificate(t, g, start, path, records, verdict, None, tried)
        reasons.append(verdict.reason)
    why = "no admissible direction within the search budget"
    if reasons:
        why += f" (last: {reasons[-1]})"
    return PathCertificate(t, g, start, [], [], Verdict(FAILED, why), None, tried)


# -- verification ---------------------------------------------------------------------

@dataclass
class VerifyResult:
    ok: bool
    diffs: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _diff(a, b, where: str, out: list[str]):
    if isinstance(a, dict) and isinstance(b, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                out.append(f"{where}.{k}: missing" if where else f"{k}: missing")
            else:
                _diff(a[k], b[k], f"{where}.{k}" if where else k, out)
    elif isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            out.append(f"{where}: length {len(a)} != {len(b)}")
        for i, (x, y) in enumerate(zip(a, b)):
            _diff(x, y, f"{where}[{i}]", out)
    elif a != b:
        out.append(f"{where}: {a!r} != {b!r}")


def verify_certificate(cert, g: Optional[int] = None) -> VerifyResult:
    """Recompute a certificate from its type and path and compare.

    ``cert`` may be a :class:`PathCertificate` or its JSON form.  Returns a
    truthy :class:`VerifyResult` if everything matches, otherwise a falsy
    one listing the differing fields.
    """
    data = cert.to_json() if isinstance(cert, PathCertificate) else cert
    try:
        t = ChainType.from_json(data["type"])
        genus = data["genus"] if g is None else g
        check_genus(genus)
        start = tuple(parse_rational(x) for x in data["start"])
        path = [Segment.from_json(s) for s in data["path"]]
    except (KeyError, TypeError, ValueError) as exc:
        return VerifyResult(False, [f"malformed certificate: {exc}"])
    diffs = []
    if genus != data.get("genus"):
        diffs.append(f"genus: {data.get('genus')!r} != {genus!r}")
    if data.get("verdict", {}).get("kind") == FAILED:
        diffs.append("verdict: certificate records a failure")
    if path:
        if path[0].start != start:
            diffs.append("path[0].start: does not match start")
        for i in range(1, len(path)):
            if path[i].start != path[i - 1].end:
                diffs.append(f"path[{i}].start: path is not connected")
        if not is_above_higgs(start, genus) or is_critical(t.ranks, t.degree, start):
            diffs.append("start: not a chamber point in the region")
        if not all(seg.in_region(genus) for seg in path):
            diffs.append("path: leaves the region")
    elif t.length > 1:
        diffs.append("path: empty for a chain with walls")
    try:
        records = walk(t, genus, path)
    except WallError as exc:
        return VerifyResult(False, diffs + [f"path: {exc}"])
    bound = None
    if t.length > 1 and t.is_constant_rank():
        bound = flip_horizon(t, start, ray_direction(t.length))
    fresh = {"crossings": [r.to_json() for r in records],
             "verdict": judge(t, genus, path, records, bound).to_json(),
             "bound": None if bound is None else format_rational(bound)}
    _diff({k: data.get(k) for k in fresh}, fresh, "", diffs)
    return VerifyResult(not diffs, diffs)
