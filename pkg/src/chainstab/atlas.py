"""Census of fixed-point types of the nilpotent cone and their wt order."""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import higgs_to_chain, stack_dim, weight
from .core import (CapExceeded, ChainError, ChainType, HiggsFixedType,
                   alpha_higgs, check_genus, format_rational, is_coprime)
from .stability import _templates, existence_necessary


def compositions(n: int):
    """Compositions of ``n`` into positive parts, by length then lexicographically."""
    for k in range(1, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


@dataclass(frozen=True)
class Component:
    higgs: HiggsFixedType
    chain: ChainType
    wt: Fraction
    stack_dim: int
    strict: bool

    @property
    def status(self) -> str:
        # Only rank <= 2 is cross-checked against the classical count.
        return "verified" if self.higgs.rank <= 2 else "candidate"

    @property
    def name(self) -> str:
        return f"({','.join(map(str, self.higgs.ranks))}),({','.join(map(str, self.higgs.degs))})"

    def to_json(self) -> dict:
        return {"ranks": list(self.higgs.ranks), "degs": list(self.higgs.degs),
                "chain_degs": list(self.chain.degs), "wt": format_rational(self.wt),
                "stack_dim": self.stack_dim, "strict": self.strict,
                "status": self.status}


@dataclass
class ComponentAtlas:
    n: int
    D: int
    g: int
    components: list[Component]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def coprime(self) -> bool:
        return is_coprime(self.n, self.D)

    def order(self) -> list[int]:
        """A linear extension of the wt order (ties broken by listing order)."""
        return sorted(range(len(self.components)), key=lambda i: (self.components[i].wt, i))

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D, "g": self.g, "coprime": self.coprime,
                "components": [dict(c.to_json(), id=i) for i, c in enumerate(self.components)],
                "edges": [list(e) for e in self.edges], "order": self.order()}

    def to_dot(self) -> str:
        lines = ["digraph atlas {"]
        for i, c in enumerate(self.components):
            lines.append(f'  c{i} [label="{c.name} wt={format_rational(c.wt)}"];')
        for u, v in self.edges:
            lines.append(f"  c{u} -> c{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _integer_screen(ranks, g):
    """Fast weak test-chain check at ``alpha_Higgs`` on Higgs degrees.

    ``alpha_Higgs`` is integral, so every slope comparison clears to integers.
    The authoritative check is still :func:`existence_necessary`.
    """
    r = len(ranks) - 1
    N = sum(ranks)
    twist = [n * (r - i) * (2 * g - 2) for i, n in enumerate(ranks)]
    alpha = [i * (2 * g - 2) for i in range(r + 1)]
    an = sum(a * n for a, n in zip(alpha, ranks))
    rows = []
    for kind, _, src, induced in _templates(tuple(ranks)):
        m = sum(induced)
        rows.append((kind == "Q", [j for j in src if j is not None], m,
                     sum(a * n for a, n in zip(alpha, induced))))

    def screen(degs):
        c = [e + w for e, w in zip(degs, twist)]
        total = (sum(c) + an)
        for is_q, src, m, am in rows:
            part = (sum(c[j] for j in src) + am) * N
            whole = total * m
            if (part < whole) if is_q else (part > whole):
                return False
        return True
    return screen


def enumerate_components(n: int, D: int, g: int, cap: int | None = None,
                         dag: bool = True) -> ComponentAtlas:
    """All fixed-point types of rank ``n``, degree ``D`` passing the test chains.

    Each composition of ``n`` is paired with every Higgs degree vector within
    ``cap`` (default ``4gn``) of the rank-proportional split of ``D``; the
    chain translation must pass :func:`existence_necessary` at ``alpha_Higgs``.
    A survivor on the edge of the box raises :class:`CapExceeded`.
    """
    check_genus(g)
    if n < 1:
        raise ChainError("rank must be at least 1")
    if not is_coprime(n, D):
        warnings.warn(f"gcd({n}, {D}) != 1: alpha_Higgs may be critical", stacklevel=2)
    if cap is None:
        cap = 4 * g * n
    found = []
    for ranks in compositions(n):
        alpha = alpha_higgs(len(ranks), g)
        boxes = []
        for m in ranks[:-1]:
            centre = Fraction(D * m, n)
            boxes.append(range(math.ceil(centre - cap), math.floor(centre + cap) + 1))
        centre = Fraction(D * ranks[-1], n)
        lo, hi = math.ceil(centre - cap), math.floor(centre + cap)
        screen = _integer_screen(ranks, g)
        for head in itertools.product(*boxes):
            last = D - sum(head)
            if not lo <= last <= hi:
                continue
            degs = head + (last,)
            if not screen(degs):
                continue
            h = HiggsFixedType(ranks, degs)
            c = higgs_to_chain(h, g)
            res = existence_necessary(c, alpha, g)
            if not res:
                continue
            on_edge = last in (lo, hi) or any(d in (b[0], b[-1]) for d, b in zip(head, boxes))
            if on_edge and len(ranks) > 1:
                raise CapExceeded(f"degree window +-{cap} reached for ranks {list(ranks)}")
            found.append(Component(h, c, weight(h), stack_dim(c, g), res.strict))
    atlas = ComponentAtlas(n, D, g, found)
    return wt_order_dag(atlas) if dag else atlas


def wt_order_dag(atlas: ComponentAtlas) -> ComponentAtlas:
    """Add an edge ``u -> v`` for every pair with ``wt(u) < wt(v)``."""
    cs = atlas.components
    atlas.edges = [(u, v) for u in range(len(cs)) for v in range(len(cs))
                   if cs[u].wt < cs[v].wt]
    return atlas
