"""Closed-form numerics: slopes, the weight invariant, Euler characteristics.

Euler characteristics of chain Hom-complexes are bilinear in the numerical
data.  For two chains ``E'`` and ``E''`` of the same length::

    chi(E', E'') = sum_i chi(E'_i, E''_i) - sum_{i>=1} chi(E'_i, E''_{i-1})

where ``chi(F, G) = n_F n_G (1-g) + n_F d_G - n_G d_F`` is Riemann-Roch for
``Hom(F, G)`` on a genus ``g`` curve.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import (ChainType, ChainTypeError, HiggsFixedType, HNType,
                   LengthMismatch, check_genus, dot, rational_vector)


def slope(t: ChainType, alpha: Sequence) -> Fraction:
    """The alpha-slope ``(sum d_i + sum alpha_i n_i) / sum n_i``."""
    alpha = rational_vector(alpha)
    if len(alpha) != t.length:
        raise LengthMismatch(
            f"parameter has length {len(alpha)}, chain type has {t.length}")
    return (t.degree + dot(alpha, t.ranks)) / Fraction(t.rank)


def slope_rate(t: ChainType, direction: Sequence) -> Fraction:
    """Derivative of the slope of ``t`` along ``direction``."""
    direction = rational_vector(direction)
    if len(direction) != t.length:
        raise LengthMismatch("direction length does not match chain type")
    return dot(direction, t.ranks) / Fraction(t.rank)


def weight(t: HiggsFixedType) -> Fraction:
    """``-2 sum_{i<j} (j-i) n_i n_j (d_j/n_j - d_i/n_i)``.

    Computed as ``-2 sum (j-i)(n_i d_j - n_j d_i)``, which is the same number
    without any division.
    """
    if any(n == 0 for n in t.ranks):
        raise ChainTypeError("weight needs every piece to have positive rank")
    n, d = t.ranks, t.degs
    total = 0
    for i in range(len(n)):
        for j in range(i + 1, len(n)):
            total += (j - i) * (n[i] * d[j] - n[j] * d[i])
    return Fraction(-2 * total)


def chi_hom(src: tuple[int, int], dst: tuple[int, int], g: int) -> int:
    """Euler characteristic of ``Hom(F, G)`` for ``F = (rank, deg)`` etc."""
    nf, df = src
    ng, dg = dst
    if nf < 0 or ng < 0:
        raise ChainTypeError("ranks must be non-negative")
    return nf * ng * (1 - g) + (nf * dg - ng * df)


def chi_chain(e1: ChainType, e2: ChainType, g: int) -> int:
    """``chi(e1, e2)``: Euler characteristic of the chain Hom-complex."""
    check_genus(g)
    if e1.length != e2.length:
        raise LengthMismatch("chi needs chain types of equal length")
    a = list(zip(e1.ranks, e1.degs))
    b = list(zip(e2.ranks, e2.degs))
    diag = sum(chi_hom(a[i], b[i], g) for i in range(len(a)))
    off = sum(chi_hom(a[i], b[i - 1], g) for i in range(1, len(a)))
    return diag - off


def hom_complex_ranks(e1: ChainType, e2: ChainType) -> tuple[int, int]:
    """Ranks of source and target of the complex computing ``chi(e1, e2)``."""
    if e1.length != e2.length:
        raise LengthMismatch("chain types of different length")
    src = sum(p * q for p, q in zip(e1.ranks, e2.ranks))
    tgt = sum(e1.ranks[i] * e2.ranks[i - 1] for i in range(1, e1.length))
    return src, tgt


def stack_dim(t: ChainType, g: int) -> int:
    # Only a dimension when alpha > alpha_Higgs (unobstructed deformations);
    # callers that care annotate this themselves.
    return -chi_chain(t, t, g)


def cross_chi(t: HNType, g: int) -> dict[tuple[int, int], int]:
    """``chi(E^l, E^j)`` for every ordered pair of blocks."""
    bs = t.blocks
    return {(l, j): chi_chain(bs[l], bs[j], g)
            for l in range(len(bs)) for j in range(len(bs))}


def hn_stratum_dim(t: HNType, g: int) -> int:
    """``-sum_j chi(E^j,E^j) - sum_{l>j} chi(E^l,E^j)``."""
    chis = cross_chi(t, g)
    k = len(t.blocks)
    return (-sum(chis[j, j] for j in range(k))
            - sum(chis[l, j] for l in range(k) for j in range(l)))


def hn_codim(t: HNType, g: int) -> int:
    """``-sum_{l<j} chi(E^l, E^j)``, the codimension in the full stack."""
    chis = cross_chi(t, g)
    k = len(t.blocks)
    return -sum(chis[l, j] for l in range(k) for j in range(l + 1, k))


def higgs_to_chain(h: ChainType, g: int) -> ChainType:
    """Untwist: chain degree ``c_i = e_i + n_i (r-i)(2g-2)``."""
    check_genus(g)
    r = h.r
    return ChainType(h.ranks, tuple(e + n * (r - i) * (2 * g - 2)
                                    for i, (n, e) in enumerate(zip(h.ranks, h.degs))))


def chain_to_higgs(c: ChainType, g: int) -> HiggsFixedType:
    check_genus(g)
    r = c.r
    return HiggsFixedType(c.ranks, tuple(d - n * (r - i) * (2 * g - 2)
                                         for i, (n, d) in enumerate(zip(c.ranks, c.degs))))


def pic_dim_identity(ranks: Sequence[int], g: int) -> tuple[int, int]:
    """Both sides of ``sum n_i^2 (g-1) + sum_{i>j} n_i n_j (2g-2) = n^2 (g-1)``."""
    ranks = list(ranks)
    lhs = sum(n * n for n in ranks) * (g - 1)
    lhs += sum(ranks[i] * ranks[j] * (2 * g - 2)
               for i in range(len(ranks)) for j in range(i))
    rhs = sum(ranks) ** 2 * (g - 1)
    return lhs, rhs
