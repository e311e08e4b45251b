"""Classification of nilpotent orbits: the label map, conjugacy, enumeration.

A nilpotent element X + lambda*c is reduced to a quasi-Jordan form D; the
orbit label is (sigma, k, level) where sigma is the block-size partition,
k the valuation of the product of block multiplicities reduced mod the
smallest part, and the level is the c-coefficient of the reduced element.

The level correction res<h^-1 h', x>_t along the computed conjugator h = S T
collapses, for T = P^-1, to -kappa * res tr(P^-1 x P'), and tr(adj(P) x P')
comes out of a single dual-number determinant, so the whole computation stays
in exact arithmetic with one scalar series inversion at the end.
"""

from __future__ import annotations

from typing import List, Tuple

from .affine import AffineElement, DetMode, GroupElement, killing_coef
from .errors import (
    NotConjugate,
    NotNilpotent,
    PrecisionExhausted,
    ShapeMismatch,
)
from .gaussian import GR_ONE, GR_ZERO, GaussianRational
from .laurent import DEFAULT_WORKING_PREC, LaurentElement
from .matk import MatK, det_and_adj_trace
from .normalform import (
    OrbitLabel,
    QuasiJordanForm,
    canonical_rep,
    mult_order,
    reduce_to_quasi_jordan,
)

_L_ONE = LaurentElement.one()


def _require_nilpotent(a: AffineElement):
    if not a.d_coef.is_zero:
        raise NotNilpotent("element has nonzero derivation component")
    z = (a.mat ** a.n).is_zero_3v()
    if z is None:
        raise PrecisionExhausted("nilpotency undetermined at current precision")
    if z is False:
        raise NotNilpotent("matrix component is not nilpotent")


def classify(
    a: AffineElement,
    working_prec: int = DEFAULT_WORKING_PREC,
    kappa_coef: GaussianRational | None = None,
) -> OrbitLabel:
    """The complete orbit invariant (sigma, k, level) of a nilpotent element."""
    _require_nilpotent(a)
    kappa = killing_coef(a.n) if kappa_coef is None else kappa_coef
    data = reduce_to_quasi_jordan(a.mat, working_prec)
    sigma = data.form.sizes()
    smallest = sigma[-1]
    k = mult_order(data.form) % smallest
    if data.p_mat is None:
        level = a.c_coef
    else:
        p_mat = data.p_mat
        direction = a.mat * p_mat.d_dt()
        if p_mat.all_exact() and direction.all_exact():
            det_p, adj_trace = det_and_adj_trace(p_mat, direction)
            series = adj_trace * det_p.inv(working_prec)
        else:
            inv_p = p_mat.inv(working_prec)
            series = (inv_p * direction).trace()
        level = a.c_coef + kappa * series.residue()
    return OrbitLabel(sigma, k, level)


def level_of(
    a: AffineElement,
    working_prec: int = DEFAULT_WORKING_PREC,
    kappa_coef: GaussianRational | None = None,
) -> GaussianRational:
    """The level of the orbit through a nilpotent element."""
    return classify(a, working_prec, kappa_coef).level


def are_conjugate(
    a: AffineElement,
    b: AffineElement,
    working_prec: int = DEFAULT_WORKING_PREC,
    kappa_coef: GaussianRational | None = None,
) -> bool:
    """Orbit equality through the complete invariant."""
    return classify(a, working_prec, kappa_coef) == classify(
        b, working_prec, kappa_coef
    )


def conjugator_quasi_jordan(
    src: QuasiJordanForm,
    dst: QuasiJordanForm,
    working_prec: int = DEFAULT_WORKING_PREC,
) -> GroupElement:
    """Diagonal h with h.g M(src) h.g^-1 = M(dst).

    Requires equal block sizes and the multiplicity-valuation difference to be
    a multiple of the smallest part; the free scalar of the last block is the
    monomial that makes ord(det h.g) vanish.
    """
    sizes = src.sizes()
    if sizes != dst.sizes():
        raise ShapeMismatch(f"block sizes {sizes} vs {dst.sizes()}")
    n_src = mult_order(src)
    n_dst = mult_order(dst)
    smallest = sizes[-1]
    if (n_dst - n_src) % smallest != 0:
        raise NotConjugate(
            f"multiplicity valuations differ by {n_dst - n_src}, "
            f"not a multiple of {smallest}"
        )
    power = (n_dst - n_src) // smallest
    entries: List[LaurentElement] = []
    last = len(sizes) - 1
    for bi, (size, p_diag) in enumerate(src.blocks):
        q_diag = dst.blocks[bi][1]
        e = LaurentElement.monomial(power) if bi == last else _L_ONE
        entries.append(e)
        for i in range(size - 1):
            e = e * p_diag[i] * q_diag[i].inv(working_prec)
            entries.append(e)
    g = MatK.diag(entries)
    # conjugation identity holds by construction; re-check to precision
    lhs = g * src.matrix()
    rhs = dst.matrix() * g
    if (lhs - rhs).is_zero_3v() is False:
        raise AssertionError("conjugator construction failed")
    det = _L_ONE
    for e in entries:
        det = det * e
    exact_one = (det - _L_ONE).is_zero_3v()
    mode = DetMode.EXACT_ONE if exact_one is True else DetMode.NTH_POWER_CERTIFIED
    return GroupElement(GR_ONE, g, mode)


def partitions(n: int) -> List[Tuple[int, ...]]:
    """Non-increasing partitions of n, ascending lexicographically."""
    result: List[Tuple[int, ...]] = []

    def rec(remaining: int, max_part: int, acc: List[int]):
        if remaining == 0:
            result.append(tuple(acc))
            return
        for p in range(min(remaining, max_part), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(n, n, [])
    result.sort()
    return result


def enumerate_orbits(
    n: int, level: GaussianRational = GR_ZERO
) -> List[Tuple[OrbitLabel, MatK]]:
    """Canonical representative per orbit label: partitions ascending, k ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    out: List[Tuple[OrbitLabel, MatK]] = []
    for sigma in partitions(n):
        for k in range(sigma[-1]):
            out.append((OrbitLabel(sigma, k, level), canonical_rep(sigma, k)))
    return out
