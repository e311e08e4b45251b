from __future__ import annotations

import random
from fractions import Fraction

import pytest

from affnil import (
    DimensionMismatch,
    LaurentElement,
    MatK,
    PrecisionExhausted,
    Singular,
    gr,
)
from affnil.matk import det_and_adj_trace
from affnil.selfcheck import random_traceless

from conftest import lp, mat


def E(n, i, j, value="1"):
    return MatK.elementary(n, i, j, lp(value))


# -- ring operations -----------------------------------------------------------


def test_identity_and_products():
    x = mat([["1", "t"], ["t^-1", "-1"]])
    assert MatK.identity(2) * x == x
    assert E(2, 0, 1) * E(2, 1, 0) == E(2, 0, 0)
    shift = E(3, 0, 1) + E(3, 1, 2)
    assert shift**2 == E(3, 0, 2)
    assert shift**3 == MatK.zero(3)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        MatK.identity(2) * MatK.identity(3)


def test_trace_and_scale_t():
    x = mat([["t", "1"], ["0", "t^-1"]])
    assert x.trace() == lp("t^-1 + t")
    assert x.scale_t(gr(2)) == mat([["2*t", "1"], ["0", "1/2*t^-1"]])


# -- determinant ----------------------------------------------------------------


def test_det_examples():
    assert MatK.identity(3).det() == lp("1")
    assert (MatK.identity(2) + E(2, 1, 0, "t^-1")).det() == lp("1")
    assert MatK.diag([lp("t"), lp("t^-1")]).det() == lp("1")


def test_det_exact_on_exact_input():
    rng = random.Random(11)
    for _ in range(20):
        a = random_traceless(rng, 3)
        b = random_traceless(rng, 3)
        ab = (a * b).det()
        assert ab.prec is None
        assert ab == a.det() * b.det()


def _cofactor_det(m: MatK) -> LaurentElement:
    """Oracle: recursive cofactor expansion along the first row."""
    n = m.n
    if n == 1:
        return m.rows[0][0]
    total = lp("0")
    for j in range(n):
        entry = m.rows[0][j]
        if entry.is_zero_3v() is True:
            continue
        minor = MatK(
            [[m.rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        )
        term = entry * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_det_against_cofactor_oracle():
    rng = random.Random(41)
    for _ in range(12):
        n = rng.randint(2, 4)
        m = random_traceless(rng, n)
        assert m.det() == _cofactor_det(m)


def test_det_division_path_with_truncated_entries():
    e = LaurentElement({0: gr(1), 1: gr(1)}, 8)
    m = MatK([[e, lp("0")], [lp("1"), lp("t")]])
    d = m.det()
    assert d.equals(lp("t") * e) is not False


# -- inverse ---------------------------------------------------------------------


def test_inv_examples():
    shear = MatK.identity(2) + E(2, 1, 0, "t^-1")
    inv = shear.inv()
    assert inv == MatK.identity(2) - E(2, 1, 0, "t^-1")
    assert MatK.diag([lp("1"), lp("t")]).inv() == MatK.diag([lp("1"), lp("t^-1")])
    with pytest.raises(Singular):
        MatK.zero(2).inv()


def test_inv_multiplies_back_to_identity():
    rng = random.Random(5)
    for _ in range(15):
        a = random_traceless(rng, 3) + MatK.identity(3)
        try:
            inv = a.inv(24)
        except Singular:
            continue
        assert (a * inv - MatK.identity(3)).is_zero_3v() is not False
        assert (inv * a - MatK.identity(3)).is_zero_3v() is not False


def test_inv_exact_when_det_is_monomial():
    g = (MatK.identity(3) + E(3, 0, 1, "t^2 - 1")) * (
        MatK.identity(3) + E(3, 2, 0, "t^-1")
    )
    inv = g.inv()
    assert all(e.prec is None for row in inv.rows for e in row)
    assert g * inv == MatK.identity(3)


# -- rank -------------------------------------------------------------------------


def _numeric_rank(m: MatK, t_value: Fraction) -> int:
    """Independent oracle: substitute a rational t and eliminate over Q(i)."""
    rows = []
    for row in m.rows:
        out = []
        for e in row:
            acc = gr(0)
            for exp, c in e.coeffs.items():
                acc = acc + c * gr(t_value**exp)
            out.append(acc)
        rows.append(out)
    n = len(rows)
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, n) if not rows[i][col].is_zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot = rows[rank][col]
        for i in range(n):
            if i != rank and not rows[i][col].is_zero:
                f = rows[i][col] / pivot
                rows[i] = [rows[i][j] - f * rows[rank][j] for j in range(n)]
        rank += 1
    return rank


def test_rank_examples():
    assert E(2, 0, 1).rank() == 1
    assert MatK.zero(3).rank() == 0
    assert MatK.identity(4).rank() == 4


def test_rank_of_canonical_powers_against_numeric_oracle():
    from affnil import canonical_rep

    d = canonical_rep((4,), 2)
    expected = [_numeric_rank(d**j, Fraction(3, 7)) for j in range(5)]
    assert expected == [4, 3, 2, 1, 0]
    assert [(d**j).rank() for j in range(5)] == expected


def test_rank_monotone_under_powers():
    rng = random.Random(23)
    for _ in range(10):
        x = random_traceless(rng, 3)
        ranks = [(x**j).rank() for j in range(4)]
        assert ranks[0] == 3
        assert all(ranks[i] >= ranks[i + 1] for i in range(3))


def test_rank_raises_on_undetermined():
    unknown = LaurentElement({}, 4)
    m = MatK([[unknown, lp("0")], [lp("0"), lp("1")]])
    with pytest.raises(PrecisionExhausted):
        m.rank()


# -- derivative -------------------------------------------------------------------


def test_d_dt_examples():
    assert MatK.identity(2).d_dt() == MatK.zero(2)
    assert E(2, 0, 1, "t").d_dt() == E(2, 0, 1)
    assert (MatK.identity(2) + E(2, 1, 0, "t^-1")).d_dt() == E(2, 1, 0, "-t^-2")


def test_product_rule():
    rng = random.Random(3)
    for _ in range(10):
        a = random_traceless(rng, 3)
        b = random_traceless(rng, 3)
        assert (a * b).d_dt() == a.d_dt() * b + a * b.d_dt()


# -- kernels and the dual-number determinant ---------------------------------------


def test_kernel_basis_exact_and_in_kernel():
    x = mat([["0", "4*t^2 + 4*t^3"], ["0", "0"]])
    basis = x.kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    assert all(e.prec is None for e in v)
    assert all(e.is_zero_3v() is True for e in x.apply(v))


def test_kernel_of_zero_matrix_is_standard_basis():
    basis = MatK.zero(3).kernel_basis()
    assert len(basis) == 3
    assert basis[0] == (lp("1"), lp("0"), lp("0"))


def test_det_and_adj_trace_matches_direct_formula():
    rng = random.Random(9)
    for _ in range(10):
        p = random_traceless(rng, 3) + MatK.identity(3)
        m = random_traceless(rng, 3)
        try:
            det, adj_tr = det_and_adj_trace(p, m)
        except Singular:
            continue
        assert det == p.det()
        direct = (p.inv(32) * m).trace()
        scaled = adj_tr * det.inv(32)
        assert (direct - scaled).is_zero_3v() is not False
