from __future__ import annotations

import random

import pytest

from affnil import (
    AffineElement,
    CertifiedDetWithDerivation,
    DetMode,
    GroupElement,
    MatK,
    NotTraceless,
    adjoint_act,
    bracket,
    form_t,
    gr,
    is_nilpotent,
    killing_coef,
)
from affnil.selfcheck import (
    random_gaussian,
    random_group,
    random_shear,
    random_traceless,
)

from conftest import lp, mat


def E(n, i, j, value="1"):
    return MatK.elementary(n, i, j, lp(value))


def _sl2_killing_form_oracle():
    """kappa(x, y) = tr(ad x ad y) on the basis {h, e, f} of sl_2."""
    # structure constants: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    def ad(name):
        rows = {"h": [[0, 0, 0], [0, 2, 0], [0, 0, -2]],
                "e": [[0, 0, 1], [-2, 0, 0], [0, 0, 0]],
                "f": [[0, -1, 0], [0, 0, 0], [2, 0, 0]]}
        return rows[name]

    def tr_prod(a, b):
        return sum(
            sum(a[i][k] * b[k][j] for k in range(3)) if i == j else 0
            for i in range(3)
            for j in range(3)
        )

    return {pair: tr_prod(ad(pair[0]), ad(pair[1])) for pair in ("ef", "he", "hh")}


def test_killing_normalization_against_ad_trace_oracle():
    kappa = _sl2_killing_form_oracle()
    # kappa(e, f) = 4 = 2n tr(E12 E21) at n = 2
    assert kappa["ef"] == 4
    assert form_t(E(2, 0, 1), E(2, 1, 0), killing_coef(2)) == lp("4")
    # kappa(h, h) = 8 = 2n tr(diag(1,-1)^2)
    assert kappa["hh"] == 8
    h = mat([["1", "0"], ["0", "-1"]])
    assert form_t(h, h, killing_coef(2)) == lp("8")
    assert kappa["he"] == 0


def test_form_t_examples():
    assert form_t(E(2, 0, 1), E(2, 1, 0), killing_coef(2)) == lp("4")
    upper = E(3, 0, 1) + E(3, 1, 2, "t")
    assert form_t(upper, upper, killing_coef(3)) == lp("0")
    assert form_t(E(2, 0, 1, "t"), E(2, 1, 0, "t^-1"), killing_coef(2)) == lp("4")


def test_trace_zero_enforced():
    with pytest.raises(NotTraceless):
        AffineElement(mat([["1", "0"], ["0", "0"]]))


# -- bracket ---------------------------------------------------------------------


def test_bracket_central_element():
    c_only = AffineElement(MatK.zero(2), gr(5))
    other = AffineElement(random_traceless(random.Random(1), 2), gr(2), gr(1))
    out = bracket(c_only, other)
    assert out.mat.is_zero_3v() is True
    assert out.c_coef == gr(0) and out.d_coef == gr(0)


def test_bracket_derivation_acts_as_t_ddt():
    d = AffineElement(MatK.zero(2), gr(0), gr(1))
    x = AffineElement(E(2, 0, 1, "t"))
    out = bracket(d, x)
    assert out.mat == E(2, 0, 1, "t") and out.c_coef == gr(0)


def test_bracket_monomial_cocycle():
    # [t ox E12, t^-1 ox E21] = (E11 - E22) + 4c at n = 2, Killing form
    a = AffineElement(E(2, 0, 1, "t"))
    b = AffineElement(E(2, 1, 0, "t^-1"))
    out = bracket(a, b)
    assert out.mat == mat([["1", "0"], ["0", "-1"]])
    assert out.c_coef == gr(4) and out.d_coef == gr(0)


def test_bracket_never_produces_derivation():
    rng = random.Random(2)
    for _ in range(10):
        a = AffineElement(random_traceless(rng, 2), random_gaussian(rng), gr(1))
        b = AffineElement(random_traceless(rng, 2), random_gaussian(rng), gr(-2))
        assert bracket(a, b).d_coef == gr(0)


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(2, 3)
        a, b, c = (
            AffineElement(
                random_traceless(rng, n),
                random_gaussian(rng),
                gr(rng.randint(-1, 1)),
            )
            for _ in range(3)
        )
        anti = bracket(a, b) + bracket(b, a)
        assert anti.mat.is_zero_3v() is True and anti.c_coef == gr(0)
        jac = (
            bracket(a, bracket(b, c))
            + bracket(b, bracket(c, a))
            + bracket(c, bracket(a, b))
        )
        assert jac.mat.is_zero_3v() is True and jac.c_coef == gr(0)


# -- nilpotency -------------------------------------------------------------------


def test_is_nilpotent_examples():
    assert is_nilpotent(AffineElement(E(2, 0, 1), gr(5)))
    assert not is_nilpotent(AffineElement(MatK.zero(2), gr(0), gr(1)))
    assert not is_nilpotent(AffineElement(mat([["1", "0"], ["0", "-1"]])))


# -- adjoint action ----------------------------------------------------------------


def test_adjoint_identity_fixes_everything():
    x = AffineElement(random_traceless(random.Random(4), 3), gr(2, 1), gr(3))
    out = adjoint_act(GroupElement.identity(3), x)
    assert out.mat == x.mat and out.c_coef == x.c_coef and out.d_coef == x.d_coef


def test_adjoint_loop_rotation():
    x = AffineElement(E(2, 0, 1, "t"), gr(7))
    out = adjoint_act(GroupElement.loop_rotation(2, gr(2)), x)
    assert out.mat == E(2, 0, 1, "2*t")
    assert out.c_coef == gr(7) and out.d_coef == gr(0)


def test_adjoint_worked_example():
    # Ad(I + t^-1 E21)(t ox E12 + 0c) at n = 2, Killing normalization
    g = GroupElement.from_shear(2, 1, 0, lp("t^-1"))
    x = AffineElement(E(2, 0, 1, "t"))
    out = adjoint_act(g, x)
    assert out.mat == mat([["-1", "t"], ["-t^-1", "1"]])
    assert out.c_coef == gr(4)
    assert out.d_coef == gr(0)


def test_adjoint_requires_exact_det_with_derivation():
    g = GroupElement(gr(1), MatK.diag([lp("t"), lp("t")]), DetMode.NTH_POWER_CERTIFIED)
    x = AffineElement(MatK.zero(2), gr(0), gr(1))
    with pytest.raises(CertifiedDetWithDerivation):
        adjoint_act(g, x)


def test_adjoint_preserves_trace_zero_and_derivation():
    rng = random.Random(6)
    for _ in range(10):
        n = rng.randint(2, 3)
        g = random_group(rng, n)
        x = AffineElement(random_traceless(rng, n), random_gaussian(rng))
        out = adjoint_act(g, x)
        assert out.mat.trace().is_zero_3v() is not False
        assert out.d_coef == gr(0)


def test_adjoint_group_law_on_shears():
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randint(2, 3)
        g = random_shear(rng, n)
        h = random_shear(rng, n)
        x = AffineElement(
            random_traceless(rng, n), random_gaussian(rng), gr(rng.randint(0, 1))
        )
        lhs = adjoint_act(g.compose(h), x)
        rhs = adjoint_act(g, adjoint_act(h, x))
        diff = lhs - rhs
        assert diff.mat.is_zero_3v() is not False
        assert diff.c_coef == gr(0) and diff.d_coef == gr(0)


def test_adjoint_group_law_with_rotation():
    rng = random.Random(8)
    for _ in range(10):
        n = rng.randint(2, 3)
        g = GroupElement.loop_rotation(n, gr(2)).compose(random_shear(rng, n))
        h = random_shear(rng, n).compose(GroupElement.loop_rotation(n, gr(1, 1)))
        x = AffineElement(random_traceless(rng, n), random_gaussian(rng), gr(1))
        lhs = adjoint_act(g.compose(h), x)
        rhs = adjoint_act(g, adjoint_act(h, x))
        diff = lhs - rhs
        assert diff.mat.is_zero_3v() is not False
        assert diff.c_coef == gr(0) and diff.d_coef == gr(0)


def test_adjoint_preserves_nilpotency():
    rng = random.Random(9)
    from affnil import canonical_rep, partitions

    for _ in range(10):
        n = rng.randint(2, 4)
        sigma = rng.choice(partitions(n))
        x = AffineElement(canonical_rep(sigma, 0), random_gaussian(rng))
        g = random_group(rng, n)
        assert is_nilpotent(adjoint_act(g, x))


def test_adjoint_dimension_mismatch():
    from affnil import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        adjoint_act(GroupElement.identity(3), AffineElement(MatK.zero(2)))


def test_checked_group_element_modes():
    assert GroupElement.checked(MatK.identity(2)).det_mode is DetMode.EXACT_ONE
    certified = GroupElement.checked(MatK.diag([lp("t"), lp("t")]))
    assert certified.det_mode is DetMode.NTH_POWER_CERTIFIED
    from affnil import NotUnimodular

    with pytest.raises(NotUnimodular):
        GroupElement.checked(MatK.diag([lp("t"), lp("1")]))
