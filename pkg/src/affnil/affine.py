"""The completed affine algebra sl_n(K) + C*c + C*d and its group action.

Elements are X + lambda*c + mu*d with X a trace-zero matrix over K.  The
bracket extends the loop-algebra bracket by the central 2-cocycle
res((dP/dt)Q) kappa(x, y) and the derivation t*d/dt.  Group elements are pairs
(z, g) acting by loop rotation t -> z*t composed with matrix conjugation plus
the residue correction to the c-component.

The bilinear form is kappa_coef * tr(xy); the default kappa_coef = 2n is the
Killing normalization of sl_n (configurable, e.g. 1 for the plain trace form).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    CertifiedDetWithDerivation,
    DimensionMismatch,
    NotTraceless,
    NotUnimodular,
    PrecisionExhausted,
    ZeroScale,
)
from .gaussian import GR_ONE, GR_ZERO, GaussianRational, gr
from .laurent import DEFAULT_WORKING_PREC, LaurentElement
from .matk import MatK

_T = LaurentElement.monomial(1)


def killing_coef(n: int) -> GaussianRational:
    """Killing-form normalization of sl_n: kappa(x, y) = 2n tr(xy)."""
    return gr(2 * n)


@dataclass(frozen=True)
class AffineElement:
    """X + lambda*c + mu*d."""

    mat: MatK
    c_coef: GaussianRational = GR_ZERO
    d_coef: GaussianRational = GR_ZERO

    def __post_init__(self):
        if self.mat.trace().is_zero_3v() is False:
            raise NotTraceless("matrix component has nonzero trace")

    @property
    def n(self) -> int:
        return self.mat.n

    def __add__(self, other: "AffineElement") -> "AffineElement":
        return AffineElement(
            self.mat + other.mat,
            self.c_coef + other.c_coef,
            self.d_coef + other.d_coef,
        )

    def __sub__(self, other: "AffineElement") -> "AffineElement":
        return AffineElement(
            self.mat - other.mat,
            self.c_coef - other.c_coef,
            self.d_coef - other.d_coef,
        )

    def __neg__(self) -> "AffineElement":
        return AffineElement(-self.mat, -self.c_coef, -self.d_coef)

    def scale(self, c: GaussianRational) -> "AffineElement":
        return AffineElement(self.mat.scale(c), self.c_coef * c, self.d_coef * c)


class DetMode(enum.Enum):
    EXACT_ONE = "exact-one"
    NTH_POWER_CERTIFIED = "nth-power-certified"


@dataclass(frozen=True)
class GroupElement:
    """(z, g) with z a loop rotation and g a matrix over K.

    EXACT_ONE means det(g) = 1 (to precision).  NTH_POWER_CERTIFIED means the
    valuation of det(g) is a multiple of n, so det(g) = r^n for some r in K
    and g is an SL_n(K) element times the scalar r; that scalar acts trivially
    on trace-zero matrices and contributes nothing to the c-correction when
    the derivation part vanishes.
    """

    z: GaussianRational
    g: MatK
    det_mode: DetMode = DetMode.EXACT_ONE

    def __post_init__(self):
        if self.z.is_zero:
            raise ZeroScale("group element with z = 0")

    @property
    def n(self) -> int:
        return self.g.n

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(GR_ONE, MatK.identity(n))

    @classmethod
    def from_shear(cls, n: int, i: int, j: int, p: LaurentElement) -> "GroupElement":
        return cls(GR_ONE, MatK.shear(n, i, j, p))

    @classmethod
    def loop_rotation(cls, n: int, z: GaussianRational) -> "GroupElement":
        """The element d_z = (z, 1)."""
        return cls(z, MatK.identity(n))

    @classmethod
    def checked(
        cls,
        g: MatK,
        z: GaussianRational = GR_ONE,
        working_prec: int = DEFAULT_WORKING_PREC,
    ) -> "GroupElement":
        """Classify the determinant and build a certified element."""
        d = g.det(working_prec)
        one = LaurentElement.one()
        if (d - one).is_zero_3v() is not False:
            return cls(z, g, DetMode.EXACT_ONE)
        if d.order() % g.n == 0:
            return cls(z, g, DetMode.NTH_POWER_CERTIFIED)
        raise NotUnimodular(
            f"det has valuation {d.order()}, not a multiple of {g.n}"
        )

    def compose(self, other: "GroupElement") -> "GroupElement":
        """Semidirect product compatible with Ad(z, g) = Ad d_z o Ad g:

        (z1, g1)(z2, g2) = (z1 z2, g1(t / z2) * g2), so that the adjoint
        action of the product is the composition of the adjoint actions.
        """
        if self.n != other.n:
            raise DimensionMismatch("group elements of different sizes")
        twisted = (
            self.g.scale_t(other.z.inverse()) if other.z != GR_ONE else self.g
        )
        mode = (
            DetMode.EXACT_ONE
            if self.det_mode is DetMode.EXACT_ONE and other.det_mode is DetMode.EXACT_ONE
            else DetMode.NTH_POWER_CERTIFIED
        )
        return GroupElement(self.z * other.z, twisted * other.g, mode)


def form_t(a: MatK, b: MatK, kappa_coef: GaussianRational) -> LaurentElement:
    """The K-bilinear form kappa_coef * tr(ab)."""
    if a.n != b.n:
        raise DimensionMismatch("form of matrices with different sizes")
    return (a * b).trace().scale(kappa_coef)


def bracket(
    a: AffineElement,
    b: AffineElement,
    kappa_coef: GaussianRational | None = None,
) -> AffineElement:
    """Lie bracket of the completed affine algebra.

    [X_a + la*c + mu_a*d, X_b + lb*c + mu_b*d]
      = (X_a X_b - X_b X_a + mu_a t X_b' - mu_b t X_a')
        + res<X_a', X_b>_t * c
    which restricts on monomials t^m ox, t^n oy to
    t^{m+n} o [x,y] + mu_a n t^n oy - mu_b m t^m ox + m delta_{m,-n}<x,y> c.
    """
    if a.n != b.n:
        raise DimensionMismatch("bracket of elements with different sizes")
    kappa = killing_coef(a.n) if kappa_coef is None else kappa_coef
    xa, xb = a.mat, b.mat
    mat = xa * xb - xb * xa
    if not a.d_coef.is_zero:
        mat = mat + xb.d_dt().scale(_T).scale(a.d_coef)
    if not b.d_coef.is_zero:
        mat = mat - xa.d_dt().scale(_T).scale(b.d_coef)
    c_part = form_t(xa.d_dt(), xb, kappa).residue()
    return AffineElement(mat, c_part, GR_ZERO)


def is_nilpotent(a: AffineElement) -> bool:
    """True iff the derivation part is zero and the matrix part is nilpotent."""
    if not a.d_coef.is_zero:
        return False
    z = (a.mat ** a.n).is_zero_3v()
    if z is None:
        raise PrecisionExhausted("nilpotency undetermined at current precision")
    return z


def adjoint_act(
    g: GroupElement,
    a: AffineElement,
    working_prec: int = DEFAULT_WORKING_PREC,
    kappa_coef: GaussianRational | None = None,
) -> AffineElement:
    """Adjoint action of (z, g), applied as Ad d_z after Ad g.

    Ad g(x + la*c + mu*d) = g x g^-1 - mu t (dg/dt) g^-1
        + (la - res<g^-1 dg/dt, x - 1/2 mu t g^-1 dg/dt>_t) c + mu d
    Ad d_z fixes c and d and substitutes t -> z t in the matrix part.
    """
    if g.n != a.n:
        raise DimensionMismatch("group and algebra elements of different sizes")
    kappa = killing_coef(a.n) if kappa_coef is None else kappa_coef
    mu = a.d_coef
    if not mu.is_zero and g.det_mode is not DetMode.EXACT_ONE:
        raise CertifiedDetWithDerivation(
            "derivation part needs an exact det-1 conjugator"
        )
    x = a.mat
    ginv = g.g.inv(working_prec)
    dg = g.g.d_dt()
    log_der = ginv * dg
    mat = g.g * x * ginv
    if mu.is_zero:
        corr = form_t(log_der, x, kappa).residue()
    else:
        mat = mat - (dg * ginv).scale(_T).scale(mu)
        shifted = x - log_der.scale(_T).scale(mu / gr(2))
        corr = form_t(log_der, shifted, kappa).residue()
    if g.z != GR_ONE:
        mat = mat.scale_t(g.z)
    return AffineElement(mat, a.c_coef - corr, mu)
