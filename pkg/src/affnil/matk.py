"""Exact linear algebra for square matrices over K.

Matrices whose entries are all exact are handled by fraction-free (Bareiss)
elimination, so determinants, ranks and kernels of exact matrices come out
exact, never truncated.  Matrices carrying truncated entries fall back to
ordinary division-based elimination with tracked precision; an undetermined
pivot decision raises :class:`PrecisionExhausted` rather than guessing.

Pivoting rule everywhere: the eligible entry of least valuation in the current
column, ties broken by the lowest row index.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    PrecisionExhausted,
    Singular,
)
from .gaussian import GaussianRational
from .laurent import DEFAULT_WORKING_PREC, LaurentElement, format_laurent

Vector = Tuple[LaurentElement, ...]

_L_ZERO = LaurentElement.zero()
_L_ONE = LaurentElement.one()


class MatK:
    """An n x n matrix over K; immutable."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentElement]]):
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("MatK is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "MatK":
        return cls([[_L_ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "MatK":
        return cls(
            [[_L_ONE if i == j else _L_ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def diag(cls, entries: Sequence[LaurentElement]) -> "MatK":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else _L_ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def elementary(cls, n: int, i: int, j: int, value: LaurentElement = _L_ONE) -> "MatK":
        """value * E_ij with 0-based indices."""
        rows = [[_L_ZERO] * n for _ in range(n)]
        rows[i][j] = value
        return cls(rows)

    @classmethod
    def shear(cls, n: int, i: int, j: int, p: LaurentElement) -> "MatK":
        """I + p*E_ij for i != j; determinant 1 by construction."""
        if i == j:
            raise DimensionMismatch("shear needs off-diagonal position")
        rows = [
            [_L_ONE if r == c else _L_ZERO for c in range(n)] for r in range(n)
        ]
        rows[i][j] = p
        return cls(rows)

    # -- basic structure ----------------------------------------------------

    def entry(self, i: int, j: int) -> LaurentElement:
        return self.rows[i][j]

    def all_exact(self) -> bool:
        return all(e.prec is None for r in self.rows for e in r)

    def _check_dim(self, other: "MatK"):
        if self.n != other.n:
            raise DimensionMismatch(f"sizes {self.n} and {other.n} differ")

    def __add__(self, other: "MatK") -> "MatK":
        self._check_dim(other)
        return MatK(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __sub__(self, other: "MatK") -> "MatK":
        self._check_dim(other)
        return MatK(
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def __neg__(self) -> "MatK":
        return MatK([[-e for e in r] for r in self.rows])

    def __mul__(self, other: "MatK") -> "MatK":
        if not isinstance(other, MatK):
            return NotImplemented
        self._check_dim(other)
        n = self.n
        cols = list(zip(*other.rows))
        out: List[List[LaurentElement]] = []
        for i in range(n):
            row = self.rows[i]
            out_row = []
            for j in range(n):
                acc = _L_ZERO
                col = cols[j]
                for k in range(n):
                    a = row[k]
                    b = col[k]
                    if a.coeffs or a.prec is not None:
                        if b.coeffs or b.prec is not None:
                            acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return MatK(out)

    def __pow__(self, k: int) -> "MatK":
        if k < 0:
            raise ValueError("negative matrix power: use inv() explicitly")
        result = MatK.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MatK":
        """Multiply every entry by a scalar or Laurent element."""
        if isinstance(c, LaurentElement):
            return MatK([[e * c for e in r] for r in self.rows])
        return MatK([[e.scale(c) for e in r] for r in self.rows])

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.n:
            raise DimensionMismatch("vector length mismatch")
        out = []
        for i in range(self.n):
            acc = _L_ZERO
            for k in range(self.n):
                a = self.rows[i][k]
                if (a.coeffs or a.prec is not None) and (v[k].coeffs or v[k].prec is not None):
                    acc = acc + a * v[k]
            out.append(acc)
        return tuple(out)

    def trace(self) -> LaurentElement:
        acc = _L_ZERO
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def d_dt(self) -> "MatK":
        return MatK([[e.d_dt() for e in r] for r in self.rows])

    def scale_t(self, z) -> "MatK":
        return MatK([[e.scale_t(z) for e in r] for r in self.rows])

    def is_zero_3v(self) -> Optional[bool]:
        undetermined = False
        for r in self.rows:
            for e in r:
                v = e.is_zero_3v()
                if v is False:
                    return False
                if v is None:
                    undetermined = True
        return None if undetermined else True

    def equals(self, other: "MatK") -> Optional[bool]:
        return (self - other).is_zero_3v()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatK):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        body = "; ".join(
            ", ".join(format_laurent(e) for e in row) for row in self.rows
        )
        return f"MatK[{body}]"

    # -- elimination-based operations ----------------------------------------

    def det(self, working_prec: int = DEFAULT_WORKING_PREC) -> LaurentElement:
        if self.all_exact():
            return _det_bareiss([list(r) for r in self.rows])
        return _det_division([list(r) for r in self.rows], working_prec)

    def inv(self, working_prec: int = DEFAULT_WORKING_PREC) -> "MatK":
        if self.all_exact():
            d = _det_bareiss([list(r) for r in self.rows])
            if d.is_zero_3v() is True:
                raise Singular("matrix is exactly singular")
            adj = _adjugate(self)
            return adj.scale(d.inv(working_prec))
        return _inv_division(self, working_prec)

    def rank(self) -> int:
        """Rank over K; raises when a pivot decision is undetermined."""
        ech = _echelon([list(r) for r in self.rows], self.n)
        return len(ech)

    def kernel_basis(self, working_prec: int = DEFAULT_WORKING_PREC) -> List[Vector]:
        """Basis of the right kernel, one vector per free column.

        For exact matrices the vectors are exact: the echelon step is
        fraction-free and back-substitution scales the free coordinate by the
        product of the pivots, which makes every intermediate division exact.
        """
        n = self.n
        ech = _echelon([list(r) for r in self.rows], n)
        pivot_cols = [c for c, _ in ech]
        free_cols = [c for c in range(n) if c not in pivot_cols]
        exact = all(e.prec is None for _, row in ech for e in row)
        basis: List[Vector] = []
        pivot_prod = _L_ONE
        if exact:
            for c, row in ech:
                pivot_prod = pivot_prod * row[c]
        for f in free_cols:
            v: List[LaurentElement] = [_L_ZERO] * n
            v[f] = pivot_prod if exact else _L_ONE
            for c, row in reversed(ech):
                acc = _L_ZERO
                for j in range(c + 1, n):
                    rj = row[j]
                    vj = v[j]
                    if (rj.coeffs or rj.prec is not None) and (vj.coeffs or vj.prec is not None):
                        acc = acc + rj * vj
                if exact:
                    v[c] = (-acc).exact_div(row[c])
                else:
                    v[c] = (-acc) * row[c].inv(working_prec)
            basis.append(normalize_vector(tuple(v)))
        return basis


# ---------------------------------------------------------------------------
# Elimination helpers
# ---------------------------------------------------------------------------


def _pick_pivot(
    entries: List[Tuple[int, LaurentElement]]
) -> Optional[int]:
    """Index of the least-valuation definitely-nonzero entry.

    None when all entries are exactly zero; PrecisionExhausted when the only
    possibly-nonzero entries are undetermined.
    """
    best = None
    best_ord = None
    undetermined = False
    for idx, e in entries:
        z = e.is_zero_3v()
        if z is True:
            continue
        if z is None:
            undetermined = True
            continue
        o = e.order()
        if best_ord is None or o < best_ord:
            best, best_ord = idx, o
    if best is not None:
        return best
    if undetermined:
        raise PrecisionExhausted("pivot choice undetermined at current precision")
    return None


def normalize_vector(v: Vector) -> Vector:
    """Divide an exact vector by its scalar-times-monomial content."""
    if any(e.prec is not None for e in v):
        return v
    num_gcd = 0
    den_lcm = 1
    min_exp = None
    for el in v:
        for exp, c in el.coeffs.items():
            num_gcd = math.gcd(num_gcd, c.a, c.b)
            den_lcm = den_lcm * c.d // math.gcd(den_lcm, c.d)
            if min_exp is None or exp < min_exp:
                min_exp = exp
    if min_exp is None or num_gcd == 0:
        return v
    scalar = GaussianRational(Fraction(den_lcm, num_gcd))
    return tuple(el.shift(-min_exp).scale(scalar) for el in v)


def _echelon(
    rows: List[List[LaurentElement]], width: int
) -> List[Tuple[int, List[LaurentElement]]]:
    """Fraction-free row echelon; returns (pivot_col, row) in column order."""
    active = [normalize_vector(tuple(r)) for r in rows]
    active = [list(r) for r in active]
    result: List[Tuple[int, List[LaurentElement]]] = []
    for col in range(width):
        idx = _pick_pivot([(i, r[col]) for i, r in enumerate(active)])
        if idx is None:
            continue
        pivot_row = active.pop(idx)
        p = pivot_row[col]
        nxt = []
        for r in active:
            rc = r[col]
            if rc.is_zero_3v() is True:
                nxt.append(r)
                continue
            new_r = [
                p * r[j] - rc * pivot_row[j] if j > col else _L_ZERO
                for j in range(width)
            ]
            nxt.append(list(normalize_vector(tuple(new_r))))
        active = nxt
        result.append((col, pivot_row))
    return result


def _det_bareiss(m: List[List[LaurentElement]]) -> LaurentElement:
    """Fraction-free determinant; exact for exact input."""
    n = len(m)
    if n == 0:
        return _L_ONE
    sign = 1
    prev = _L_ONE
    for k in range(n - 1):
        idx = _pick_pivot([(i, m[i][k]) for i in range(k, n)])
        if idx is None:
            return _L_ZERO
        if idx != k:
            m[k], m[idx] = m[idx], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = p * m[i][j] - mik * m[k][j]
                m[i][j] = num if prev.is_one() else num.exact_div(prev)
            m[i][k] = _L_ZERO
        prev = p
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def _det_division(
    m: List[List[LaurentElement]], working_prec: int
) -> LaurentElement:
    n = len(m)
    sign = 1
    acc = _L_ONE
    for k in range(n):
        idx = _pick_pivot([(i, m[i][k]) for i in range(k, n)])
        if idx is None:
            return _L_ZERO
        if idx != k:
            m[k], m[idx] = m[idx], m[k]
            sign = -sign
        p = m[k][k]
        acc = acc * p
        pinv = p.inv(working_prec)
        for i in range(k + 1, n):
            mik = m[i][k]
            if mik.is_zero_3v() is True:
                continue
            factor = mik * pinv
            for j in range(k + 1, n):
                m[i][j] = m[i][j] - factor * m[k][j]
            m[i][k] = _L_ZERO
    return acc if sign == 1 else -acc


def _minor(mat: MatK, drop_i: int, drop_j: int) -> List[List[LaurentElement]]:
    return [
        [mat.rows[i][j] for j in range(mat.n) if j != drop_j]
        for i in range(mat.n)
        if i != drop_i
    ]


def _adjugate(mat: MatK) -> MatK:
    """Adjugate via cofactor determinants (exact input)."""
    n = mat.n
    if n == 1:
        return MatK([[_L_ONE]])
    out = [[_L_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = _det_bareiss(_minor(mat, i, j))
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return MatK(out)


def _inv_division(mat: MatK, working_prec: int) -> MatK:
    n = mat.n
    left = [list(r) for r in mat.rows]
    right = [
        [_L_ONE if i == j else _L_ZERO for j in range(n)] for i in range(n)
    ]
    for k in range(n):
        idx = _pick_pivot([(i, left[i][k]) for i in range(k, n)])
        if idx is None:
            raise Singular("matrix is exactly singular")
        if idx != k:
            left[k], left[idx] = left[idx], left[k]
            right[k], right[idx] = right[idx], right[k]
        pinv = left[k][k].inv(working_prec)
        left[k] = [e * pinv for e in left[k]]
        left[k][k] = _L_ONE
        right[k] = [e * pinv for e in right[k]]
        for i in range(n):
            if i == k:
                continue
            f = left[i][k]
            if f.is_zero_3v() is True:
                continue
            left[i] = [left[i][j] - f * left[k][j] for j in range(n)]
            left[i][k] = _L_ZERO
            right[i] = [right[i][j] - f * right[k][j] for j in range(n)]
    return MatK(right)


# ---------------------------------------------------------------------------
# Dual-number determinant: det(P + s*M) mod s^2 = det(P) + s*tr(adj(P) M).
# One fraction-free elimination produces both the determinant of P and the
# directional term, which is what the orbit-level computation needs.
# ---------------------------------------------------------------------------


def det_and_adj_trace(
    p_mat: MatK, m_mat: MatK
) -> Tuple[LaurentElement, LaurentElement]:
    p_mat._check_dim(m_mat)
    if not (p_mat.all_exact() and m_mat.all_exact()):
        raise PrecisionExhausted("dual-number determinant needs exact matrices")
    n = p_mat.n
    m = [
        [(p_mat.rows[i][j], m_mat.rows[i][j]) for j in range(n)]
        for i in range(n)
    ]
    zero_pair = (_L_ZERO, _L_ZERO)

    def mul(x, y):
        return (x[0] * y[0], x[0] * y[1] + x[1] * y[0])

    def sub(x, y):
        return (x[0] - y[0], x[1] - y[1])

    def div(x, y):
        q = x[0].exact_div(y[0])
        r = (x[1] - q * y[1]).exact_div(y[0])
        return (q, r)

    sign = 1
    prev = (_L_ONE, _L_ZERO)
    for k in range(n - 1):
        idx = _pick_pivot([(i, m[i][k][0]) for i in range(k, n)])
        if idx is None:
            raise Singular("matrix is exactly singular")
        if idx != k:
            m[k], m[idx] = m[idx], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = sub(mul(p, m[i][j]), mul(mik, m[k][j]))
                m[i][j] = num if prev[0].is_one() and not prev[1].coeffs else div(num, prev)
            m[i][k] = zero_pair
        prev = p
    det, adj_tr = m[n - 1][n - 1]
    if sign == -1:
        det, adj_tr = -det, -adj_tr
    return det, adj_tr
