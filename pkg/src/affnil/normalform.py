"""Jordan and quasi-Jordan theory over K for nilpotent matrices.

The central reduction: given nilpotent x over K, build a Jordan basis by the
kernel-filtration chain algorithm, giving P with P^-1 x P = J (all
superdiagonal ones, block sizes non-increasing).  The transition matrix T =
P^-1 generally has det T of nonzero valuation; writing l = ord(det T) mod n,
conjugating further by S = diag(t^-l, 1, ..., 1) turns J into the quasi-Jordan
matrix S J S^-1 whose first superdiagonal entry is t^-l, and ord(det(S T))
becomes a multiple of n.  The n-th root that would rescale S*T into SL_n is
never taken: the determinant certificate is carried instead, which loses
nothing because scalar matrices act trivially by conjugation and contribute
nothing to the level of trace-zero elements.

Everything here is exact when the input matrix is exact: the chain algorithm
uses only fraction-free elimination and exact divisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .affine import DetMode, GroupElement
from .errors import (
    InvalidPartition,
    InvalidShift,
    NotNilpotent,
    PrecisionExhausted,
)
from .gaussian import GR_ONE, GaussianRational
from .laurent import DEFAULT_WORKING_PREC, LaurentElement
from .matk import MatK, Vector, normalize_vector

_L_ZERO = LaurentElement.zero()
_L_ONE = LaurentElement.one()


@dataclass(frozen=True)
class QuasiJordanForm:
    """Block-diagonal matrix of quasi-Jordan blocks, sizes non-increasing.

    Each block is (size, superdiagonal entries); every superdiagonal entry is
    nonzero, and stores the only data of the block.
    """

    blocks: Tuple[Tuple[int, Tuple[LaurentElement, ...]], ...]

    def __post_init__(self):
        sizes = [s for s, _ in self.blocks]
        if not sizes or any(s <= 0 for s in sizes):
            raise InvalidPartition("block sizes must be positive")
        if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
            raise InvalidPartition("block sizes must be non-increasing")
        for size, diag in self.blocks:
            if len(diag) != size - 1:
                raise InvalidPartition("superdiagonal length must be size - 1")
            if any(p.is_zero_3v() is True for p in diag):
                raise InvalidPartition("superdiagonal entries must be nonzero")

    @property
    def n(self) -> int:
        return sum(s for s, _ in self.blocks)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(s for s, _ in self.blocks)

    def matrix(self) -> MatK:
        n = self.n
        rows = [[_L_ZERO] * n for _ in range(n)]
        offset = 0
        for size, diag in self.blocks:
            for i, p in enumerate(diag):
                rows[offset + i][offset + i + 1] = p
            offset += size
        return MatK(rows)


@dataclass(frozen=True)
class OrbitLabel:
    """(partition, k, level): the complete invariant of a nilpotent orbit."""

    partition: Tuple[int, ...]
    k: int
    level: GaussianRational

    def __post_init__(self):
        parts = self.partition
        if not parts or any(p <= 0 for p in parts):
            raise InvalidPartition("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartition("partition must be non-increasing")
        if not 0 <= self.k < parts[-1]:
            raise InvalidShift(f"k = {self.k} outside [0, {parts[-1]})")


def block_multiplicity(block: Tuple[int, Tuple[LaurentElement, ...]]) -> LaurentElement:
    """p_1^(size-1) p_2^(size-2) ... p_(size-1); empty product for size 1."""
    size, diag = block
    acc = _L_ONE
    for i, p in enumerate(diag):
        acc = acc * p ** (size - 1 - i)
    return acc


def mult_order(form: QuasiJordanForm) -> int:
    """Valuation of the product of all block multiplicities."""
    acc = _L_ONE
    for block in form.blocks:
        acc = acc * block_multiplicity(block)
    return acc.order()


def canonical_rep(sigma: Tuple[int, ...], k: int) -> MatK:
    """The representative with all superdiagonal ones except t^k closing the
    smallest block."""
    parts = tuple(sigma)
    if not parts or any(p <= 0 for p in parts) or any(
        parts[i] < parts[i + 1] for i in range(len(parts) - 1)
    ):
        raise InvalidPartition(f"{sigma!r} is not a non-increasing partition")
    if not 0 <= k < parts[-1]:
        raise InvalidShift(f"k = {k} outside [0, {parts[-1]})")
    n = sum(parts)
    rows = [[_L_ZERO] * n for _ in range(n)]
    offset = 0
    for b, size in enumerate(parts):
        last_block = b == len(parts) - 1
        for i in range(size - 1):
            if last_block and i == size - 2:
                rows[offset + i][offset + i + 1] = LaurentElement.monomial(k)
            else:
                rows[offset + i][offset + i + 1] = _L_ONE
        offset += size
    return MatK(rows)


def read_quasi_jordan(x: MatK) -> Optional[QuasiJordanForm]:
    """Interpret x as a quasi-Jordan matrix if it definitely is one.

    Returns None when x has an entry off the superdiagonal that is not known
    to vanish, an undetermined superdiagonal entry, or block sizes that
    increase (the general reduction handles those).
    """
    n = x.n
    for i in range(n):
        for j in range(n):
            if j == i + 1:
                continue
            if x.rows[i][j].is_zero_3v() is not True:
                return None
    sizes: List[int] = []
    diags: List[List[LaurentElement]] = []
    current = 1
    current_diag: List[LaurentElement] = []
    for i in range(n - 1):
        e = x.rows[i][i + 1]
        z = e.is_zero_3v()
        if z is None:
            return None
        if z is False:
            current += 1
            current_diag.append(e)
        else:
            sizes.append(current)
            diags.append(current_diag)
            current = 1
            current_diag = []
    sizes.append(current)
    diags.append(current_diag)
    if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
        return None
    return QuasiJordanForm(tuple((s, tuple(d)) for s, d in zip(sizes, diags)))


# ---------------------------------------------------------------------------
# Jordan chains
# ---------------------------------------------------------------------------


def nilpotent_powers(x: MatK) -> List[MatK]:
    """[x^0, x^1, ..., x^m] with x^m = 0; raises NotNilpotent otherwise."""
    powers = [MatK.identity(x.n), x]
    while True:
        z = powers[-1].is_zero_3v()
        if z is True:
            return powers
        if z is None:
            raise PrecisionExhausted("nilpotency undetermined at current precision")
        if len(powers) > x.n:
            raise NotNilpotent(f"{x.n}-th power does not vanish")
        powers.append(powers[-1] * x)


class _Echelon:
    """Incremental independence test over K (leftmost-pivot echelon)."""

    def __init__(self, width: int):
        self.width = width
        self.rows: List[Tuple[int, Vector]] = []

    def add(self, v: Vector) -> bool:
        """Reduce v; if independent of the stored rows, insert and return True."""
        vec = list(v)
        for col, row in self.rows:
            e = vec[col]
            z = e.is_zero_3v()
            if z is True:
                continue
            if z is None:
                raise PrecisionExhausted("independence test undetermined")
            p = row[col]
            vec = [p * vec[j] - e * row[j] for j in range(self.width)]
            vec[col] = _L_ZERO
        pivot = None
        for j in range(self.width):
            z = vec[j].is_zero_3v()
            if z is False:
                pivot = j
                break
            if z is None:
                raise PrecisionExhausted("independence test undetermined")
        if pivot is None:
            return False
        reduced = normalize_vector(tuple(vec))
        self.rows.append((pivot, reduced))
        self.rows.sort(key=lambda item: item[0])
        return True


class ChainData(NamedTuple):
    p_mat: MatK
    sigma: Tuple[int, ...]
    j_mat: MatK


def _vector_content(v: Vector) -> Optional[Tuple[GaussianRational, int]]:
    """Scalar-and-exponent content of an exact vector (None for zero)."""
    num_gcd = 0
    den_lcm = 1
    min_exp = None
    for el in v:
        if el.prec is not None:
            return None
        for exp, c in el.coeffs.items():
            num_gcd = math.gcd(num_gcd, c.a, c.b)
            den_lcm = den_lcm * c.d // math.gcd(den_lcm, c.d)
            if min_exp is None or exp < min_exp:
                min_exp = exp
    if min_exp is None:
        return None
    return GaussianRational(Fraction(num_gcd, den_lcm)), min_exp


def jordan_chains(x: MatK, working_prec: int = DEFAULT_WORKING_PREC) -> ChainData:
    """Jordan basis of a nilpotent x: P with x P = P J, sizes non-increasing.

    Chain tops at height j are kernel vectors of x^j independent of
    ker(x^(j-1)) together with the once-applied images of all taller chains.
    Each finished chain is scaled by the content of its kernel-end vector,
    which keeps P close to unimodular on simple inputs.
    """
    return _chains_from_powers(x, nilpotent_powers(x), working_prec)


def _chains_from_powers(
    x: MatK, powers: List[MatK], working_prec: int
) -> ChainData:
    n = x.n
    m = len(powers) - 1
    kernels = [powers[j].kernel_basis(working_prec) for j in range(1, m + 1)]
    chains: List[dict] = []
    for j in range(m, 0, -1):
        ech = _Echelon(n)
        if j >= 2:
            for v in kernels[j - 2]:
                ech.add(v)
        for ch in chains:
            ech.add(ch["cur"])
        for v in kernels[j - 1]:
            if ech.add(v):
                chains.append({"top": v, "level": j, "cur": v})
        for ch in chains:
            ch["cur"] = x.apply(ch["cur"])
    sigma = tuple(ch["level"] for ch in chains)
    if sum(sigma) != n:
        raise PrecisionExhausted("chain construction did not span the space")
    columns: List[Vector] = []
    for ch in chains:
        size = ch["level"]
        seq = [ch["top"]]
        for _ in range(size - 1):
            seq.append(x.apply(seq[-1]))
        seq.reverse()  # kernel end first
        content = _vector_content(seq[0])
        if content is not None:
            scalar, exp = content
            inv = scalar.inverse()
            seq = [tuple(e.shift(-exp).scale(inv) for e in vec) for vec in seq]
        columns.extend(seq)
    p_mat = MatK([[columns[j][i] for j in range(n)] for i in range(n)])
    j_mat = _jordan_matrix(sigma)
    # exact inputs verify exactly; truncated ones must at least be consistent
    if (x * p_mat - p_mat * j_mat).is_zero_3v() is False:
        raise AssertionError("chain construction produced an invalid basis")
    return ChainData(p_mat, sigma, j_mat)


def _jordan_matrix(sigma: Tuple[int, ...]) -> MatK:
    n = sum(sigma)
    rows = [[_L_ZERO] * n for _ in range(n)]
    offset = 0
    for size in sigma:
        for i in range(size - 1):
            rows[offset + i][offset + i + 1] = _L_ONE
        offset += size
    return MatK(rows)


def rank_profile_partition(x: MatK) -> Tuple[int, ...]:
    """Jordan block sizes from the ranks of powers (conjugate partition)."""
    n = x.n
    powers = nilpotent_powers(x)
    ranks = [p.rank() for p in powers]
    m = len(powers) - 1
    blocks_ge = [ranks[j - 1] - ranks[j] for j in range(1, m + 1)]
    parts: List[int] = []
    for size in range(m, 0, -1):
        count = blocks_ge[size - 1] - (blocks_ge[size] if size < m else 0)
        parts.extend([size] * count)
    if sum(parts) != n:
        raise AssertionError("rank profile inconsistent")
    return tuple(parts)


class ReductionData(NamedTuple):
    """Everything the classifier needs from the quasi-Jordan reduction."""

    form: QuasiJordanForm
    shift: int  # l, the t-power in the first superdiagonal slot
    p_mat: Optional[MatK]  # None when the input was already quasi-Jordan
    det_p: Optional[LaurentElement]


def reduce_to_quasi_jordan(
    x: MatK, working_prec: int = DEFAULT_WORKING_PREC
) -> ReductionData:
    powers = nilpotent_powers(x)  # raises NotNilpotent / PrecisionExhausted early
    direct = read_quasi_jordan(x)
    if direct is not None:
        return ReductionData(direct, 0, None, None)
    n = x.n
    chains = _chains_from_powers(x, powers, working_prec)
    det_p = chains.p_mat.det(working_prec)
    l = (-det_p.order()) % n
    blocks = []
    for idx, size in enumerate(chains.sigma):
        if size == 1:
            blocks.append((1, ()))
            continue
        diag = [_L_ONE] * (size - 1)
        if idx == 0 and l > 0:
            diag[0] = LaurentElement.monomial(-l)
        blocks.append((size, tuple(diag)))
    form = QuasiJordanForm(tuple(blocks))
    return ReductionData(form, l, chains.p_mat, det_p)


def jordan_transform(
    x: MatK, working_prec: int = DEFAULT_WORKING_PREC
) -> Tuple[MatK, Tuple[int, ...]]:
    """T with T x T^-1 = J_sigma; any valid Jordan basis is acceptable."""
    chains = jordan_chains(x, working_prec)
    return chains.p_mat.inv(working_prec), chains.sigma


def quasi_jordanize(
    x: MatK, working_prec: int = DEFAULT_WORKING_PREC
) -> Tuple[GroupElement, QuasiJordanForm]:
    """Conjugator h and quasi-Jordan form D with h.g x h.g^-1 = matrix of D.

    h.g = S T with T the Jordan transition matrix and S = diag(t^-l, 1, ...);
    ord(det h.g) is a multiple of n by construction.  det_mode records whether
    the determinant is exactly 1 or only n-th-power certified.
    """
    data = reduce_to_quasi_jordan(x, working_prec)
    n = x.n
    if data.p_mat is None:
        return GroupElement.identity(n), data.form
    t_mat = data.p_mat.inv(working_prec)
    s_entries = [LaurentElement.monomial(-data.shift)] + [_L_ONE] * (n - 1)
    g = MatK.diag(s_entries) * t_mat
    exact_one = data.det_p == LaurentElement.monomial(-data.shift)
    mode = DetMode.EXACT_ONE if exact_one else DetMode.NTH_POWER_CERTIFIED
    return GroupElement(GR_ONE, g, mode), data.form
