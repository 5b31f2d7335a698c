"""Quadratic and almost symmetric forms over Z[Z^k].

Conventions
-----------
A vector x in Lambda^r is a column of coefficients.  The pairing defined by a
matrix M is ``<x, y>_M = sum_ij bar(x_i) M_ij y_j``: linear in the second
slot, conjugate-linear in the first.  With this choice

    lambda(x, y) = <x, y>_{psi + (-1)^n psi^*},    mu(x) = [<x, x>_psi]

satisfy the three quadratic-function axioms on the nose, which the test suite
checks on random vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .matrix import (
    DimensionMismatch,
    NotInvertible,
    RingMatrix,
    bareiss_det,
    inverse,
    kronecker,
    mat_mul,
)
from .ring import ContextMismatch, LaurentPoly

PSI0 = (
    (1, 0, 0, 1, 0, 0, 0, 0),
    (0, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 1),
)

E8 = (
    (2, 0, 0, 1, 0, 0, 0, 0),
    (0, 2, 1, 0, 0, 0, 0, 0),
    (0, 1, 2, 1, 0, 0, 0, 0),
    (1, 0, 1, 2, 1, 0, 0, 0),
    (0, 0, 0, 1, 2, 1, 0, 0),
    (0, 0, 0, 0, 1, 2, 1, 0),
    (0, 0, 0, 0, 0, 1, 2, 1),
    (0, 0, 0, 0, 0, 0, 1, 2),
)

DEFAULT_MAX_N = 4


class NotAlmostSymmetric(ArithmeticError):
    pass


class ResourceGuard(ValueError):
    pass


def _sign(parity: int) -> int:
    return -1 if parity % 2 else 1


@dataclass(frozen=True)
class QuadraticForm:
    psi: RingMatrix
    parity: int

    def __post_init__(self):
        if not self.psi.is_square():
            raise DimensionMismatch("a quadratic form needs a square matrix")
        object.__setattr__(self, "parity", self.parity % 2)

    @property
    def dim(self) -> int:
        return self.psi.rows

    @property
    def k(self) -> int:
        return self.psi.k

    def symmetrize(self) -> RingMatrix:
        return symmetrize(self)


@dataclass(frozen=True)
class AlmostSymmetricForm:
    """An invertible matrix alpha whose defect 1 + (-1)^{n+1} alpha^{-1} alpha^* is nilpotent.

    Unimodularity is checked at construction; nilpotency only when asked.
    """

    alpha: RingMatrix
    parity: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.alpha.is_square():
            raise DimensionMismatch("an almost symmetric form needs a square matrix")
        object.__setattr__(self, "parity", self.parity % 2)
        d = bareiss_det(self.alpha)
        if not d.is_unit():
            raise NotInvertible(f"alpha is not invertible over Lambda: det = {d}")
        self._cache["det"] = d

    @property
    def dim(self) -> int:
        return self.alpha.rows

    @property
    def k(self) -> int:
        return self.alpha.k

    @property
    def det(self) -> LaurentPoly:
        return self._cache["det"]

    def inverse(self) -> RingMatrix:
        if "inv" not in self._cache:
            self._cache["inv"] = inverse(self.alpha)
        return self._cache["inv"]

    def beta(self) -> RingMatrix:
        """The endomorphism 1 + (-1)^{n+1} alpha^{-1} alpha^*."""
        if "beta" not in self._cache:
            x = mat_mul(self.inverse(), self.alpha.conj_transpose())
            if self.parity == 0:
                x = -x
            self._cache["beta"] = RingMatrix.identity(self.dim, self.k) + x
        return self._cache["beta"]


@dataclass(frozen=True)
class QClassElement:
    """A class in Q_{(-1)^n}(Lambda), held as its canonical representative."""

    rep: LaurentPoly
    parity: int

    def __add__(self, other: "QClassElement") -> "QClassElement":
        self._check(other)
        return q_reduce(self.rep + other.rep, self.parity)

    def __sub__(self, other: "QClassElement") -> "QClassElement":
        self._check(other)
        return q_reduce(self.rep - other.rep, self.parity)

    def __neg__(self) -> "QClassElement":
        return q_reduce(-self.rep, self.parity)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def symmetrized(self) -> LaurentPoly:
        """mu + (-1)^n bar(mu): well defined on the class, lands in Lambda."""
        return self.rep + self.rep.involute().scale(_sign(self.parity))

    def _check(self, other: "QClassElement") -> None:
        if self.parity != other.parity:
            raise ValueError("Q-classes of different parity")

    def __str__(self) -> str:
        return f"[{self.rep}]"


# -- constructors -----------------------------------------------------------


def make_psi0() -> QuadraticForm:
    return QuadraticForm(RingMatrix.from_ints(PSI0), 0)


def make_E8() -> RingMatrix:
    return RingMatrix.from_ints(E8)


def alpha_matrix(k: int, a: int, b: int) -> RingMatrix:
    """The 2x2 matrix ((1-z_a, z_a z_b - z_a - z_b), (1, 1-z_b)) in a k-variable ring."""
    za, zb = LaurentPoly.var(a, k), LaurentPoly.var(b, k)
    return RingMatrix(k, [[1 - za, za * zb - za - zb], [1, 1 - zb]])


def make_alpha(i: int, n: int) -> AlmostSymmetricForm:
    """The T^2 factor on variables z_{2i-1}, z_{2i} of Z[Z^{2n}], parity 1."""
    if n < 1 or not 1 <= i <= n:
        raise IndexError(f"factor index {i} out of range for n={n}")
    return AlmostSymmetricForm(alpha_matrix(2 * n, 2 * i - 1, 2 * i), 1)


def make_psi_n(n: int, max_n: int = DEFAULT_MAX_N) -> QuadraticForm:
    """psi_0 (x) alpha_1 (x) ... (x) alpha_n over Z[Z^{2n}], rank 2^{n+3}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise ResourceGuard(f"n={n} exceeds the configured limit {max_n}")
    f = make_psi0()
    if n == 0:
        return f
    f = QuadraticForm(f.psi.embed(2 * n), 0)
    for i in range(1, n + 1):
        f = quad_almost_product(f, make_alpha(i, n))
    return f


# -- operations -------------------------------------------------------------


def symmetrize(f: QuadraticForm) -> RingMatrix:
    """psi + (-1)^n psi^*."""
    star = f.psi.conj_transpose()
    return f.psi - star if f.parity else f.psi + star


def forms_equivalent(psi: RingMatrix, psi2: RingMatrix, parity: int, chi: RingMatrix) -> bool:
    """Check that chi witnesses psi2 - psi = chi + (-1)^{n+1} chi^*."""
    if psi.shape != psi2.shape or psi.shape != chi.shape or not psi.is_square():
        raise DimensionMismatch("equivalence needs three square matrices of equal size")
    star = chi.conj_transpose()
    rhs = chi + star if parity % 2 else chi - star
    return psi2 - psi == rhs


def is_q_representative(e: Sequence[int]) -> bool:
    """For the pair {e, -e}, e != 0, the representative has first nonzero coordinate positive."""
    for x in e:
        if x:
            return x > 0
    return False


def q_reduce(a: LaurentPoly, parity: int) -> QClassElement:
    """Canonical form in Lambda / {b + (-1)^{n+1} bar(b)}.

    Uses z^{-g} = (-1)^n z^g; for odd n the constant term is taken mod 2.
    """
    parity %= 2
    sgn = _sign(parity)
    out: dict[tuple[int, ...], int] = {}
    zero = (0,) * a.k
    for e, c in a.items():
        if e != zero and not is_q_representative(e):
            e, c = tuple(-x for x in e), sgn * c
        out[e] = out.get(e, 0) + c
    if parity and zero in out:
        out[zero] %= 2
    return QClassElement(LaurentPoly(a.k, out), parity)


def pairing(m: RingMatrix, x: Sequence[LaurentPoly], y: Sequence[LaurentPoly]) -> LaurentPoly:
    """sum_ij bar(x_i) m_ij y_j."""
    if len(x) != m.rows or len(y) != m.cols:
        raise DimensionMismatch("vector length does not match the form")
    total = LaurentPoly.zero(m.k)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = m.row(i)
        s = LaurentPoly.zero(m.k)
        for j, yj in enumerate(y):
            if row[j] and yj:
                s = s + row[j] * yj
        if s:
            total = total + xi.involute() * s
    return total


def lambda_of(f: QuadraticForm, x: Sequence[LaurentPoly], y: Sequence[LaurentPoly]) -> LaurentPoly:
    return pairing(symmetrize(f), x, y)


def mu_of(f: QuadraticForm, x: Sequence[LaurentPoly]) -> QClassElement:
    if len(x) != f.dim:
        raise DimensionMismatch(f"vector of length {len(x)} for a rank-{f.dim} form")
    return q_reduce(pairing(f.psi, x, x), f.parity)


def nilpotency_check(a: AlmostSymmetricForm) -> int:
    """Smallest N <= dim + 1 with beta^N = 0."""
    beta = a.beta()
    power = beta
    for n in range(1, a.dim + 2):
        if power.is_zero():
            return n
        power = mat_mul(power, beta)
    raise NotAlmostSymmetric(f"beta is not nilpotent of degree <= {a.dim + 1}")


def _common_ring(a: RingMatrix, b: RingMatrix) -> tuple[RingMatrix, RingMatrix]:
    # integer matrices (k = 0) lift into any ring; otherwise rings must agree
    if a.k == b.k:
        return a, b
    if a.k == 0:
        return a.embed(b.k), b
    if b.k == 0:
        return a, b.embed(a.k)
    raise ContextMismatch(f"embed factors into a common ring first (k={a.k} vs k={b.k})")


def almost_product(a: AlmostSymmetricForm, b: AlmostSymmetricForm) -> AlmostSymmetricForm:
    x, y = _common_ring(a.alpha, b.alpha)
    out = AlmostSymmetricForm(kronecker(x, y), a.parity + b.parity)
    nilpotency_check(out)
    return out


def quad_almost_product(f: QuadraticForm, a: AlmostSymmetricForm) -> QuadraticForm:
    """psi (x) alpha with parity m + n."""
    x, y = _common_ring(f.psi, a.alpha)
    return QuadraticForm(kronecker(x, y), f.parity + a.parity)


@dataclass
class SublagrangianReport:
    columns_match: bool
    restricted_form_matches: bool
    isotropic: bool
    split: bool
    details: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.columns_match and self.restricted_form_matches and self.isotropic and self.split


def witness_sublagrangian_check(
    a: AlmostSymmetricForm | RingMatrix,
    i: RingMatrix | None,
    j: RingMatrix,
    u: RingMatrix | None,
    expected: RingMatrix,
    i_cols: Sequence[int] | None = None,
) -> SublagrangianReport:
    """Verify supplied witnesses that im(i) is a sublagrangian with quotient ``expected``.

    ``i_cols`` names the columns of ``j`` that make up ``i``; by default the
    trailing ``i.cols`` columns.  ``i = u = None`` is the empty sublagrangian.
    """
    alpha = a.alpha if isinstance(a, AlmostSymmetricForm) else a
    d = alpha.rows
    if i is None or u is None:
        if i is not None or u is not None:
            raise DimensionMismatch("i and u must both be given or both be None")
        if j.rows != d or expected.shape != (j.cols, j.cols):
            raise DimensionMismatch("witness dimensions are incompatible with the form")
        ok = mat_mul(mat_mul(j.conj_transpose(), alpha), j) == expected
        return SublagrangianReport(True, ok, True, True,
                                   [] if ok else ["j* alpha j differs from expected"])
    s = i.cols
    if i.rows != d or j.rows != d or u.shape != (d, s) or expected.shape != (j.cols, j.cols):
        raise DimensionMismatch("witness dimensions are incompatible with the form")
    if i_cols is None:
        i_cols = list(range(j.cols - s, j.cols))
    i_cols = list(i_cols)
    if len(i_cols) != s:
        raise DimensionMismatch("designated block size differs from i")
    details = []

    columns_match = j.submatrix(range(d), i_cols) == i
    if not columns_match:
        details.append("designated columns of j differ from i")

    restricted = mat_mul(mat_mul(j.conj_transpose(), alpha), j)
    restricted_ok = restricted == expected
    if not restricted_ok:
        bad = [(r, c) for r in range(restricted.rows) for c in range(restricted.cols)
               if restricted[r, c] != expected[r, c]]
        details.append(f"j* alpha j differs from expected at {bad}")

    others = range(j.cols)
    isotropic = all(expected[r, c].is_zero() for r in i_cols for c in others) and all(
        expected[r, c].is_zero() for r in others for c in i_cols)
    if not isotropic:
        details.append("expected form does not vanish on the i-block")

    split = mat_mul(mat_mul(i.conj_transpose(), alpha), u) == RingMatrix.identity(s, alpha.k)
    if not split:
        details.append("(i* alpha) u is not the identity")

    return SublagrangianReport(columns_match, restricted_ok, isotropic, split, details)


def signature(m: RingMatrix | Sequence[Sequence[int]]) -> int:
    """Sylvester signature of a symmetric integer matrix by rational congruence."""
    if isinstance(m, RingMatrix):
        if m.k != 0:
            raise ContextMismatch("signature needs a matrix over Z (k = 0); augment first")
        rows = [[x.augment() for x in r] for r in m.to_rows()]
    else:
        rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("signature of a non-square matrix")
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
        raise ValueError("signature of a non-symmetric matrix")
    a = [[Fraction(x) for x in r] for r in rows]
    live = list(range(n))
    pos = neg = 0
    while live:
        p = next((i for i in live if a[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in live for j in live if a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 a_ij nonzero
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            p = i
        piv = a[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        live.remove(p)
        for r in live:
            if a[r][p]:
                f = a[r][p] / piv
                for c in live:
                    a[r][c] -= f * a[p][c]
        for r in live:
            a[r][p] = a[p][r] = Fraction(0)
    return pos - neg
