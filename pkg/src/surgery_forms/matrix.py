"""Dense matrices over a Laurent polynomial ring.

Matrices act on column vectors: a morphism Lambda^c -> Lambda^r is an r x c
matrix and composition g o f is ``g @ f``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .ring import ContextMismatch, LaurentPoly, parse_poly


class DimensionMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


class RingMatrix:
    __slots__ = ("rows", "cols", "k", "_e")

    def __init__(self, k: int, entries: Sequence[Sequence[LaurentPoly | int]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have positive dimensions")
        cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.k = k
        self.rows = len(rows)
        self.cols = cols
        self._e = tuple(tuple(_as_poly(x, k) for x in r) for r in rows)

    @classmethod
    def _raw(cls, k: int, rows: tuple[tuple[LaurentPoly, ...], ...]) -> "RingMatrix":
        obj = object.__new__(cls)
        obj.k = k
        obj.rows = len(rows)
        obj.cols = len(rows[0])
        obj._e = rows
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, k: int) -> "RingMatrix":
        z = LaurentPoly.zero(k)
        return cls._raw(k, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, k: int) -> "RingMatrix":
        z, one = LaurentPoly.zero(k), LaurentPoly.constant(1, k)
        return cls._raw(k, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_ints(cls, data: Sequence[Sequence[int]], k: int = 0) -> "RingMatrix":
        return cls(k, data)

    @classmethod
    def parse(cls, data: Sequence[Sequence[str | int]], k: int) -> "RingMatrix":
        return cls(k, [[parse_poly(x, k) if isinstance(x, str) else x for x in r] for r in data])

    @classmethod
    def from_function(cls, rows: int, cols: int, k: int, f: Callable[[int, int], LaurentPoly]) -> "RingMatrix":
        return cls._raw(k, tuple(tuple(f(i, j) for j in range(cols)) for i in range(rows)))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._e[i]

    def to_rows(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self._e]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.k == other.k and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.k, self._e))

    def is_zero(self) -> bool:
        return all(not x for r in self._e for x in r)

    def map(self, f: Callable[[LaurentPoly], LaurentPoly], k: int | None = None) -> "RingMatrix":
        return RingMatrix._raw(self.k if k is None else k, tuple(tuple(f(x) for x in r) for r in self._e))

    def _check_same(self, other: "RingMatrix") -> None:
        if self.k != other.k:
            raise ContextMismatch(f"ring mismatch: k={self.k} vs k={other.k}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape mismatch: {self.shape} vs {other.shape}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same(other)
        return RingMatrix._raw(self.k, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._e, other._e)))

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same(other)
        return RingMatrix._raw(self.k, tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._e, other._e)))

    def __neg__(self) -> "RingMatrix":
        return self.map(lambda x: -x)

    def scale(self, c: LaurentPoly | int) -> "RingMatrix":
        c = _as_poly(c, self.k)
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        return mat_mul(self, other)

    def transpose(self) -> "RingMatrix":
        return RingMatrix._raw(self.k, tuple(zip(*self._e)))

    def conj_transpose(self) -> "RingMatrix":
        return RingMatrix._raw(self.k, tuple(
            tuple(x.involute() for x in col) for col in zip(*self._e)))

    @property
    def H(self) -> "RingMatrix":
        return self.conj_transpose()

    def augment(self) -> list[list[int]]:
        """Integer matrix obtained by setting every z_i = 1."""
        return [[x.augment() for x in r] for r in self._e]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RingMatrix":
        rows, cols = list(rows), list(cols)
        return RingMatrix._raw(self.k, tuple(tuple(self._e[i][j] for j in cols) for i in rows))

    def permute(self, perm: Sequence[int]) -> "RingMatrix":
        """Conjugate by a basis permutation: result[a][b] = self[perm[a]][perm[b]]."""
        return self.submatrix(perm, perm)

    def embed(self, k: int, offset: int = 0) -> "RingMatrix":
        return self.map(lambda x: x.embed(k, offset), k=k)

    def max_order(self) -> int:
        """|A|: the largest order of a nonzero entry (0 for the zero matrix)."""
        return max((x.order() for r in self._e for x in r if x), default=0)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "k": self.k,
            "entries": [[x.to_json() for x in r] for r in self._e],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "RingMatrix":
        k = int(obj["k"])
        m = cls(k, [[LaurentPoly.from_json(x) for x in r] for r in obj["entries"]])
        if m.shape != (obj["rows"], obj["cols"]):
            raise DimensionMismatch("declared dimensions disagree with entries")
        return m

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self._e]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols}, k={self.k})"


def _as_poly(x, k: int) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        if x.k != k:
            raise ContextMismatch(f"entry lives in k={x.k}, matrix in k={k}")
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x, k)
    raise TypeError(f"matrix entry of type {type(x).__name__}")


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.k != b.k:
        raise ContextMismatch(f"ring mismatch: k={a.k} vs k={b.k}")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    zero = LaurentPoly.zero(a.k)
    bcols = list(zip(*b._e))
    out = []
    for ra in a._e:
        nz = [(j, x) for j, x in enumerate(ra) if x]
        row = []
        for col in bcols:
            acc = zero
            for j, x in nz:
                y = col[j]
                if y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return RingMatrix._raw(a.k, tuple(out))


def conj_transpose(a: RingMatrix) -> RingMatrix:
    return a.conj_transpose()


def kronecker(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Block (i, j) of the result is a[i, j] * b."""
    if a.k != b.k:
        raise ContextMismatch(f"ring mismatch: k={a.k} vs k={b.k}; embed factors first")
    zero = LaurentPoly.zero(a.k)
    out = []
    for ra in a._e:
        for rb in b._e:
            out.append(tuple(x * y if x and y else zero for x in ra for y in rb))
    return RingMatrix._raw(a.k, tuple(out))


def direct_sum(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    if a.k != b.k:
        raise ContextMismatch("ring mismatch")
    z = LaurentPoly.zero(a.k)
    top = tuple(r + (z,) * b.cols for r in a._e)
    bottom = tuple((z,) * a.cols + r for r in b._e)
    return RingMatrix._raw(a.k, top + bottom)


def bareiss_det(a: RingMatrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination with row swaps.

    Every intermediate division is exact over the Laurent ring, which is an
    integral domain.
    """
    if not a.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = a.rows
    m = [list(r) for r in a._e]
    sign = 1
    prev = LaurentPoly.constant(1, a.k)
    for i in range(n - 1):
        if not m[i][i]:
            for r in range(i + 1, n):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(a.k)
        piv = m[i][i]
        unit_prev = prev.unit_decomposition()
        for r in range(i + 1, n):
            mri = m[r][i]
            row_r, row_i = m[r], m[i]
            for c in range(i + 1, n):
                num = row_r[c] * piv
                if mri and row_i[c]:
                    num = num - mri * row_i[c]
                if unit_prev[0]:
                    sgn, e = unit_prev[1], unit_prev[2]
                    num = num.shift(tuple(-x for x in e))
                    row_r[c] = -num if sgn < 0 else num
                else:
                    row_r[c] = num.exact_div(prev)
            row_r[i] = LaurentPoly.zero(a.k)
        prev = piv
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def det(a: RingMatrix) -> LaurentPoly:
    return bareiss_det(a)


def adjugate(a: RingMatrix) -> RingMatrix:
    """Classical adjoint: adj(A)[i][j] = (-1)^{i+j} det(A with row j, col i removed)."""
    if not a.is_square():
        raise DimensionMismatch("adjugate of a non-square matrix")
    n = a.rows
    if n == 1:
        return RingMatrix.identity(1, a.k)

    def cof(i: int, j: int) -> LaurentPoly:
        minor = a.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
        d = bareiss_det(minor)
        return -d if (i + j) % 2 else d

    return RingMatrix.from_function(n, n, a.k, cof)


def adjugate_inverse(a: RingMatrix) -> RingMatrix:
    """Inverse over the Laurent ring, certified by A A^{-1} = A^{-1} A = I."""
    d = bareiss_det(a)
    ok, sign, e = d.unit_decomposition()
    if not ok:
        raise NotInvertible(f"not invertible over Lambda: det = {d}")
    inv_unit = LaurentPoly.monomial((-x for x in e), sign)
    inv = adjugate(a).scale(inv_unit)
    ident = RingMatrix.identity(a.rows, a.k)
    if mat_mul(a, inv) != ident or mat_mul(inv, a) != ident:
        raise ArithmeticError("adjugate inverse failed its certificate")
    return inv


def inverse(a: RingMatrix) -> RingMatrix:
    """Inverse over the Laurent ring via fraction-free Gauss-Jordan.

    Cheaper than the adjugate for larger matrices; the result is certified the
    same way.
    """
    d = bareiss_det(a)
    ok, sign, e = d.unit_decomposition()
    if not ok:
        raise NotInvertible(f"not invertible over Lambda: det = {d}")
    if a.rows <= 4:
        return adjugate_inverse(a)
    inv = _bareiss_solve(a, d)
    ident = RingMatrix.identity(a.rows, a.k)
    if mat_mul(a, inv) != ident or mat_mul(inv, a) != ident:
        raise ArithmeticError("inverse failed its certificate")
    return inv


def _bareiss_solve(a: RingMatrix, d: LaurentPoly) -> RingMatrix:
    # fraction-free elimination on [A | I]; yields det(A) * A^{-1}, then divide by the unit det
    n = a.rows
    k = a.k
    one, zero = LaurentPoly.constant(1, k), LaurentPoly.zero(k)
    m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a._e)]
    prev = one
    sign = 1
    for i in range(n):
        if not m[i][i]:
            for r in range(i + 1, n):
                if m[r][i]:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                raise NotInvertible("singular matrix")
        piv = m[i][i]
        for r in range(n):
            if r == i:
                continue
            mri = m[r][i]
            for c in range(2 * n):
                if c == i:
                    continue
                num = m[r][c] * piv
                if mri and m[i][c]:
                    num = num - mri * m[i][c]
                m[r][c] = num.exact_div(prev)
            m[r][i] = zero
        prev = piv
    # now m[i][i] = det(A) (up to the swap sign) for every i and the right block is det * A^{-1}
    dd = m[0][0]
    return RingMatrix(k, [[m[i][n + j].exact_div(dd) for j in range(n)] for i in range(n)])


def is_unimodular(a: RingMatrix) -> bool:
    if not a.is_square():
        raise DimensionMismatch("unimodularity of a non-square matrix")
    return bareiss_det(a).is_unit()


def integer_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss over Z)."""
    n = len(m)
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]
