"""Slow, independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

from typing import Sequence

from .matrix import RingMatrix
from .ring import LaurentPoly


def cofactor_det(m: RingMatrix) -> LaurentPoly:
    """Laplace expansion along the first row."""
    n = m.rows
    if n == 1:
        return m[0, 0]
    total = LaurentPoly.zero(m.k)
    for j in range(n):
        if not m[0, j]:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = m[0, j] * cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


def kron_by_index(factors: Sequence[RingMatrix]) -> RingMatrix:
    """Iterated Kronecker product evaluated entry by entry from mixed-radix digits.

    Row t = (t_0, t_1, ..., t_n) in mixed radix with the first factor most
    significant; entry (t, u) is the product of factor[s][t_s, u_s].
    """
    k = factors[0].k
    dims_r = [f.rows for f in factors]
    dims_c = [f.cols for f in factors]

    def digits(x: int, dims: list[int]) -> list[int]:
        out = []
        for d in reversed(dims):
            x, r = divmod(x, d)
            out.append(r)
        return out[::-1]

    rows_total = 1
    for d in dims_r:
        rows_total *= d
    cols_total = 1
    for d in dims_c:
        cols_total *= d

    def entry(t: int, u: int) -> LaurentPoly:
        acc = LaurentPoly.constant(1, k)
        for f, a, b in zip(factors, digits(t, dims_r), digits(u, dims_c)):
            x = f[a, b]
            if not x:
                return LaurentPoly.zero(k)
            acc = acc * x
        return acc

    return RingMatrix.from_function(rows_total, cols_total, k, entry)


def integer_inverse(m: Sequence[Sequence[int]]):
    """Gauss-Jordan over the rationals; returns a list of Fraction rows."""
    from fractions import Fraction

    n = len(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
