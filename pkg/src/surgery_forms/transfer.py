"""Restriction of scalars along diagonal covers of tori.

For the cover z_i -> z_i^{k_i}, the restricted module p^!Lambda is free over
Lambda on the coset representatives z^c, 0 <= c_i < k_i, taken in
lexicographic order.  Multiplication by z^e sends z^c to
z^{floor((e+c)/k)} . z^{(e+c) mod k}, so column c of p^!(z^e) carries
z^{floor((e+c)/k)} in row (e+c) mod k.

For a matrix, each entry is replaced by its q x q block; the basis index of
(generator i, coset c) is ``i * q + index(c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import prod
from typing import Sequence

from .forms import AlmostSymmetricForm, QuadraticForm, nilpotency_check
from .matrix import RingMatrix
from .ring import ContextMismatch, LaurentPoly


@dataclass(frozen=True)
class Cover:
    multipliers: tuple[int, ...]

    def __init__(self, multipliers: Sequence[int]):
        m = tuple(int(x) for x in multipliers)
        if not m:
            raise ValueError("a cover needs at least one multiplier")
        if any(x < 1 for x in m):
            raise ValueError(f"cover multipliers must be positive, got {m}")
        object.__setattr__(self, "multipliers", m)

    @classmethod
    def parse(cls, text: str) -> "Cover":
        return cls([int(x) for x in text.split(",")])

    @classmethod
    def uniform(cls, k: int, m: int) -> "Cover":
        return cls([k] * m)

    @property
    def rank(self) -> int:
        return len(self.multipliers)

    @property
    def index(self) -> int:
        return prod(self.multipliers)

    q = index

    @cached_property
    def basis(self) -> list[tuple[int, ...]]:
        """Coset representatives in lexicographic order."""
        return list(product(*(range(x) for x in self.multipliers)))

    @cached_property
    def _position(self) -> dict[tuple[int, ...], int]:
        return {c: n for n, c in enumerate(self.basis)}

    def position(self, c: Sequence[int]) -> int:
        return self._position[tuple(c)]

    def compose(self, other: "Cover") -> "Cover":
        if other.rank != self.rank:
            raise ValueError("covers of different rank")
        return Cover([a * b for a, b in zip(self.multipliers, other.multipliers)])


def _check(k: int, cover: Cover) -> None:
    if k != cover.rank:
        raise ContextMismatch(f"ring has {k} variables, cover has {cover.rank}")


def _blocks(a: LaurentPoly, cover: Cover) -> dict[tuple[int, int], dict]:
    # (row, col) -> {exponent: coeff}
    out: dict[tuple[int, int], dict] = {}
    mult = cover.multipliers
    for e, c in a.items():
        for col, rep in enumerate(cover.basis):
            s = [x + y for x, y in zip(e, rep)]
            w = tuple(x // m for x, m in zip(s, mult))
            r = tuple(x % m for x, m in zip(s, mult))
            cell = out.setdefault((cover.position(r), col), {})
            cell[w] = cell.get(w, 0) + c
    return out


def transfer_poly(a: LaurentPoly, cover: Cover) -> RingMatrix:
    """The q x q matrix of multiplication by ``a`` on p^!Lambda."""
    _check(a.k, cover)
    q = cover.index
    rows = [[LaurentPoly.zero(a.k)] * q for _ in range(q)]
    for (r, c), terms in _blocks(a, cover).items():
        rows[r][c] = LaurentPoly(a.k, terms)
    return RingMatrix(a.k, rows)


def transfer_matrix(m: RingMatrix, cover: Cover) -> RingMatrix:
    """Blockwise transfer; block (i, j) is transfer_poly(m[i, j])."""
    _check(m.k, cover)
    q = cover.index
    zero = LaurentPoly.zero(m.k)
    rows = [[zero] * (m.cols * q) for _ in range(m.rows * q)]
    for i in range(m.rows):
        for j in range(m.cols):
            x = m[i, j]
            if not x:
                continue
            for (r, c), terms in _blocks(x, cover).items():
                rows[i * q + r][j * q + c] = LaurentPoly(m.k, terms)
    return RingMatrix._raw(m.k, tuple(tuple(r) for r in rows))


def transfer_form(f: QuadraticForm | AlmostSymmetricForm, cover: Cover):
    """Transfer of a form; almost symmetric output is re-certified nilpotent."""
    if isinstance(f, QuadraticForm):
        return QuadraticForm(transfer_matrix(f.psi, cover), f.parity)
    if isinstance(f, AlmostSymmetricForm):
        out = AlmostSymmetricForm(transfer_matrix(f.alpha, cover), f.parity)
        nilpotency_check(out)
        return out
    raise TypeError(f"cannot transfer {type(f).__name__}")


def basis_labels(cover: Cover, r: int) -> list[dict]:
    """Basis of p^!(Lambda^r) in transfer order: generator index (1-based) and coset."""
    return [{"i": i + 1, "c": list(c)} for i in range(r) for c in cover.basis]


def composition_permutation(first: Cover, second: Cover, r: int) -> list[int]:
    """Basis reordering relating iterated and composite transfers.

    With ``perm`` returned here,
    ``transfer_matrix(transfer_matrix(A, first), second)
    == transfer_matrix(A, first.compose(second)).permute(perm)``.
    The iterated basis element (i, c1, c2) is z^{c1 + first*c2} e_i.
    """
    total = first.compose(second)
    q1, q2, q = first.index, second.index, total.index
    perm = []
    for i in range(r):
        for c1 in first.basis:
            for c2 in second.basis:
                c = tuple(a + k * b for a, k, b in zip(c1, first.multipliers, c2))
                perm.append(i * q + total.position(c))
    assert len(perm) == r * q1 * q2
    return perm
