"""Finite free chain complexes over Z[Z^k] and their symmetric structures.

Gradings are stored bottom-up: ``ranks[r]`` is the rank of C_r, and
``diffs[r]`` is d_r : C_r -> C_{r-1} as a ``ranks[r-1] x ranks[r]`` matrix
(``diffs[0]`` is always ``None``).  A map involving a rank-zero module is
stored as ``None``.

For an m-dimensional complex, ``phi0[r]`` is the map C^r -> C_{m-r} and
``phi1[r]`` is C^r -> C_{m-r+1}.

Instant form convention: the middle-dimensional matrix is
``phi0[n] + d_{n+1} @ phi1[n]`` with matrices acting on columns.  With the
torus data below this reproduces the transcribed T^2 form exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .forms import AlmostSymmetricForm, nilpotency_check
from .matrix import DimensionMismatch, RingMatrix, bareiss_det, kronecker, mat_mul
from .ring import ContextMismatch, LaurentPoly

Block = RingMatrix | None


class NotAChainComplex(ValueError):
    pass


class DualityNotIsomorphism(ValueError):
    pass


@dataclass(frozen=True)
class FreeChainComplex:
    k: int
    ranks: tuple[int, ...]
    diffs: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if len(self.diffs) != len(self.ranks):
            raise DimensionMismatch("need one differential slot per degree (slot 0 unused)")
        if self.diffs[0] is not None:
            raise DimensionMismatch("d_0 must be None")
        for r in range(1, len(self.ranks)):
            d = self.diffs[r]
            if self.ranks[r] == 0 or self.ranks[r - 1] == 0:
                if d is not None:
                    raise DimensionMismatch(f"d_{r} touches a zero module and must be None")
                continue
            if d is None:
                object.__setattr__(self, "diffs", self.diffs[:r] + (
                    RingMatrix.zeros(self.ranks[r - 1], self.ranks[r], self.k),) + self.diffs[r + 1:])
                continue
            if d.k != self.k:
                raise ContextMismatch(f"d_{r} lives in k={d.k}, complex in k={self.k}")
            if d.shape != (self.ranks[r - 1], self.ranks[r]):
                raise DimensionMismatch(f"d_{r} has shape {d.shape}, expected "
                                        f"{(self.ranks[r - 1], self.ranks[r])}")
        for r in range(2, len(self.ranks)):
            a, b = self.diffs[r - 1], self.diffs[r]
            if a is not None and b is not None and not mat_mul(a, b).is_zero():
                raise NotAChainComplex(f"d_{r - 1} d_{r} != 0")

    @property
    def dim(self) -> int:
        return len(self.ranks) - 1

    def d(self, r: int) -> Block:
        if 1 <= r <= self.dim:
            return self.diffs[r]
        return None

    def to_json(self) -> dict:
        return {"k": self.k, "ranks": list(self.ranks),
                "diffs": [_block_json(d) for d in self.diffs[1:]]}


@dataclass(frozen=True)
class SymmetricStructure:
    phi0: tuple[Block, ...]
    phi1: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "phi0", tuple(self.phi0))
        object.__setattr__(self, "phi1", tuple(self.phi1))


def _block_json(b: Block):
    return None if b is None else b.to_json()


def _block_from_json(obj) -> Block:
    return None if obj is None else RingMatrix.from_json(obj)


def complex_to_json(c: FreeChainComplex, s: SymmetricStructure | None = None) -> dict:
    out = c.to_json()
    if s is not None:
        out["phi0"] = [_block_json(b) for b in s.phi0]
        out["phi1"] = [_block_json(b) for b in s.phi1]
    return out


def complex_from_json(obj: dict) -> tuple[FreeChainComplex, SymmetricStructure | None]:
    ranks = obj["ranks"]
    k = obj.get("k")
    diffs = [None] + [_block_from_json(d) for d in obj["diffs"]]
    if k is None:
        k = next((d.k for d in diffs if d is not None), 0)
    c = FreeChainComplex(k, ranks, diffs)
    s = None
    if "phi0" in obj:
        s = SymmetricStructure([_block_from_json(b) for b in obj["phi0"]],
                               [_block_from_json(b) for b in obj.get("phi1", [None] * len(ranks))])
    return c, s


def dual_complex(c: FreeChainComplex) -> FreeChainComplex:
    """C^{m-*}: degree r holds C^{m-r}, differential (-1)^r d_{m-r+1}^*."""
    m = c.dim
    ranks = [c.ranks[m - r] for r in range(m + 1)]
    diffs: list[Block] = [None]
    for r in range(1, m + 1):
        d = c.d(m - r + 1)
        if d is None:
            diffs.append(None)
            continue
        ds = d.conj_transpose()
        diffs.append(-ds if r % 2 else ds)
    return FreeChainComplex(c.k, ranks, diffs)


def tensor_complex(c: FreeChainComplex, e: FreeChainComplex) -> FreeChainComplex:
    """C (x) D with d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.

    Degree n is the direct sum over p + q = n with p ascending; each summand
    carries the Kronecker basis of C_p (x) D_q.
    """
    if c.k != e.k:
        raise ContextMismatch("tensor factors must share a ring; embed them first")
    k = c.k
    top = c.dim + e.dim
    summands = [[(p, n - p) for p in range(n + 1) if p <= c.dim and n - p <= e.dim]
                for n in range(top + 1)]
    size = lambda pq: c.ranks[pq[0]] * e.ranks[pq[1]]
    ranks = [sum(size(pq) for pq in s) for s in summands]
    diffs: list[Block] = [None]
    for n in range(1, top + 1):
        if ranks[n] == 0 or ranks[n - 1] == 0:
            diffs.append(None)
            continue
        rows = [[LaurentPoly.zero(k)] * ranks[n] for _ in range(ranks[n - 1])]
        col0 = 0
        for p, q in summands[n]:
            w = size((p, q))
            if w == 0:
                continue
            row0 = 0
            for p2, q2 in summands[n - 1]:
                h = size((p2, q2))
                blk = None
                if h and (p2, q2) == (p - 1, q):
                    blk = kronecker(c.d(p), RingMatrix.identity(e.ranks[q], k))
                elif h and (p2, q2) == (p, q - 1):
                    blk = kronecker(RingMatrix.identity(c.ranks[p], k), e.d(q))
                    if p % 2:
                        blk = -blk
                if blk is not None:
                    for i in range(h):
                        for j in range(w):
                            rows[row0 + i][col0 + j] = blk[i, j]
                row0 += h
            col0 += w
        diffs.append(RingMatrix(k, rows))
    return FreeChainComplex(k, ranks, diffs)


def build_circle(k: int = 1, var: int = 1) -> tuple[FreeChainComplex, SymmetricStructure]:
    """Cellular complex of the universal cover of S^1 with its symmetric structure.

    d = 1 - z; phi0 = 1 on C^0 -> C_1 and z on C^1 -> C_0; phi1 = -1 on C^1 -> C_1.
    ``var`` picks which variable of a k-variable ring plays z.
    """
    z = LaurentPoly.var(var, k)
    c = FreeChainComplex(k, (1, 1), (None, RingMatrix(k, [[1 - z]])))
    phi0 = (RingMatrix(k, [[1]]), RingMatrix(k, [[z]]))
    phi1 = (None, RingMatrix(k, [[-1]]))
    return c, SymmetricStructure(phi0, phi1)


def build_t2(k: int = 2, first_var: int = 1) -> tuple[FreeChainComplex, SymmetricStructure]:
    """The T^2 complex and Poincare duality data as transcribed, on variables z_a, z_b."""
    a, b = first_var, first_var + 1
    z1, z2 = LaurentPoly.var(a, k), LaurentPoly.var(b, k)
    z2i = LaurentPoly.var(b, k, -1)
    d2 = RingMatrix(k, [[1 - z1], [1 - z2i]])
    d1 = RingMatrix(k, [[z2i - 1, 1 - z1]])
    c = FreeChainComplex(k, (1, 2, 1), (None, d1, d2))
    phi0 = (
        RingMatrix(k, [[1]]),
        RingMatrix(k, [[0, -z1], [z2i, 0]]),
        RingMatrix(k, [[-(z1 * z2i)]]),
    )
    phi1 = (
        None,
        RingMatrix(k, [[1, -z2]]),
        RingMatrix(k, [[-z1], [1]]),
    )
    return c, SymmetricStructure(phi0, phi1)


def build_torus(m: int) -> FreeChainComplex:
    """C of the universal cover of T^m as the tensor product of m circles."""
    if m < 1:
        raise ValueError("torus dimension must be positive")
    c, _ = build_circle(m, 1)
    for v in range(2, m + 1):
        c = tensor_complex(c, build_circle(m, v)[0])
    return c


def phi0_is_chain_map(
    c: FreeChainComplex, s: SymmetricStructure, signs: Sequence[int] | None = None
) -> bool:
    """d_C phi0 = phi0 d_{C^{m-*}} in every degree.

    ``signs[r]`` (default all +1) rescales phi0 on dual degree r, i.e. on C^{m-r}.
    """
    m = c.dim
    eps = list(signs) if signs is not None else [1] * (m + 1)
    dual = dual_complex(c)
    for r in range(1, m + 1):
        # dual degree r is C^{m-r}; phi0 there maps to C_r
        src, dst = m - r, m - r + 1
        left_d, left_phi = c.d(r), s.phi0[src]
        right_phi, right_d = s.phi0[dst], dual.d(r)
        lhs = mat_mul(left_d, left_phi) if left_d is not None and left_phi is not None else None
        rhs = mat_mul(right_phi, right_d) if right_phi is not None and right_d is not None else None
        if lhs is not None and eps[r] < 0:
            lhs = -lhs
        if rhs is not None and eps[r - 1] < 0:
            rhs = -rhs
        if not _same(lhs, rhs):
            return False
    return True


def phi0_chain_signs(c: FreeChainComplex, s: SymmetricStructure) -> tuple[int, ...] | None:
    """Degreewise signs (first one +1) making phi0 a chain map C^{m-*} -> C, or None.

    Printed duality data is often drawn against the unsigned d^*; a sign
    twist reconciles it with the signed dual complex.
    """
    m = c.dim
    for bits in range(2 ** m):
        eps = (1,) + tuple(-1 if bits >> i & 1 else 1 for i in range(m))
        if phi0_is_chain_map(c, s, eps):
            return eps
    return None


def _same(a: Block, b: Block) -> bool:
    if a is None or a.is_zero():
        return b is None or b.is_zero()
    return b is not None and a == b


def phi0_is_isomorphism(c: FreeChainComplex, s: SymmetricStructure) -> bool:
    m = c.dim
    for r in range(m + 1):
        if c.ranks[r] != c.ranks[m - r]:
            return False
        if c.ranks[r] == 0:
            continue
        blk = s.phi0[r]
        if blk is None or not bareiss_det(blk).is_unit():
            return False
    return True


def instant_form_iso(c: FreeChainComplex, s: SymmetricStructure, n: int) -> AlmostSymmetricForm:
    """Middle form (C^n, phi0 + d phi1) of a 2n-dimensional complex whose duality is an isomorphism."""
    if c.dim != 2 * n:
        raise DimensionMismatch(f"complex has dimension {c.dim}, expected {2 * n}")
    if not phi0_is_isomorphism(c, s):
        raise DualityNotIsomorphism(
            "phi0 is not an isomorphism; the general cokernel instant form is not supported")
    alpha = s.phi0[n]
    d = c.d(n + 1)
    phi1 = s.phi1[n] if n < len(s.phi1) else None
    if d is not None and phi1 is not None:
        alpha = alpha + mat_mul(d, phi1)
    form = AlmostSymmetricForm(alpha, n)
    nilpotency_check(form)
    return form


def instant_rank(ranks: Sequence[int], n: int) -> int:
    """sum_{r=0}^{n} (-1)^r (c_{n-r} + c_{n+r+1}), out-of-range ranks read as 0."""
    get = lambda i: ranks[i] if 0 <= i < len(ranks) else 0
    return sum((-1) ** r * (get(n - r) + get(n + r + 1)) for r in range(n + 1))


def torus_ranks(m: int) -> list[int]:
    return [comb(m, r) for r in range(m + 1)]
