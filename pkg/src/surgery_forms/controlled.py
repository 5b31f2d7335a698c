"""Geometric Z-modules over the torus and the forget-control map.

The covering torus is rescaled to the unit torus R^m / Z^m, so a form realized
on a k-fold cover has its basis points on the lattice (x0 + g) / k.  All
coordinates are exact ``Fraction``s and distances are compared squared.

Label identification with transfers
-----------------------------------
The realized basis element (g, i) corresponds to the coset representative
z^{(k-1) - g} of generator i in p^!(Lambda^r).  Under that identification
``forget_control(control_realize(psi, k)) == transfer_matrix(psi, (k,...,k))``
is a literal matrix equality (see ``transfer_permutation``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .matrix import DimensionMismatch, RingMatrix
from .ring import LaurentPoly
from .transfer import Cover

INJECTIVITY_RADIUS_SQ = Fraction(1, 4)


class ControlError(ValueError):
    pass


class AmbiguousLift(ControlError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        c = tuple(_frac(x) for x in coords)
        if any(not (0 <= x < 1) for x in c):
            raise ValueError(f"torus coordinates must lie in [0, 1): {c}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def wrap(cls, coords: Sequence) -> "TorusPoint":
        return cls([_frac(x) % 1 for x in coords])

    @classmethod
    def origin(cls, m: int) -> "TorusPoint":
        return cls([0] * m)

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        return cls([Fraction(x) for x in text.split(",")])

    @property
    def dim(self) -> int:
        return len(self.coords)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coords]


def geodesic_distance_sq(x: TorusPoint, y: TorusPoint) -> Fraction:
    if x.dim != y.dim:
        raise DimensionMismatch("points on tori of different dimension")
    total = Fraction(0)
    for a, b in zip(x.coords, y.coords):
        t = a - b
        total += min((t - s) ** 2 for s in (-1, 0, 1))
    return total


Label = tuple[tuple[int, ...], int]


@dataclass
class GeometricForm:
    """A form on a geometric Z-module over the unit torus.

    ``labels[a] = (g, i)``: deck element g in (Z/k)^m and 1-based generator i.
    ``entries[(a, b)]`` is the nonzero integer pairing between basis a and b.
    """

    k: int
    n2: int
    parity: int
    labels: list[Label]
    locations: list[TorusPoint]
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.labels) != len(self.locations):
            raise DimensionMismatch("one location per basis label")
        for p in self.locations:
            if p.dim != self.n2:
                raise DimensionMismatch("location has the wrong torus dimension")
        n = len(self.labels)
        for (a, b), c in list(self.entries.items()):
            if not (0 <= a < n and 0 <= b < n):
                raise IndexError(f"entry ({a}, {b}) refers to a missing basis element")
            if not c:
                del self.entries[(a, b)]

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n2": self.n2,
            "parity": self.parity,
            "basis": [{"g": list(g), "i": i, "x": p.to_json()}
                      for (g, i), p in zip(self.labels, self.locations)],
            "entries": [{"a": a, "b": b, "c": c} for (a, b), c in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GeometricForm":
        labels = [(tuple(b["g"]), int(b["i"])) for b in obj["basis"]]
        locs = [TorusPoint(b["x"]) for b in obj["basis"]]
        entries: dict[tuple[int, int], int] = {}
        for e in obj["entries"]:
            key = (int(e["a"]), int(e["b"]))
            entries[key] = entries.get(key, 0) + int(e["c"])
        return cls(int(obj["k"]), int(obj["n2"]), int(obj.get("parity", 0)), labels, locs, entries)


def control_realize(
    psi: RingMatrix,
    k: int,
    x0: TorusPoint | Sequence[TorusPoint] | None = None,
    parity: int = 0,
) -> GeometricForm:
    """Pass to the k-fold cover in every direction and spread psi over the deck orbit.

    Basis labels run over generators i (outer) and g in (Z/k)^m (inner,
    lexicographic).  The pairing is psi~(g e_i, f e_j) = psi_bar_{f-g}(e_i, e_j)
    with psi_bar the reduction of exponents mod k.  ``x0`` is either one point
    used for every generator or one point per generator.
    """
    if not psi.is_square():
        raise DimensionMismatch("control_realize needs a square matrix")
    m = psi.k
    if m < 1:
        raise ControlError("realization needs at least one torus direction")
    width = psi.max_order()
    if k <= 2 * width:
        raise ControlError(f"k={k} too small: need k > 2|psi| = {2 * width}")
    r = psi.rows
    if x0 is None:
        bases = [TorusPoint.origin(m)] * r
    elif isinstance(x0, TorusPoint):
        bases = [x0] * r
    else:
        bases = list(x0)
        if len(bases) != r:
            raise DimensionMismatch("need one base point per generator")
    for p in bases:
        if p.dim != m:
            raise DimensionMismatch("base point has the wrong torus dimension")

    deck = list(product(range(k), repeat=m))
    pos = {g: n for n, g in enumerate(deck)}
    q = len(deck)
    labels: list[Label] = []
    locs: list[TorusPoint] = []
    for i in range(r):
        for g in deck:
            labels.append((g, i + 1))
            locs.append(TorusPoint.wrap([(x + y) / k for x, y in zip(bases[i].coords, g)]))

    entries: dict[tuple[int, int], int] = {}
    for i in range(r):
        for j in range(r):
            for e, c in psi[i, j].items():
                for g in deck:
                    f = tuple((x + y) % k for x, y in zip(g, e))
                    key = (i * q + pos[g], j * q + pos[f])
                    entries[key] = entries.get(key, 0) + c
    entries = {key: c for key, c in entries.items() if c}
    return GeometricForm(k, m, parity, labels, locs, entries)


def radius(g: GeometricForm) -> Fraction:
    """Squared radius: the largest squared distance between paired basis points."""
    return max((geodesic_distance_sq(g.locations[a], g.locations[b]) for a, b in g.entries),
               default=Fraction(0))


def _lift(x: TorusPoint, y: TorusPoint, delta_sq: Fraction) -> tuple[int, ...]:
    # unique G in {-1,0,1}^m with |y + G - x|^2 < delta_sq
    hits = []
    for shift in product((-1, 0, 1), repeat=x.dim):
        d = sum((b + s - a) ** 2 for a, b, s in zip(x.coords, y.coords, shift))
        if d < delta_sq:
            hits.append(shift)
    if len(hits) != 1:
        raise AmbiguousLift(f"{len(hits)} lattice lifts within the bound for {x.coords}, {y.coords}")
    return hits[0]


def forget_control(g: GeometricForm, delta_sq: Fraction | str) -> RingMatrix:
    """Rebuild a Z[Z^m]-matrix from a controlled form.

    Entry (a, b) is c . z^G with G the unique lattice vector moving the lift
    of basis point b within distance delta of basis point a.  The output is
    indexed by the basis of ``g``.
    """
    delta_sq = _frac(delta_sq)
    if not 0 < delta_sq < INJECTIVITY_RADIUS_SQ:
        raise ControlError("delta^2 must lie in (0, 1/4) for lifts to be unique")
    rad = radius(g)
    if not rad < delta_sq:
        raise ControlError(f"radius^2 {rad} exceeds delta^2 {delta_sq}")
    n = g.size
    terms: dict[tuple[int, int], dict] = {}
    for (a, b), c in g.entries.items():
        shift = _lift(g.locations[a], g.locations[b], delta_sq)
        cell = terms.setdefault((a, b), {})
        cell[shift] = cell.get(shift, 0) + c
    zero = LaurentPoly.zero(g.n2)
    rows = [[zero] * n for _ in range(n)]
    for (a, b), t in terms.items():
        rows[a][b] = LaurentPoly(g.n2, t)
    return RingMatrix._raw(g.n2, tuple(tuple(r) for r in rows))


def transfer_permutation(g: GeometricForm) -> list[int]:
    """Map basis index of ``g`` to the transfer basis index of its label.

    (g, i) goes to (i - 1) * q + index((k - 1) - g) in the lexicographic coset
    order of the cover (k, ..., k).  Then
    ``forget_control(g, d) == transfer_matrix(psi, cover).permute(perm)``.
    """
    cover = Cover.uniform(g.k, g.n2)
    q = cover.index
    return [(i - 1) * q + cover.position(tuple(g.k - 1 - x for x in gg)) for gg, i in g.labels]
