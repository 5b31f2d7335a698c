"""Laurent polynomials over Z in k commuting variables.

A ``LaurentPoly`` is an element of Z[z1^{+-1}, ..., zk^{+-1}], the integral
group ring of the free abelian group Z^k.  Terms are stored sparsely as a
dict from exponent tuples to nonzero Python ints, so equality of normal forms
is structural.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator, Mapping

MultiIndex = tuple[int, ...]


class ContextMismatch(ValueError):
    """Raised when two objects live in rings with different variable counts."""


class NotExactDivision(ArithmeticError):
    pass


class LaurentPoly:
    __slots__ = ("k", "_terms", "_hash")

    def __init__(self, k: int, terms: Mapping[MultiIndex, int] | None = None):
        if k < 0:
            raise ValueError("variable count must be nonnegative")
        self.k = k
        clean: dict[MultiIndex, int] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != k:
                    raise ContextMismatch(f"exponent {e} has length {len(e)}, ring has k={k}")
                if c:
                    clean[e] = clean.get(e, 0) + int(c)
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, k: int, terms: dict[MultiIndex, int]) -> "LaurentPoly":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj.k = k
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "LaurentPoly":
        return cls._raw(k, {})

    @classmethod
    def constant(cls, c: int, k: int) -> "LaurentPoly":
        return cls._raw(k, {(0,) * k: int(c)} if c else {})

    @classmethod
    def monomial(cls, exps: Iterable[int], c: int = 1) -> "LaurentPoly":
        e = tuple(int(x) for x in exps)
        return cls._raw(len(e), {e: int(c)} if c else {})

    @classmethod
    def var(cls, i: int, k: int, power: int = 1) -> "LaurentPoly":
        """The variable z_i (1-based) of a k-variable ring, raised to ``power``."""
        if not 1 <= i <= k:
            raise IndexError(f"variable z{i} not in a ring with k={k}")
        e = [0] * k
        e[i - 1] = power
        return cls._raw(k, {tuple(e): 1})

    # -- basic protocol ---------------------------------------------------

    @property
    def terms(self) -> dict[MultiIndex, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[MultiIndex, int]]:
        """Terms in lexicographic exponent order."""
        for e in sorted(self._terms):
            yield e, self._terms[e]

    def coeff(self, exps: Iterable[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.k)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.k == other.k and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.k, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.k != self.k:
                raise ContextMismatch(f"ring mismatch: k={self.k} vs k={other.k}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.k)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.k, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.k, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw(self.k, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict[MultiIndex, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw(self.k, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly._raw(self.k, {})
        return LaurentPoly._raw(self.k, {e: c * v for e, v in self._terms.items()})

    def shift(self, exps: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial z^exps."""
        s = tuple(exps)
        if len(s) != self.k:
            raise ContextMismatch("shift vector has wrong length")
        return LaurentPoly._raw(
            self.k, {tuple(x + y for x, y in zip(e, s)): c for e, c in self._terms.items()}
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            ok, sign, e = self.unit_decomposition()
            if not ok:
                raise ArithmeticError("negative power of a non-unit")
            return LaurentPoly.monomial((-x for x in e), sign) ** (-n)
        result = LaurentPoly.constant(1, self.k)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other`` when it exists in the Laurent ring.

        Uses leading-term division in the lexicographic group order on Z^k.
        The Newton box of a true quotient is determined by the operands, so a
        candidate term outside it proves the division is not exact.
        """
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._terms:
            return self
        if len(other._terms) == 1:
            (eb, cb), = other._terms.items()
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, cb)
                if r:
                    raise NotExactDivision("coefficient not divisible")
                out[tuple(x - y for x, y in zip(e, eb))] = q
            return LaurentPoly._raw(self.k, out)
        k = self.k
        lo = [min(e[j] for e in self._terms) - min(e[j] for e in other._terms) for j in range(k)]
        hi = [max(e[j] for e in self._terms) - max(e[j] for e in other._terms) for j in range(k)]
        if any(l > h for l, h in zip(lo, hi)):
            raise NotExactDivision("Newton box of quotient is empty")
        lead_b = max(other._terms)
        cb = other._terms[lead_b]
        rem = dict(self._terms)
        quot: dict[MultiIndex, int] = {}
        while rem:
            lead_r = max(rem)
            q, r = divmod(rem[lead_r], cb)
            if r:
                raise NotExactDivision("leading coefficient not divisible")
            e = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(not (l <= x <= h) for l, x, h in zip(lo, e, hi)):
                raise NotExactDivision("quotient term outside Newton box")
            quot[e] = q
            for eb, c in other._terms.items():
                t = tuple(x + y for x, y in zip(e, eb))
                v = rem.get(t, 0) - q * c
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return LaurentPoly._raw(k, quot)

    # -- ring structure specific to group rings ---------------------------

    def involute(self) -> "LaurentPoly":
        """Bar involution: z^i -> z^{-i}, coefficients fixed."""
        return LaurentPoly._raw(
            self.k, {tuple(-x for x in e): c for e, c in self._terms.items()}
        )

    bar = involute

    def augment(self) -> int:
        """Evaluate at z_i = 1 (augmentation to Z)."""
        return sum(self._terms.values())

    def order(self) -> int:
        """Largest sup-norm |i| of an exponent with nonzero coefficient."""
        if not self._terms:
            raise ValueError("order of the zero polynomial is undefined")
        return max((max((abs(x) for x in e), default=0) for e in self._terms))

    def unit_decomposition(self) -> tuple[bool, int, MultiIndex]:
        """Return ``(True, sign, exps)`` if self == sign * z^exps, else ``(False, 0, ())``."""
        if len(self._terms) != 1:
            return False, 0, ()
        (e, c), = self._terms.items()
        if c not in (1, -1):
            return False, 0, ()
        return True, c, e

    def is_unit(self) -> bool:
        return self.unit_decomposition()[0]

    def substitute_powers(self, mult: Iterable[int]) -> "LaurentPoly":
        """Apply z_i -> z_i^{mult_i}."""
        m = tuple(mult)
        return LaurentPoly._raw(
            self.k, {tuple(x * y for x, y in zip(e, m)): c for e, c in self._terms.items()}
        )

    def embed(self, k: int, offset: int = 0) -> "LaurentPoly":
        """Re-home into a k-variable ring, variable i becoming variable i+offset."""
        if offset < 0 or offset + self.k > k:
            raise ContextMismatch(f"cannot embed {self.k} variables at offset {offset} into k={k}")
        pad_l, pad_r = (0,) * offset, (0,) * (k - offset - self.k)
        return LaurentPoly._raw(k, {pad_l + e + pad_r: c for e, c in self._terms.items()})

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"k": self.k, "terms": [{"e": list(e), "c": c} for e, c in self.items()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        k = int(obj["k"])
        return cls(k, {tuple(t["e"]): int(t["c"]) for t in obj["terms"]})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = [f"z{j + 1}" if x == 1 else f"z{j + 1}^{x}" for j, x in enumerate(e) if x]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly(k={self.k}, {self})"


def parse_poly(text: str, k: int) -> LaurentPoly:
    """Parse the text form, e.g. ``"1 - z1 + 2*z1*z2^-1"``.

    Juxtaposition is not accepted; factors must be joined with ``*``.
    """
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly.zero(k)
    terms: dict[MultiIndex, int] = {}
    pos = 0
    token = re.compile(r"([+-]?)((?:\d+|z\d+(?:\^-?\d+)?)(?:\*(?:\d+|z\d+(?:\^-?\d+)?))*)")
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        coeff = -1 if m.group(1) == "-" else 1
        e = [0] * k
        for f in m.group(2).split("*"):
            if f.startswith("z"):
                name, _, p = f[1:].partition("^")
                i = int(name)
                if not 1 <= i <= k:
                    raise ContextMismatch(f"z{i} not in a ring with k={k}")
                e[i - 1] += int(p) if p else 1
            else:
                coeff *= int(f)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
    return LaurentPoly(k, terms)


def random_poly(
    rng: random.Random, k: int, max_terms: int = 4, max_exp: int = 2, max_coeff: int = 3
) -> LaurentPoly:
    terms: dict[MultiIndex, int] = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(-max_exp, max_exp) for _ in range(k))
        terms[e] = terms.get(e, 0) + rng.randint(-max_coeff, max_coeff)
    return LaurentPoly(k, terms)
