"""Executable exit criteria, shared by ``surgery-forms selftest`` and the test suite.

Each criterion returns ``(passed, detail)``.  Timing budgets are checked
against the best of a few runs for the millisecond-scale checks and a single
run otherwise.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from . import fixtures
from .complex import build_t2, build_torus, instant_form_iso
from .controlled import control_realize, forget_control, radius, transfer_permutation
from .forms import (
    AlmostSymmetricForm,
    QuadraticForm,
    lambda_of,
    make_alpha,
    make_psi0,
    make_psi_n,
    mu_of,
    nilpotency_check,
    q_reduce,
    quad_almost_product,
    signature,
    symmetrize,
    witness_sublagrangian_check,
)
from .matrix import RingMatrix, bareiss_det, integer_det, kronecker, mat_mul
from .oracles import cofactor_det, kron_by_index
from .ring import LaurentPoly, random_poly
from .transfer import Cover, composition_permutation, transfer_form, transfer_matrix, transfer_poly

SEED = 20240917
CASES = 200


@dataclass
class Criterion:
    id: str
    title: str
    citation: str
    budget: float | None
    check: Callable[[], tuple[bool, str]]
    repeat: int = 1
    expensive: bool = False


@dataclass
class Result:
    id: str
    title: str
    citation: str
    passed: bool
    detail: str
    elapsed: float
    budget: float | None

    @property
    def within_budget(self) -> bool:
        return self.budget is None or self.elapsed < self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        budget = f"< {_fmt_time(self.budget)}" if self.budget is not None else "no bound"
        return (f"[{verdict}] {self.id:<4} {self.title} ({_fmt_time(self.elapsed)}, {budget})"
                f" -- {self.detail}")

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "citation": self.citation,
                "passed": self.passed, "within_budget": self.within_budget, "ok": self.ok,
                "elapsed_s": self.elapsed, "budget_s": self.budget, "detail": self.detail}


def _fmt_time(t: float) -> str:
    if t < 1e-3:
        return f"{t * 1e6:.0f} us"
    if t < 1:
        return f"{t * 1e3:.1f} ms"
    return f"{t:.2f} s"


def run(c: Criterion) -> Result:
    best = None
    outcome = (False, "not run")
    for _ in range(max(1, c.repeat)):
        t0 = time.perf_counter()
        try:
            outcome = c.check()
        except Exception as exc:  # report, don't crash the table
            outcome = (False, f"{type(exc).__name__}: {exc}")
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
        if not outcome[0]:
            break
    return Result(c.id, c.title, c.citation, outcome[0], outcome[1], best, c.budget)


# -- individual criteria ------------------------------------------------------


def check_symmetrize_e8() -> tuple[bool, str]:
    lam = symmetrize(make_psi0())
    ok = lam == fixtures.matrix("e8")
    return ok, "psi0 + psi0^* equals the transcribed E8" if ok else "mismatch with transcribed E8"


def check_signature_e8() -> tuple[bool, str]:
    s = signature(fixtures.matrix("e8"))
    return s == 8, f"signature = {s}"


def check_alpha_nilpotent() -> tuple[bool, str]:
    a = make_alpha(1, 1)
    d = bareiss_det(a.alpha)
    n = nilpotency_check(a)
    beta_ok = a.beta() == fixtures.matrix("beta_t2")
    ok = d == LaurentPoly.constant(1, 2) and n == 2 and beta_ok and a.alpha == fixtures.matrix("alpha_t2")
    return ok, f"det = {d}, nilpotency degree {n}, beta matches transcribed: {beta_ok}"


def check_instant_t2() -> tuple[bool, str]:
    c, s = build_t2()
    f = instant_form_iso(c, s, 1)
    ok = f.alpha == fixtures.matrix("alpha_t2") and f.parity == 1
    return ok, "phi0 + d phi1 equals the transcribed alpha" if ok else f"got\n{f.alpha}"


def check_psi_n_dims(ns=(1, 2, 3)) -> tuple[bool, str]:
    dims = []
    for n in ns:
        f = make_psi_n(n)
        k = 2 * n
        oracle = kron_by_index([make_psi0().psi.embed(k)] + [make_alpha(i, n).alpha for i in range(1, n + 1)])
        if f.psi.shape != (2 ** (n + 3),) * 2 or f.psi != oracle or f.parity != n % 2:
            return False, f"n={n}: shape {f.psi.shape} or entries/parity disagree with index-law oracle"
        g = QuadraticForm(make_psi0().psi.embed(k), 0)
        for i in range(1, n + 1):
            g = quad_almost_product(g, make_alpha(i, n))
        if g != f:
            return False, f"n={n}: iterated product differs"
        dims.append(f.psi.rows)
    return True, f"dimensions {dims}"


def _lambda_unit(n: int) -> tuple[bool, str]:
    f = make_psi_n(n)
    lam = symmetrize(f)
    d = bareiss_det(lam)
    aug = integer_det(lam.augment())
    ok = d.is_unit() and abs(aug) == 1 and d.augment() == aug
    return ok, f"det(lambda_{n}) = {d}, det(augment) = {aug}"


def check_unimodular_lambda1() -> tuple[bool, str]:
    return _lambda_unit(1)


def check_unimodular_lambda2() -> tuple[bool, str]:
    return _lambda_unit(2)


def check_transfer_example() -> tuple[bool, str]:
    cover = Cover(fixtures.value("transfer", "cover"))
    perm = fixtures.value("transfer", "basis_permutation")
    a = AlmostSymmetricForm(fixtures.matrix("alpha_t2"), 1)
    t = transfer_form(a, cover)
    transcribed = fixtures.matrix("transfer", "alpha")
    eq = t.alpha.permute(perm) == transcribed
    rep = witness_sublagrangian_check(
        t, fixtures.matrix("transfer", "i"), fixtures.matrix("transfer", "j"),
        fixtures.matrix("transfer", "cowitness"), fixtures.matrix("transfer", "jaj"))
    ok = eq and bool(rep)
    detail = f"transfer matches transcribed 4x4: {eq}; witness conditions " \
             f"{[rep.columns_match, rep.restricted_form_matches, rep.isotropic, rep.split]}"
    return ok, detail


_ROUNDTRIP: dict = {}


def _realized():
    if "g" not in _ROUNDTRIP:
        psi = make_psi_n(1).psi
        _ROUNDTRIP["psi"] = psi
        _ROUNDTRIP["g"] = control_realize(psi, 8)
    return _ROUNDTRIP["psi"], _ROUNDTRIP["g"]


def check_roundtrip() -> tuple[bool, str]:
    _ROUNDTRIP.clear()
    psi, g = _realized()
    back = forget_control(g, Fraction(1, 16))
    expect = transfer_matrix(psi, Cover([8, 8]))
    ok = back == expect.permute(transfer_permutation(g))
    return ok, f"{g.size} basis points, {len(g.entries)} entries; forget == transfer: {ok}"


def check_radius_bound() -> tuple[bool, str]:
    _, g = _realized()
    r = radius(g)
    bound = 2 * Fraction(1, 8) ** 2
    return r <= bound, f"radius^2 = {r} <= {bound}"


# -- property suites ----------------------------------------------------------


def _rand_matrix(rng: random.Random, rows: int, cols: int, k: int, **kw) -> RingMatrix:
    return RingMatrix(k, [[random_poly(rng, k, **kw) for _ in range(cols)] for _ in range(rows)])


def prop_involution(rng: random.Random) -> bool:
    k = rng.randint(0, 3)
    a, b = random_poly(rng, k), random_poly(rng, k)
    return (a.involute().involute() == a
            and (a + b).involute() == a.involute() + b.involute()
            and (a * b).involute() == b.involute() * a.involute()
            and a.involute().augment() == a.augment())


def prop_kronecker(rng: random.Random) -> bool:
    k = rng.randint(0, 2)
    p, q, s, t = (rng.randint(1, 2) for _ in range(4))
    u, v = rng.randint(1, 2), rng.randint(1, 2)
    kw = dict(max_terms=2, max_exp=1)
    a, c = _rand_matrix(rng, p, q, k, **kw), _rand_matrix(rng, q, u, k, **kw)
    b, d = _rand_matrix(rng, s, t, k, **kw), _rand_matrix(rng, t, v, k, **kw)
    mixed = mat_mul(kronecker(a, b), kronecker(c, d)) == kronecker(mat_mul(a, c), mat_mul(b, d))
    star = kronecker(a, b).conj_transpose() == kronecker(a.conj_transpose(), b.conj_transpose())
    return mixed and star


def prop_bareiss(rng: random.Random) -> bool:
    n, k = rng.randint(1, 4), rng.randint(0, 2)
    m = _rand_matrix(rng, n, n, k, max_terms=2, max_exp=1)
    return bareiss_det(m) == cofactor_det(m)


def prop_q_reduce(rng: random.Random) -> bool:
    k, parity = rng.randint(0, 3), rng.randint(0, 1)
    a, b = random_poly(rng, k), random_poly(rng, k)
    rel = a + (a.involute() if parity else -a.involute())
    qa = q_reduce(a, parity)
    return (q_reduce(qa.rep, parity) == qa
            and q_reduce(rel, parity).is_zero()
            and q_reduce(b + rel, parity) == q_reduce(b, parity)
            and q_reduce(a + b, parity) == qa + q_reduce(b, parity))


_PSI1: dict = {}


def prop_wall_axioms(rng: random.Random) -> bool:
    if "f" not in _PSI1:
        _PSI1["f"] = make_psi_n(1)
        _PSI1["lam"] = symmetrize(_PSI1["f"])
    f = _PSI1["f"]
    k, r, sgn = f.k, f.dim, -1 if f.parity else 1
    kw = dict(max_terms=2, max_exp=1, max_coeff=2)
    x = [random_poly(rng, k, **kw) for _ in range(r)]
    y = [random_poly(rng, k, **kw) for _ in range(r)]
    a = random_poly(rng, k, **kw)
    mx, my = mu_of(f, x), mu_of(f, y)
    lxx = lambda_of(f, x, x)
    ax1 = lxx == mx.rep + mx.rep.involute().scale(sgn)
    ax2 = mu_of(f, [u + v for u, v in zip(x, y)]) == mx + my + q_reduce(lambda_of(f, x, y), f.parity)
    ax3 = mu_of(f, [a * u for u in x]) == q_reduce(a * mx.rep * a.involute(), f.parity)
    return ax1 and ax2 and ax3


def prop_transfer_hom(rng: random.Random) -> bool:
    k = rng.randint(1, 2)
    cover = Cover([rng.randint(1, 3) for _ in range(k)])
    a, b = random_poly(rng, k), random_poly(rng, k)
    ta, tb = transfer_poly(a, cover), transfer_poly(b, cover)
    return (transfer_poly(a + b, cover) == ta + tb
            and transfer_poly(a * b, cover) == mat_mul(ta, tb)
            and transfer_poly(LaurentPoly.constant(1, k), cover) == RingMatrix.identity(cover.index, k))


def prop_cover_composition(rng: random.Random) -> bool:
    k1 = k2 = Cover([2, 1])
    r = rng.randint(1, 2)
    a = _rand_matrix(rng, r, r, 2, max_terms=3, max_exp=3)
    iterated = transfer_matrix(transfer_matrix(a, k1), k2)
    direct = transfer_matrix(a, k1.compose(k2))
    return iterated == direct.permute(composition_permutation(k1, k2, r))


def prop_torus_ranks(rng: random.Random) -> bool:
    n = rng.randint(1, 3)
    return list(_torus(2 * n).ranks) == [comb(2 * n, r) for r in range(2 * n + 1)]


_TORI: dict = {}


def _torus(m: int):
    if m not in _TORI:
        _TORI[m] = build_torus(m)
    return _TORI[m]


PROPERTIES: dict[str, Callable[[random.Random], bool]] = {
    "involution laws": prop_involution,
    "Kronecker mixed-product and conj-transpose": prop_kronecker,
    "Bareiss = cofactor (n <= 4)": prop_bareiss,
    "q_reduce idempotent, kills relations": prop_q_reduce,
    "quadratic-function axioms on psi_1": prop_wall_axioms,
    "transfer_poly ring homomorphism": prop_transfer_hom,
    "cover composition up to permutation": prop_cover_composition,
    "torus rank law c_r = C(2n, r)": prop_torus_ranks,
}


def run_property(name: str, cases: int = CASES, seed: int = SEED) -> tuple[bool, str]:
    rng = random.Random(f"{seed}:{name}")
    fn = PROPERTIES[name]
    for i in range(cases):
        if not fn(rng):
            return False, f"{name}: counterexample at case {i}"
    return True, f"{name}: {cases} cases"


def check_properties() -> tuple[bool, str]:
    failed = []
    for name in PROPERTIES:
        ok, _ = run_property(name)
        if not ok:
            failed.append(name)
    if failed:
        return False, f"failed: {failed}"
    return True, f"{len(PROPERTIES)} suites x {CASES} cases"


CRITERIA: list[Criterion] = [
    Criterion("1", "psi0 + psi0^* = E8", "psi_0 and E_8 displays", 1e-3, check_symmetrize_e8, repeat=5),
    Criterion("2", "signature(E8) = 8", "E_8 form of signature 8", 1e-3, check_signature_e8, repeat=5),
    Criterion("3", "det alpha = 1, beta^2 = 0, beta as transcribed", "T^2 almost symmetric form",
              10e-3, check_alpha_nilpotent, repeat=3),
    Criterion("4", "instant form of T^2 = alpha", "T^2 Poincare duality diagram", 10e-3,
              check_instant_t2, repeat=3),
    Criterion("5", "psi_n rank 2^{n+3}, n = 1..3, equals iterated product", "explicit form theorem",
              5.0, check_psi_n_dims),
    Criterion("6", "lambda_1 unimodular", "nonsingularity of lambda", 60.0, check_unimodular_lambda1),
    Criterion("6x", "lambda_2 unimodular", "nonsingularity of lambda", None, check_unimodular_lambda2,
              expensive=True),
    Criterion("7", "transfer example under k = (2,1)", "double cover transfer example", 50e-3,
              check_transfer_example, repeat=3),
    Criterion("8", "forget(realize(psi_1)) = p^!(psi_1), k = 8", "controlled E8 x T^2", 30.0,
              check_roundtrip),
    Criterion("9", "radius^2 <= 2 (1/8)^2", "k > 2|psi|/delta", None, check_radius_bound),
    Criterion("10", "property suites", "algebraic laws", 120.0, check_properties),
]


def run_all(expensive: bool = False) -> list[Result]:
    return [run(c) for c in CRITERIA if expensive or not c.expensive]
