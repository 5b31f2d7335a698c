"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 fixture or
input error.  All JSON output is deterministic for fixed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, fixtures
from .complex import build_t2, build_torus, complex_to_json
from .controlled import (
    ControlError,
    GeometricForm,
    TorusPoint,
    control_realize,
    forget_control,
    radius,
    transfer_permutation,
)
from .forms import (
    DEFAULT_MAX_N,
    AlmostSymmetricForm,
    QuadraticForm,
    ResourceGuard,
    make_alpha,
    make_E8,
    make_psi0,
    make_psi_n,
    signature,
)
from .matrix import RingMatrix
from .transfer import Cover, basis_labels, transfer_form, transfer_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENV = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- (de)serialization of the objects the verbs pass around ------------------


def form_to_json(f: QuadraticForm | AlmostSymmetricForm) -> dict:
    if isinstance(f, QuadraticForm):
        return {"form": "quadratic", "parity": f.parity, "matrix": f.psi.to_json()}
    return {"form": "almost_symmetric", "parity": f.parity, "matrix": f.alpha.to_json()}


def load_input(path: str):
    """Read a form, bare matrix or geometric form from a JSON file ("-" for stdin)."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        obj = json.loads(text)
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc
    if "form" in obj:
        m = RingMatrix.from_json(obj["matrix"])
        parity = int(obj.get("parity", 0)) % 2
        if obj["form"] == "quadratic":
            return QuadraticForm(m, parity)
        if obj["form"] == "almost_symmetric":
            return AlmostSymmetricForm(m, parity)
        raise ValueError(f"unknown form kind {obj['form']!r}")
    if "basis" in obj and "n2" in obj:
        return GeometricForm.from_json(obj)
    return RingMatrix.from_json(obj)


def _matrix_and_parity(obj) -> tuple[RingMatrix, int | None]:
    if isinstance(obj, QuadraticForm):
        return obj.psi, obj.parity
    if isinstance(obj, AlmostSymmetricForm):
        return obj.alpha, obj.parity
    if isinstance(obj, RingMatrix):
        return obj, None
    raise ValueError("expected a matrix or a form")


def emit(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- verbs --------------------------------------------------------------------


def cmd_construct(args) -> int:
    kind = args.kind
    limit = None if args.allow_large else DEFAULT_MAX_N
    if kind == "psi0":
        obj = form_to_json(make_psi0())
    elif kind == "e8":
        obj = make_E8().to_json()
    elif kind == "alpha":
        n = args.n if args.n is not None else 1
        i = args.i if args.i is not None else 1
        if not 1 <= i <= n:
            raise UsageError(f"--i must lie in 1..{n}")
        obj = form_to_json(make_alpha(i, n))
    elif kind == "psi_n":
        if args.n is None:
            raise UsageError("psi_n needs --n")
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        try:
            obj = form_to_json(make_psi_n(args.n, max_n=args.n if limit is None else limit))
        except ResourceGuard as exc:
            raise UsageError(f"{exc}; pass --allow-large to override") from exc
    elif kind == "t2-complex":
        obj = complex_to_json(*build_t2())
    else:  # t2n-complex
        n = args.n if args.n is not None else 1
        if n < 1:
            raise UsageError("--n must be positive")
        if limit is not None and n > limit:
            raise UsageError(f"n={n} exceeds {limit}; pass --allow-large to override")
        obj = complex_to_json(build_torus(2 * n))
    if args.text:
        m = obj.get("matrix", obj) if "form" in obj else obj
        if "entries" in m:
            sys.stdout.write(str(RingMatrix.from_json(m)) + "\n")
            return EXIT_OK
    emit(obj, args.out)
    return EXIT_OK


VERIFY_CHECKS = {
    "symmetrize-e8": acceptance.check_symmetrize_e8,
    "signature-e8": acceptance.check_signature_e8,
    "nilpotent-alpha": acceptance.check_alpha_nilpotent,
    "instant-t2": acceptance.check_instant_t2,
    "transfer-example": acceptance.check_transfer_example,
}


def _verify_unimodular(args):
    n = args.n if args.n is not None else 1
    if n < 1:
        raise UsageError("--n must be positive")
    if n >= 2 and not args.expensive:
        raise UsageError("unimodularity for n >= 2 needs --expensive")
    if n > DEFAULT_MAX_N:
        raise UsageError(f"n={n} exceeds {DEFAULT_MAX_N}")
    return acceptance._lambda_unit(n)


def _verify_rank(args):
    ns = (args.n,) if args.n is not None else (1, 2, 3)
    if any(n < 1 or n > DEFAULT_MAX_N for n in ns):
        raise UsageError(f"--n must lie in 1..{DEFAULT_MAX_N}")
    return acceptance.check_psi_n_dims(ns)


def _verify_roundtrip(args):
    k = args.k if args.k is not None else 8
    delta_sq = Fraction(args.delta_sq) if args.delta_sq else Fraction(1, 16)
    psi = make_psi_n(1).psi
    g = control_realize(psi, k)
    back = forget_control(g, delta_sq)
    expect = transfer_matrix(psi, Cover.uniform(k, psi.k)).permute(transfer_permutation(g))
    ok = back == expect
    return ok, f"k={k}, delta^2={delta_sq}, radius^2={radius(g)}; forget == transfer: {ok}"


def cmd_verify(args) -> int:
    check = args.check
    if check in VERIFY_CHECKS:
        passed, detail = VERIFY_CHECKS[check]()
    elif check == "unimodular-lambda":
        passed, detail = _verify_unimodular(args)
    elif check == "rank":
        passed, detail = _verify_rank(args)
    else:  # roundtrip-control
        passed, detail = _verify_roundtrip(args)
    print(f"[{'PASS' if passed else 'FAIL'}] {check}: {detail}")
    emit({"check": check, "passed": passed, "detail": detail}, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_transfer(args) -> int:
    cover = Cover.parse(args.k)
    obj = load_input(args.input)
    m, parity = _matrix_and_parity(obj)
    if isinstance(obj, (QuadraticForm, AlmostSymmetricForm)):
        t, _ = _matrix_and_parity(transfer_form(obj, cover))
    else:
        t = transfer_matrix(m, cover)
    out = t.to_json()
    if parity is not None:
        out["parity"] = parity
    out["cover"] = list(cover.multipliers)
    out["basis"] = basis_labels(cover, m.rows)
    emit(out, args.out)
    return EXIT_OK


def _parse_points(text: str | None):
    if text is None:
        return None
    pts = [TorusPoint.wrap([Fraction(x) for x in p.split(",")]) for p in text.split(";")]
    return pts[0] if len(pts) == 1 else pts


def cmd_control(args) -> int:
    obj = load_input(args.input)
    m, parity = _matrix_and_parity(obj)
    g = control_realize(m, args.k, _parse_points(args.x0), parity or 0)
    emit(g.to_json(), args.out)
    return EXIT_OK


def _geometric(path: str) -> GeometricForm:
    obj = load_input(path)
    if not isinstance(obj, GeometricForm):
        raise ValueError("expected a geometric form (output of `control`)")
    return obj


def cmd_forget(args) -> int:
    g = _geometric(args.input)
    m = forget_control(g, Fraction(args.delta_sq))
    out = m.to_json()
    out["parity"] = g.parity
    out["basis"] = [{"g": list(gg), "i": i} for gg, i in g.labels]
    emit(out, args.out)
    return EXIT_OK


def cmd_radius(args) -> int:
    g = _geometric(args.input)
    r = radius(g)
    emit({"radius_sq": str(r), "k": g.k, "size": g.size}, args.out)
    return EXIT_OK


def cmd_signature(args) -> int:
    if args.input:
        obj = load_input(args.input)
        m, _ = _matrix_and_parity(obj)
        if isinstance(obj, QuadraticForm):
            m = obj.symmetrize()
    else:
        m = fixtures.matrix("e8")
    if m.k and not args.augment:
        raise UsageError("matrix has Laurent entries; pass --augment to evaluate at z = 1")
    emit({"signature": signature(m.augment() if m.k else m)}, args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run_all(expensive=args.expensive)
    if args.json:
        emit([r.to_json() for r in results], args.out)
    else:
        width = max(len(r.citation) for r in results)
        for r in results:
            verdict = "PASS" if r.ok else "FAIL"
            budget = acceptance._fmt_time(r.budget) if r.budget is not None else "-"
            print(f"{r.id:<4} {verdict:<5} {acceptance._fmt_time(r.elapsed):>9} / {budget:<8} "
                  f"{r.citation:<{width}}  {r.title}")
            if not r.ok:
                print(f"       {r.detail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surgery-forms",
                                description="Exact quadratic forms over Laurent polynomial rings.")
    sub = p.add_subparsers(dest="verb", required=True)

    def out(sp):
        sp.add_argument("--out", help="write JSON here instead of stdout")

    c = sub.add_parser("construct", help="emit a named object as JSON")
    c.add_argument("kind", choices=["psi0", "e8", "alpha", "psi_n", "t2-complex", "t2n-complex"])
    c.add_argument("--n", type=int)
    c.add_argument("--i", type=int)
    c.add_argument("--allow-large", action="store_true")
    c.add_argument("--text", action="store_true", help="print the matrix as text")
    out(c)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run one certificate")
    v.add_argument("check", choices=sorted([*VERIFY_CHECKS, "unimodular-lambda", "rank",
                                            "roundtrip-control"]))
    v.add_argument("--n", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--delta-sq")
    v.add_argument("--expensive", action="store_true")
    out(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transfer", help="restrict scalars along a diagonal cover")
    t.add_argument("--k", required=True, help="cover multipliers, e.g. 2,1")
    t.add_argument("--input", required=True)
    out(t)
    t.set_defaults(func=cmd_transfer)

    ct = sub.add_parser("control", help="realize a form over the k-fold covering torus")
    ct.add_argument("--k", type=int, required=True)
    ct.add_argument("--x0", help="base point 'a,b' or one per generator separated by ';'")
    ct.add_argument("--input", required=True)
    out(ct)
    ct.set_defaults(func=cmd_control)

    f = sub.add_parser("forget", help="forget control of a geometric form")
    f.add_argument("--delta-sq", required=True)
    f.add_argument("--input", required=True)
    out(f)
    f.set_defaults(func=cmd_forget)

    r = sub.add_parser("radius", help="squared radius of a geometric form")
    r.add_argument("--input", required=True)
    out(r)
    r.set_defaults(func=cmd_radius)

    s = sub.add_parser("signature", help="signature of an integer symmetric matrix (default E8)")
    s.add_argument("--input")
    s.add_argument("--augment", action="store_true")
    out(s)
    s.set_defaults(func=cmd_signature)

    st = sub.add_parser("selftest", help="run every acceptance criterion")
    st.add_argument("--json", action="store_true")
    st.add_argument("--expensive", action="store_true")
    out(st)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"surgery-forms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (fixtures.FixtureError, FileNotFoundError) as exc:
        print(f"surgery-forms: {exc}", file=sys.stderr)
        return EXIT_ENV
    except (ValueError, KeyError, TypeError, IndexError, ControlError) as exc:
        print(f"surgery-forms: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
