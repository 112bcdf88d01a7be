"""Command-line front end.

Subcommands: lp, radical, cullis-det, cullis-absign, verify-pair,
extract-trad, selftest.  Payload flags accept inline text or "@path" to read
a file.  Every report ends with a VERDICT line; exit codes are 0 for
verified/holds outcomes, 1 for fails/refuted, 2 for usage errors and 3 for
undecidable/cap-exceeded results.  All randomness flows from one seed with a
fixed default, so reports are byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import dataclass, field as dc_field

from .errors import (InconsistencyError, LinearityError, ParseError,
                     PreconditionError, UndecidableError)
from .field import GF, QQ, parse_field
from .gradspace import DEFAULT_SEED, gradient_span_symbolic
from .linalg import Matrix, parse_matrix
from .poly import MultiPoly, parse_poly
from .preserver import (DEFAULT_TRIPLE_CAP, VectorMap, check_pair,
                        extract_quotient_map, preserves)
from .radical import DEFAULT_ENUM_CAP, compute_radical
from . import cullis as cu
from .cullis import CullisContext, ab_sign_condition, cullis_det, equal_rows_space

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDABLE = 3


@dataclass
class JobConfig:
    """One CLI invocation: exactly one command plus its payloads and knobs."""

    command: str
    field: str = "GF(5)"
    nvars: int = 0
    poly: str = ""
    matrix: str = ""
    a_matrix: str = ""
    b_matrix: str = ""
    phi: str = ""
    psi: str = ""
    mode: str = "auto"
    cap: int = DEFAULT_TRIPLE_CAP
    enum_cap: int = DEFAULT_ENUM_CAP
    samples: int = 500
    seed: int = DEFAULT_SEED
    extras: dict = dc_field(default_factory=dict)


def _payload(text: str) -> str:
    """Resolve the "@path" convention."""
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_map(text: str, nvars: int, spec) -> VectorMap:
    """Parse a map file: first line declares the form.

    table rows are "input -> output"; polymap lines are
    "coordinate i: <poly in x1..xn>"; linear declares "matrix: ...".
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty map description")
    form = lines[0].lower()
    body = lines[1:]
    if form == "linear":
        if not body or not body[0].lower().startswith("matrix:"):
            raise ParseError("linear form needs a 'matrix:' line")
        return VectorMap.linear(parse_matrix(body[0].split(":", 1)[1], spec))
    if form == "polymap":
        comps = [None] * nvars
        for ln in body:
            head, _, rhs = ln.partition(":")
            head = head.replace("coordinate", "").strip()
            if not head.isdigit():
                raise ParseError("bad polymap line %r" % ln)
            idx = int(head) - 1
            if not 0 <= idx < nvars:
                raise ParseError("coordinate %s out of range" % head)
            comps[idx] = parse_poly(rhs.strip(), nvars, spec)
        if any(c is None for c in comps):
            raise ParseError("polymap must define all %d coordinates" % nvars)
        return VectorMap.polymap(comps)
    if form == "table":
        mapping = {}
        for ln in body:
            left, sep, right = ln.partition("->")
            if not sep:
                left, sep, right = ln.partition("→")
            if not sep:
                raise ParseError("bad table line %r" % ln)
            key = parse_matrix(left.strip(), spec).rows[0]
            val = parse_matrix(right.strip(), spec).rows[0]
            if len(key) != nvars or len(val) != nvars:
                raise ParseError("table vectors must have length %d" % nvars)
            mapping[key] = val
        return VectorMap.table(spec, nvars, mapping)
    raise ParseError("unknown map form %r" % form)


def _format_rows(matrix: Matrix) -> list:
    return ["  " + ",".join(str(x) for x in row) for row in matrix.rows]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, list of report lines)


def _cmd_lp(cfg: JobConfig):
    spec = parse_field(cfg.field)
    P = parse_poly(_payload(cfg.poly), cfg.nvars, spec)
    basis = gradient_span_symbolic(P, seed=cfg.seed)
    lines = ["command: lp", "field: %s" % spec, "poly: %s" % P,
             "dim(L_P) = %d" % basis.dim, "basis rows:"]
    lines += _format_rows(basis.subspace.basis) or ["  (none)"]
    lines.append("witness points:")
    lines += ["  " + ",".join(str(x) for x in w) for w in basis.witnesses] or ["  (none)"]
    lines.append("VERDICT: ok")
    return EXIT_OK, lines


def _cmd_radical(cfg: JobConfig):
    spec = parse_field(cfg.field)
    P = parse_poly(_payload(cfg.poly), cfg.nvars, spec)
    report = compute_radical(P, member_cap=cfg.cap, enum_cap=cfg.enum_cap,
                             seed=cfg.seed)
    lines = ["command: radical", "field: %s" % spec, "poly: %s" % P,
             "method: %s" % report.method,
             "dim(L_P) = %d" % report.span.dim,
             "rad dim = %d" % report.radical.dim,
             "rad basis rows:"]
    lines += _format_rows(report.radical.basis) or ["  (none)"]
    lines.append("dim-condition: %s"
                 % ("holds" if report.dim_condition_holds else "fails"))
    if report.inconclusive:
        lines.append("note: enumeration cap exceeded; radical shown is the "
                     "verified subspace so far")
        lines.append("VERDICT: inconclusive")
        return EXIT_UNDECIDABLE, lines
    lines.append("VERDICT: ok")
    return EXIT_OK, lines


def _cmd_cullis_det(cfg: JobConfig):
    spec = parse_field(cfg.field)
    X = parse_matrix(_payload(cfg.matrix), spec)
    ctx = CullisContext(X.nrows, X.ncols, spec)
    value = cullis_det(ctx, X)
    lines = ["command: cullis-det", "field: %s" % spec,
             "shape: %dx%d (%s parity)" % (ctx.n, ctx.k, ctx.parity),
             "det = %s" % value, "VERDICT: ok"]
    return EXIT_OK, lines


def _cmd_cullis_absign(cfg: JobConfig):
    spec = parse_field(cfg.field)
    A = parse_matrix(_payload(cfg.a_matrix), spec)
    B = parse_matrix(_payload(cfg.b_matrix), spec)
    if A.nrows != A.ncols or B.nrows != B.ncols or A.nrows < B.nrows:
        raise ParseError("need square A (n x n) and B (k x k) with n >= k")
    ctx = CullisContext(A.nrows, B.nrows, spec)
    ok = ab_sign_condition(ctx, A, B)
    lines = ["command: cullis-absign", "field: %s" % spec,
             "shape: n=%d k=%d" % (ctx.n, ctx.k),
             "VERDICT: %s" % ("holds" if ok else "fails")]
    return EXIT_OK if ok else EXIT_FAIL, lines


def _cmd_verify_pair(cfg: JobConfig):
    spec = parse_field(cfg.field)
    P = parse_poly(_payload(cfg.poly), cfg.nvars, spec)
    phi = parse_map(_payload(cfg.phi), cfg.nvars, spec)
    psi = parse_map(_payload(cfg.psi), cfg.nvars, spec)
    result = check_pair(P, phi, psi, mode=cfg.mode, cap=cfg.cap,
                        samples=cfg.samples, seed=cfg.seed)
    lines = ["command: verify-pair", "field: %s" % spec, "poly: %s" % P,
             "mode: %s" % result.mode,
             "exact: %s" % ("yes" if result.exact else "no")]
    homogeneous, _ = P.is_homogeneous()
    if result.passed and not homogeneous:
        lines.append("warning: P is not homogeneous; quotient-map "
                     "extraction would refuse this input")
    if result.witness is not None:
        x, y, lam = result.witness
        lines.append("witness: x=%s y=%s t=%s"
                     % (",".join(map(str, x)), ",".join(map(str, y)), lam))
    lines.append("VERDICT: %s" % result.verdict)
    return (EXIT_OK if result.passed else EXIT_FAIL), lines


def _cmd_extract_trad(cfg: JobConfig):
    spec = parse_field(cfg.field)
    P = parse_poly(_payload(cfg.poly), cfg.nvars, spec)
    phi = parse_map(_payload(cfg.phi), cfg.nvars, spec)
    psi = parse_map(_payload(cfg.psi), cfg.nvars, spec)
    lines = ["command: extract-trad", "field: %s" % spec, "poly: %s" % P]
    try:
        result = extract_quotient_map(P, phi, psi, mode=cfg.mode,
                                      cap=cfg.cap, seed=cfg.seed)
    except PreconditionError as exc:
        lines.append("refused: %s" % exc)
        lines.append("VERDICT: refused")
        return EXIT_FAIL, lines
    except LinearityError as exc:
        lines.append("refused: %s" % exc)
        lines.append("VERDICT: refused")
        return EXIT_FAIL, lines
    rec = result.verified
    lines += ["rad dim = %d" % result.report.radical.dim,
              "quotient dim = %d" % result.quotient_matrix.nrows,
              "T_rad rows:"]
    lines += _format_rows(result.quotient_matrix) or ["  (0x0)"]
    lines += ["verified: linear=%s invertible=%s intertwines=%s "
              "preserves-induced=%s unique=%s"
              % (rec.linear, rec.invertible, rec.intertwines,
                 rec.preserves_induced, rec.unique)]
    ok = rec.all_passed()
    lines.append("VERDICT: %s" % ("holds" if ok else "fails"))
    return (EXIT_OK if ok else EXIT_FAIL), lines


# ---------------------------------------------------------------------------
# selftest: the acceptance suite at reduced sizes


def _selftest_checks(spec, seed):
    rng = random.Random(seed)
    q = spec.order

    def rand_matrix(s, rows, cols):
        if s.is_finite:
            return Matrix(s, [[rng.randrange(s.order) for _ in range(cols)]
                              for _ in range(rows)])
        return Matrix(s, [[rng.randint(-9, 9) for _ in range(cols)]
                          for _ in range(rows)])

    def perm_det(mat):
        n = mat.nrows
        acc = mat.spec.zero()
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for a in range(n) for b in range(a + 1, n)
                      if perm[a] > perm[b])
            term = mat.spec.one()
            for i in range(n):
                term = term * mat[i, perm[i]]
            acc = acc + term if inv % 2 == 0 else acc - term
        return acc

    def check_square_dets():
        for s in (spec, QQ):
            for n in (2, 3, 4):
                ctx = CullisContext(n, n, s)
                for _ in range(5):
                    m = rand_matrix(s, n, n)
                    if cullis_det(ctx, m) != perm_det(m):
                        return False
        return True

    def check_column_properties():
        ctx = CullisContext(4, 3, spec)
        for _ in range(10):
            m = rand_matrix(spec, 4, 3)
            d = cullis_det(ctx, m)
            swapped = Matrix(spec, [[row[1], row[0], row[2]] for row in m.rows])
            if cullis_det(ctx, swapped) != -d:
                return False
            dup = Matrix(spec, [[row[0], row[0], row[2]] for row in m.rows])
            if not cullis_det(ctx, dup).is_zero():
                return False
            for col in (1, 2, 3):
                if cu.cullis_laplace(ctx, m, col) != d:
                    return False
        return True

    def check_normal_forms():
        ctx = CullisContext(5, 3, spec)
        for _ in range(5):
            xs = [spec.from_int(rng.randrange(max(q, 9))) for _ in range(5)]
            rows = [[xs[0], 0, 0], [xs[1], 1, 1], [xs[2], 0, 1],
                    [xs[3], 0, 1], [xs[4], 0, 1]]
            if cullis_det(ctx, Matrix(spec, rows)) != xs[0]:
                return False
        ctx = CullisContext(4, 3, spec)
        for _ in range(5):
            xs = [spec.from_int(rng.randrange(max(q, 9))) for _ in range(4)]
            rows = [[xs[0], 0, 0], [xs[1], 0, 0], [xs[2], 1, 1], [xs[3], 0, 1]]
            if cullis_det(ctx, Matrix(spec, rows)) != xs[0] - xs[1]:
                return False
        return True

    def check_shift_maps():
        f3 = GF(3)
        ctx31 = CullisContext(3, 1, f3)
        for i in (1, 2, 3):
            smap = cu.shift_map(ctx31, i, 1)
            for cells in itertools.product(range(3), repeat=3):
                m = Matrix(f3, [[c] for c in cells])
                img = ctx31.unflatten(smap(ctx31.flatten(m)))
                if cullis_det(ctx31, img) != cullis_det(ctx31, m):
                    return False
        ctx = CullisContext(4, 3, spec)
        for i in (1, 3):
            for j in (1, 2):
                smap = cu.shift_map(ctx, i, j)
                for _ in range(5):
                    m = rand_matrix(spec, 4, 3)
                    img = ctx.unflatten(smap(ctx.flatten(m)))
                    if cullis_det(ctx, img) != cullis_det(ctx, m):
                        return False
        return True

    def check_span_dims():
        even = gradient_span_symbolic(CullisContext(5, 3, spec).as_poly, seed=seed)
        odd = gradient_span_symbolic(CullisContext(4, 3, spec).as_poly, seed=seed)
        return even.dim == 15 and odd.dim == 9

    def check_radicals():
        ctx = CullisContext(4, 3, spec)
        rep = compute_radical(ctx.as_poly, seed=seed)
        if rep.radical != equal_rows_space(ctx).subspace or not rep.dim_condition_holds:
            return False
        rep53 = compute_radical(CullisContext(5, 3, spec).as_poly, seed=seed)
        return rep53.radical.dim == 0 and rep53.dim_condition_holds

    def check_counterexample():
        f5 = GF(5)
        P = parse_poly("x1*(x2 + 1)", 2, f5)
        phi = VectorMap.polymap([parse_poly("3*x1", 2, f5),
                                 parse_poly("2*x2 + 1", 2, f5)])
        psi = VectorMap.polymap([parse_poly("3*x1", 2, f5),
                                 parse_poly("2*x2", 2, f5)])
        if check_pair(P, phi, psi, mode="exhaustive").verdict != "holds":
            return False
        if preserves(P, psi):
            return False
        try:
            extract_quotient_map(P, phi, psi)
            return False
        except PreconditionError:
            return True

    def check_frobenius_power():
        f3 = GF(3)
        P = parse_poly("x1^3", 1, f3)
        rep = compute_radical(P)
        if rep.span.dim != 0 or rep.radical.dim != 0 or rep.dim_condition_holds:
            return False
        ident = VectorMap.identity(f3, 1)
        if not check_pair(P, ident, ident).passed:
            return False
        try:
            extract_quotient_map(P, ident, ident)
            return False
        except PreconditionError:
            return True

    def check_extraction():
        ctx = CullisContext(4, 3, spec)
        P = ctx.as_poly
        nk = 12
        var = lambda i: MultiPoly.variable(spec, nk, i)
        omega = cu.equal_rows_map(ctx, [var(ctx.var_index(0, 0)),
                                        MultiPoly.zero(spec, nk),
                                        var(ctx.var_index(2, 1))])
        tmap = cu.axb_map(ctx, Matrix.identity(spec, 4),
                          Matrix.identity(spec, 3)).add(omega)
        result = extract_quotient_map(P, tmap, tmap, seed=seed)
        return result.verified.all_passed()

    return [("square determinants match the permutation sum", check_square_dets),
            ("column properties and Laplace agreement", check_column_properties),
            ("normal-form patterns", check_normal_forms),
            ("shift maps preserve the determinant", check_shift_maps),
            ("gradient span dimensions 15 and 9", check_span_dims),
            ("radicals: zero (even) and equal-rows (odd)", check_radicals),
            ("inhomogeneous counterexample behaves", check_counterexample),
            ("frobenius power edge case behaves", check_frobenius_power),
            ("quotient-map extraction verifies", check_extraction)]


def _cmd_selftest(cfg: JobConfig):
    spec = parse_field(cfg.field)
    if not spec.is_finite or spec.order <= 3:
        raise ParseError("selftest needs a finite field with more than "
                         "3 elements, got %s" % spec)
    lines = ["command: selftest", "field: %s" % spec, "seed: %d" % cfg.seed]
    failures = 0
    for name, fn in _selftest_checks(spec, cfg.seed):
        try:
            ok = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok = False
            lines.append("FAIL %s (%s)" % (name, exc))
            failures += 1
            continue
        lines.append("%s %s" % ("ok  " if ok else "FAIL", name))
        if not ok:
            failures += 1
    lines.append("VERDICT: %s" % ("ok" if failures == 0 else
                                  "failed (%d checks)" % failures))
    return (EXIT_OK if failures == 0 else EXIT_FAIL), lines


# ---------------------------------------------------------------------------


_HANDLERS = {
    "lp": _cmd_lp,
    "radical": _cmd_radical,
    "cullis-det": _cmd_cullis_det,
    "cullis-absign": _cmd_cullis_absign,
    "verify-pair": _cmd_verify_pair,
    "extract-trad": _cmd_extract_trad,
    "selftest": _cmd_selftest,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyrad", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, poly=False, maps=False):
        p.add_argument("--field", default="GF(5)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--cap", type=int, default=DEFAULT_TRIPLE_CAP)
        p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
        if poly:
            p.add_argument("--nvars", type=int, required=True)
            p.add_argument("--poly", required=True)
        if maps:
            p.add_argument("--phi", required=True)
            p.add_argument("--psi", required=True)
            p.add_argument("--mode", default="auto",
                           choices=["auto", "exhaustive", "symbolic", "sampled"])
            p.add_argument("--samples", type=int, default=500)

    common(sub.add_parser("lp"), poly=True)
    common(sub.add_parser("radical"), poly=True)
    p = sub.add_parser("cullis-det")
    common(p)
    p.add_argument("--matrix", required=True)
    p = sub.add_parser("cullis-absign")
    common(p)
    p.add_argument("--A", dest="a_matrix", required=True)
    p.add_argument("--B", dest="b_matrix", required=True)
    common(sub.add_parser("verify-pair"), poly=True, maps=True)
    common(sub.add_parser("extract-trad"), poly=True, maps=True)
    common(sub.add_parser("selftest"))
    return parser


def run(argv, out=None) -> int:
    """Execute one job; prints the report and returns the exit code."""
    out = out if out is not None else sys.stdout
    try:
        ns = build_parser().parse_args(argv)
    except ParseError as exc:
        print("usage error: %s" % exc, file=out)
        return EXIT_USAGE
    cfg = JobConfig(command=ns.command)
    for name in ("field", "nvars", "poly", "matrix", "a_matrix", "b_matrix",
                 "phi", "psi", "mode", "cap", "enum_cap", "samples", "seed"):
        value = getattr(ns, name, None)
        if value is not None:
            setattr(cfg, name, value)
    try:
        code, lines = _HANDLERS[cfg.command](cfg)
    except (ParseError, ValueError, OSError) as exc:
        print("usage error: %s" % exc, file=out)
        return EXIT_USAGE
    except UndecidableError as exc:
        print("undecidable: %s" % exc, file=out)
        print("VERDICT: undecidable", file=out)
        return EXIT_UNDECIDABLE
    except (LinearityError, InconsistencyError) as exc:
        print("refuted: %s" % exc, file=out)
        print("VERDICT: fails", file=out)
        return EXIT_FAIL
    for line in lines:
        print(line, file=out)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
