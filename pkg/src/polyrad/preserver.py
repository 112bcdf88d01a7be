"""Verification of the two-variable preserver condition
P(x + t y) = P(phi(x) + t psi(y)) and extraction of the induced map on the
quotient by the radical.

Symbolic checks compare canonical polynomials in the joint variables
(x, y, t).  Equal polynomials always certify the condition; an unequal pair
certifies failure only when the per-variable degrees stay below the field
size, since over a small field a nonzero polynomial can still vanish as a
function.  Verdicts are labeled accordingly and never silently conflate the
two notions: a pass established only through the sufficient direction is
reported as "sufficient-only-pass", and a symbolic failure outside the exact
regime falls back to exhaustive evaluation or raises.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .errors import (FieldMismatchError, LinearityError, PreconditionError,
                     UndecidableError)
from .gradspace import DEFAULT_SEED, GradientBasis
from .linalg import Matrix, dual_extend, rref
from .poly import MultiPoly
from .radical import RadicalReport, compute_radical

DEFAULT_TRIPLE_CAP = 10 ** 7
DEFAULT_SAMPLES = 500

HOLDS = "holds"
FAILS = "fails"
SUFFICIENT_ONLY = "sufficient-only-pass"


class VectorMap:
    """A map F^n -> F^n in one of three forms: an explicit lookup table
    (finite fields only), a polynomial map, or a linear map given by its
    matrix."""

    __slots__ = ("form", "spec", "n", "matrix", "components", "mapping")

    def __init__(self, form, spec, n, matrix=None, components=None, mapping=None):
        self.form = form
        self.spec = spec
        self.n = n
        self.matrix = matrix
        self.components = components
        self.mapping = mapping

    # -- constructors ---------------------------------------------------------

    @classmethod
    def linear(cls, matrix: Matrix) -> "VectorMap":
        if matrix.nrows != matrix.ncols:
            raise ValueError("a linear self-map needs a square matrix")
        return cls("linear", matrix.spec, matrix.nrows, matrix=matrix)

    @classmethod
    def polymap(cls, components) -> "VectorMap":
        components = tuple(components)
        if not components:
            raise ValueError("polymap needs at least one component")
        spec = components[0].spec
        n = len(components)
        for c in components:
            if c.spec != spec:
                raise FieldMismatchError("polymap components over mixed fields")
            if c.nvars != n:
                raise ValueError("component in %d variables, expected %d"
                                 % (c.nvars, n))
        return cls("polymap", spec, n, components=components)

    @classmethod
    def table(cls, spec, n, mapping) -> "VectorMap":
        if not spec.is_finite:
            raise ValueError("table maps need a finite field")
        mapping = {tuple(spec.scalar(x) for x in k):
                   tuple(spec.scalar(x) for x in v)
                   for k, v in mapping.items()}
        if len(mapping) != spec.order ** n:
            raise ValueError("table must have exactly |F|^n = %d entries"
                             % spec.order ** n)
        return cls("table", spec, n, mapping=mapping)

    @classmethod
    def identity(cls, spec, n) -> "VectorMap":
        return cls.linear(Matrix.identity(spec, n))

    # -- evaluation and conversion ----------------------------------------------

    def __call__(self, vector):
        vector = tuple(self.spec.scalar(x) for x in vector)
        if self.form == "linear":
            return self.matrix.apply(vector)
        if self.form == "polymap":
            return tuple(c.evaluate(vector) for c in self.components)
        return self.mapping[vector]

    @property
    def symbolic(self) -> bool:
        return self.form in ("linear", "polymap")

    def as_polymap(self) -> "VectorMap":
        if self.form == "polymap":
            return self
        if self.form == "linear":
            comps = []
            for r in range(self.n):
                terms = {}
                for c in range(self.n):
                    entry = self.matrix[r, c]
                    if not entry.is_zero():
                        exps = tuple(1 if j == c else 0 for j in range(self.n))
                        terms[exps] = entry
                comps.append(MultiPoly(self.spec, self.n, terms))
            return VectorMap.polymap(comps)
        raise ValueError("a table map has no polynomial form")

    def to_table(self, cap: int = DEFAULT_TRIPLE_CAP) -> "VectorMap":
        if self.form == "table":
            return self
        if not self.spec.is_finite:
            raise ValueError("cannot tabulate over %s" % self.spec)
        if self.spec.order ** self.n > cap:
            raise UndecidableError("tabulation exceeds the cap")
        mapping = {}
        for point in itertools.product(self.spec.elements(), repeat=self.n):
            mapping[point] = self(point)
        return VectorMap.table(self.spec, self.n, mapping)

    # -- algebra ----------------------------------------------------------------

    def compose(self, inner: "VectorMap") -> "VectorMap":
        """self after inner."""
        if self.spec != inner.spec or self.n != inner.n:
            raise ValueError("cannot compose maps on different spaces")
        if self.form == "linear" and inner.form == "linear":
            return VectorMap.linear(self.matrix * inner.matrix)
        if self.symbolic and inner.symbolic:
            inner_comps = inner.as_polymap().components
            comps = [c.substitute(inner_comps)
                     for c in self.as_polymap().components]
            return VectorMap.polymap(comps)
        outer = self
        mapping = {}
        for point in itertools.product(self.spec.elements(), repeat=self.n):
            mapping[point] = outer(inner(point))
        return VectorMap.table(self.spec, self.n, mapping)

    def add(self, other: "VectorMap") -> "VectorMap":
        """Pointwise sum."""
        if self.spec != other.spec or self.n != other.n:
            raise ValueError("cannot add maps on different spaces")
        if self.form == "linear" and other.form == "linear":
            return VectorMap.linear(self.matrix + other.matrix)
        if self.symbolic and other.symbolic:
            a = self.as_polymap().components
            b = other.as_polymap().components
            return VectorMap.polymap([p + q for p, q in zip(a, b)])
        mapping = {}
        for point in itertools.product(self.spec.elements(), repeat=self.n):
            mapping[point] = tuple(x + y for x, y in zip(self(point), other(point)))
        return VectorMap.table(self.spec, self.n, mapping)

    def __repr__(self):
        return "VectorMap(%s, %s^%d)" % (self.form, self.spec, self.n)


# ---------------------------------------------------------------------------
# symbolic machinery


def _fits_exact_regime(P: MultiPoly) -> bool:
    if not P.spec.is_finite:
        return True
    q = P.spec.order
    return all(d < q for d in P.per_variable_degrees())


def find_nonzero_point(P: MultiPoly):
    """A point where the nonzero polynomial P does not vanish.

    Greedy coordinate specialization; complete whenever the per-variable
    degrees are below the field size (always, over the rationals).
    """
    spec = P.spec
    cur = P
    point = []
    for i in range(P.nvars):
        for val in _value_stream(spec):
            nxt = cur.substitute_var(i, val)
            if not nxt.is_zero():
                point.append(val)
                cur = nxt
                break
        else:
            raise UndecidableError("no nonzero specialization found")
    return tuple(point)


def _value_stream(spec):
    if spec.is_finite:
        return spec.elements()
    return [spec.from_int(k) for k in
            (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7)]


def _poly_pair_verdict(lhs: MultiPoly, rhs: MultiPoly, cap: int):
    """Compare two polynomials as functions.

    Returns (verdict, witness_point, exact); witness_point is a tuple in the
    joint variables when the functions provably differ.
    """
    diff = lhs - rhs
    if diff.is_zero():
        if _fits_exact_regime(lhs):
            return HOLDS, None, True
        return SUFFICIENT_ONLY, None, False
    if _fits_exact_regime(diff):
        return FAILS, find_nonzero_point(diff), True
    spec = diff.spec
    if spec.is_finite and spec.order ** diff.nvars <= cap:
        for point in itertools.product(spec.elements(), repeat=diff.nvars):
            if not diff.evaluate(point).is_zero():
                return FAILS, point, True
        return HOLDS, None, True
    raise UndecidableError(
        "polynomial comparison is outside the exact regime and the "
        "exhaustive fallback exceeds the cap")


@dataclass
class CheckResult:
    """Outcome of a pair-condition check."""

    verdict: str
    witness: Optional[tuple]  # (x, y, t) on failure
    exact: bool
    mode: str

    @property
    def passed(self) -> bool:
        return self.verdict in (HOLDS, SUFFICIENT_ONLY)


def _condition_polynomials(P, phi, psi):
    """P(x + t y) and P(phi(x) + t psi(y)) in the 2n+1 joint variables."""
    spec, n = P.spec, P.nvars
    big = 2 * n + 1
    t = MultiPoly.variable(spec, big, 2 * n)
    xs = [MultiPoly.variable(spec, big, i) for i in range(n)]
    ys = [MultiPoly.variable(spec, big, n + i) for i in range(n)]
    lhs = P.substitute([x + t * y for x, y in zip(xs, ys)])
    phi_c = [c.embed(big, 0) for c in phi.as_polymap().components]
    psi_c = [c.substitute(ys) for c in psi.as_polymap().components]
    rhs = P.substitute([p + t * q for p, q in zip(phi_c, psi_c)])
    return lhs, rhs


def check_pair(P: MultiPoly, phi: VectorMap, psi: VectorMap,
               mode: str = "auto", cap: int = DEFAULT_TRIPLE_CAP,
               samples: int = DEFAULT_SAMPLES,
               seed: int = DEFAULT_SEED) -> CheckResult:
    """Check P(x + t y) = P(phi(x) + t psi(y)) for all x, y, t.

    Modes: "exhaustive" sweeps every triple over a finite field (exact, with
    a counterexample witness on failure); "symbolic" compares canonical
    polynomials as described in the module docs; "sampled" is randomized
    falsification only.  "auto" picks symbolic when both maps have a
    polynomial form, else exhaustive.
    """
    spec, n = P.spec, P.nvars
    if phi.n != n or psi.n != n or phi.spec != spec or psi.spec != spec:
        raise ValueError("maps do not act on the domain of P")
    if mode == "auto":
        mode = "symbolic" if (phi.symbolic and psi.symbolic) else "exhaustive"

    if mode == "symbolic":
        if not (phi.symbolic and psi.symbolic):
            raise ValueError("symbolic mode needs polynomial or linear maps")
        lhs, rhs = _condition_polynomials(P, phi, psi)
        verdict, point, exact = _poly_pair_verdict(lhs, rhs, cap)
        witness = None
        if point is not None:
            witness = (point[:n], point[n:2 * n], point[2 * n])
        return CheckResult(verdict, witness, exact, mode)

    if mode == "exhaustive":
        if not spec.is_finite:
            raise UndecidableError("exhaustive check needs a finite field")
        total = spec.order ** (2 * n + 1)
        if total > cap:
            raise UndecidableError(
                "sweeping %d triples exceeds the cap of %d" % (total, cap))
        elems = spec.elements()
        for x in itertools.product(elems, repeat=n):
            px = phi(x)
            for y in itertools.product(elems, repeat=n):
                py = psi(y)
                for lam in elems:
                    left = P.evaluate([a + lam * b for a, b in zip(x, y)])
                    right = P.evaluate([a + lam * b for a, b in zip(px, py)])
                    if left != right:
                        return CheckResult(FAILS, (x, y, lam), True, mode)
        return CheckResult(HOLDS, None, True, mode)

    if mode == "sampled":
        rng = random.Random(seed)
        if not spec.is_finite:
            draw = lambda: spec.from_int(rng.randint(-50, 50))
        else:
            elems = spec.elements()
            draw = lambda: rng.choice(elems)
        for _ in range(samples):
            x = tuple(draw() for _ in range(n))
            y = tuple(draw() for _ in range(n))
            lam = draw()
            left = P.evaluate([a + lam * b for a, b in zip(x, y)])
            right = P.evaluate([a + lam * b for a, b in zip(phi(x), psi(y))])
            if left != right:
                return CheckResult(FAILS, (x, y, lam), True, mode)
        return CheckResult(SUFFICIENT_ONLY, None, False, mode)

    raise ValueError("unknown mode %r" % mode)


def preserves(P: MultiPoly, phi: VectorMap, mode: str = "auto",
              cap: int = DEFAULT_TRIPLE_CAP, samples: int = DEFAULT_SAMPLES,
              seed: int = DEFAULT_SEED) -> bool:
    """Whether P(phi(x)) = P(x) as functions; the t = 0 slice of check_pair."""
    spec, n = P.spec, P.nvars
    if mode == "auto":
        mode = "symbolic" if phi.symbolic else "exhaustive"
    if mode == "symbolic":
        composed = P.substitute(list(phi.as_polymap().components))
        verdict, _, _ = _poly_pair_verdict(composed, P, cap)
        return verdict in (HOLDS, SUFFICIENT_ONLY)
    if mode == "exhaustive":
        if not spec.is_finite:
            raise UndecidableError("exhaustive check needs a finite field")
        if spec.order ** n > cap:
            raise UndecidableError("sweep exceeds the cap")
        for x in itertools.product(spec.elements(), repeat=n):
            if P.evaluate(phi(x)) != P.evaluate(x):
                return False
        return True
    if mode == "sampled":
        rng = random.Random(seed)
        if spec.is_finite:
            elems = spec.elements()
            draw = lambda: rng.choice(elems)
        else:
            draw = lambda: spec.from_int(rng.randint(-50, 50))
        for _ in range(samples):
            x = tuple(draw() for _ in range(n))
            if P.evaluate(phi(x)) != P.evaluate(x):
                return False
        return True
    raise ValueError("unknown mode %r" % mode)


# ---------------------------------------------------------------------------
# linearization and quotient-map extraction


def linearize_mod_radical(P: MultiPoly, psi: VectorMap, span: GradientBasis,
                          cap: int = DEFAULT_TRIPLE_CAP) -> VectorMap:
    """The linear map x -> sum_i l_i(psi(x)) e_i built from a gradient basis
    l_1..l_d at the span's witness points and its delta-dual vectors e_i.

    When the pair condition and the dimension condition hold, this map is
    linear, kills the radical, and agrees with psi modulo the radical.  Its
    linearity is verified, never assumed: the candidate matrix is read off
    the standard basis and then checked against the defining expression
    (symbolically for polynomial maps, exhaustively for tables).  A failed
    verification signals a hypothesis violation and raises LinearityError.
    """
    spec, n = P.spec, P.nvars
    ls = span.witness_functionals()
    es = dual_extend(spec, ls) if ls else []
    zero = spec.zero()

    def tilde(vector):
        image = psi(vector)
        out = [zero] * n
        for l, e in zip(ls, es):
            coeff = zero
            for a, b in zip(l, image):
                coeff = coeff + a * b
            if not coeff.is_zero():
                out = [o + coeff * ec for o, ec in zip(out, e)]
        return tuple(out)

    basis = [tuple(spec.one() if j == i else zero for j in range(n))
             for i in range(n)]
    columns = [tilde(b) for b in basis]
    candidate = Matrix.from_rows(
        spec, [[columns[c][r] for c in range(n)] for r in range(n)], ncols=n)

    if psi.symbolic:
        psi_c = psi.as_polymap().components
        for r in range(n):
            expr = MultiPoly.zero(spec, n)
            for l, e in zip(ls, es):
                if e[r].is_zero():
                    continue
                form = MultiPoly.zero(spec, n)
                for j in range(n):
                    if not l[j].is_zero():
                        form = form + psi_c[j] * l[j]
                expr = expr + form * e[r]
            linear_row = MultiPoly(spec, n, {
                tuple(1 if j == c else 0 for j in range(n)): candidate[r, c]
                for c in range(n) if not candidate[r, c].is_zero()})
            verdict, _, _ = _poly_pair_verdict(expr, linear_row, cap)
            if verdict == FAILS:
                raise LinearityError(
                    "the gradient-functional expression for coordinate %d "
                    "is not linear; the pair hypotheses do not hold" % (r + 1))
    else:
        if spec.order ** n > cap:
            raise UndecidableError("table linearity sweep exceeds the cap")
        for x in itertools.product(spec.elements(), repeat=n):
            if tilde(x) != candidate.apply(x):
                raise LinearityError(
                    "the gradient-functional expression disagrees with its "
                    "linear candidate at %r" % (x,))
    return VectorMap.linear(candidate)


@dataclass
class VerificationRecord:
    """Which conclusions of the extraction were verified."""

    linear: bool = False
    invertible: bool = False
    intertwines: bool = False
    preserves_induced: bool = False
    unique: bool = False

    def all_passed(self) -> bool:
        return (self.linear and self.invertible and self.intertwines
                and self.preserves_induced and self.unique)


@dataclass
class ExtractionResult:
    """The induced quotient map and its verification record."""

    quotient_matrix: Matrix
    linearized: VectorMap
    report: RadicalReport
    check: CheckResult
    verified: VerificationRecord


def _projected_maps_agree(quotient, inner: VectorMap, t_matrix: Matrix,
                          cap: int) -> bool:
    """projection . inner = t_matrix . projection, as functions."""
    spec = inner.spec
    n = inner.n
    proj = quotient.projection
    target = t_matrix * proj
    if inner.symbolic:
        comps = inner.as_polymap().components
        for r in range(proj.nrows):
            lhs = MultiPoly.zero(spec, n)
            for e in range(n):
                if not proj[r, e].is_zero():
                    lhs = lhs + comps[e] * proj[r, e]
            rhs = MultiPoly(spec, n, {
                tuple(1 if j == c else 0 for j in range(n)): target[r, c]
                for c in range(n) if not target[r, c].is_zero()})
            verdict, _, _ = _poly_pair_verdict(lhs, rhs, cap)
            if verdict == FAILS:
                return False
        return True
    if spec.order ** n > cap:
        raise UndecidableError("projection agreement sweep exceeds the cap")
    for x in itertools.product(spec.elements(), repeat=n):
        if proj.apply(inner(x)) != target.apply(x):
            return False
    return True


def extract_quotient_map(P: MultiPoly, phi: VectorMap, psi: VectorMap,
                         report: Optional[RadicalReport] = None,
                         span: Optional[GradientBasis] = None,
                         mode: str = "auto",
                         cap: int = DEFAULT_TRIPLE_CAP,
                         seed: int = DEFAULT_SEED) -> ExtractionResult:
    """Extract and verify the unique linear map on F^n modulo the radical
    through which both phi and psi factor.

    Refuses with a precise diagnostic when any hypothesis fails: P must be
    homogeneous with deg(P) < |F| over finite fields, the dimension
    condition must hold, and the pair condition must pass.
    """
    spec, n = P.spec, P.nvars
    homogeneous, _ = P.is_homogeneous()
    if not homogeneous:
        raise PreconditionError("P is homogeneous",
                                "inhomogeneous polynomials are outside the theory")
    degree = P.total_degree()
    if spec.is_finite and degree is not None and degree >= spec.order:
        raise PreconditionError("deg(P) < |F|",
                                "deg(P) = %d >= |F| = %d" % (degree, spec.order))
    if report is None:
        report = compute_radical(P, seed=seed)
    if report.inconclusive:
        raise PreconditionError("radical computation is conclusive",
                                "enumeration cap exceeded")
    if not report.dim_condition_holds:
        raise PreconditionError(
            "dim(gradient span) + dim(radical) = n",
            "%d + %d != %d" % (report.span.dim, report.radical.dim, n))
    chk = check_pair(P, phi, psi, mode=mode, cap=cap, seed=seed)
    if not chk.passed:
        raise PreconditionError("the pair condition holds",
                                "counterexample %r" % (chk.witness,))

    basis = span if span is not None else report.span
    linearized = linearize_mod_radical(P, psi, basis, cap=cap)
    M = linearized.matrix
    quotient = report.quotient
    t_matrix = quotient.projection * M * quotient.section

    record = VerificationRecord()
    record.linear = True
    _, rank, _ = rref(t_matrix)
    record.invertible = rank == t_matrix.nrows
    record.intertwines = (
        _projected_maps_agree(quotient, phi, t_matrix, cap)
        and _projected_maps_agree(quotient, psi, t_matrix, cap))

    induced = report.induced
    qdim = quotient.dim
    images = []
    for r in range(qdim):
        terms = {}
        for c in range(qdim):
            if not t_matrix[r, c].is_zero():
                exps = tuple(1 if j == c else 0 for j in range(qdim))
                terms[exps] = t_matrix[r, c]
        images.append(MultiPoly(spec, qdim, terms))
    composed = induced.substitute(images) if qdim else induced
    verdict, _, _ = _poly_pair_verdict(composed, induced, cap)
    record.preserves_induced = verdict != FAILS

    # the projection has full row rank, so T is pinned by T . proj = proj . M;
    # the kill check on the radical makes that identity exact
    kills = all(all(x.is_zero() for x in M.apply(v))
                for v in report.radical.basis_vectors())
    record.unique = kills and (t_matrix * quotient.projection
                               == quotient.projection * M)
    return ExtractionResult(t_matrix, linearized, report, chk, record)


def lifted_pair_condition(P: MultiPoly, phi: VectorMap, psi: VectorMap,
                          quotient_map: Matrix,
                          report: Optional[RadicalReport] = None,
                          mode: str = "auto",
                          cap: int = DEFAULT_TRIPLE_CAP,
                          seed: int = DEFAULT_SEED) -> bool:
    """Check the quotient-level condition
    induced(proj(x) + t y) = induced(proj(phi(x)) + t quotient_map(y))
    for all x in F^n, y in quotient coordinates and scalars t.

    ``quotient_map`` is expected to intertwine with psi through the
    projection; a corrupted matrix simply makes the condition fail.
    """
    spec, n = P.spec, P.nvars
    if report is None:
        report = compute_radical(P, seed=seed)
    quotient, induced = report.quotient, report.induced
    qdim = quotient.dim
    if quotient_map.nrows != qdim or quotient_map.ncols != qdim:
        raise ValueError("quotient map must be %d x %d" % (qdim, qdim))
    if mode == "auto":
        mode = "symbolic" if phi.symbolic else "exhaustive"

    if mode == "symbolic":
        big = n + qdim + 1
        xs = [MultiPoly.variable(spec, big, i) for i in range(n)]
        ys = [MultiPoly.variable(spec, big, n + r) for r in range(qdim)]
        t = MultiPoly.variable(spec, big, n + qdim)
        proj = quotient.projection
        phi_c = [c.substitute(xs) for c in phi.as_polymap().components]
        lhs_imgs, rhs_imgs = [], []
        for r in range(qdim):
            proj_x = MultiPoly.zero(spec, big)
            proj_phi = MultiPoly.zero(spec, big)
            for e in range(n):
                if not proj[r, e].is_zero():
                    proj_x = proj_x + xs[e] * proj[r, e]
                    proj_phi = proj_phi + phi_c[e] * proj[r, e]
            mapped_y = MultiPoly.zero(spec, big)
            for c in range(qdim):
                if not quotient_map[r, c].is_zero():
                    mapped_y = mapped_y + ys[c] * quotient_map[r, c]
            lhs_imgs.append(proj_x + t * ys[r])
            rhs_imgs.append(proj_phi + t * mapped_y)
        lhs = induced.substitute(lhs_imgs)
        rhs = induced.substitute(rhs_imgs)
        verdict, _, _ = _poly_pair_verdict(lhs, rhs, cap)
        return verdict != FAILS

    if not spec.is_finite:
        raise UndecidableError("exhaustive lift check needs a finite field")
    total = spec.order ** (n + qdim + 1)
    if total > cap:
        raise UndecidableError(
            "sweeping %d triples exceeds the cap of %d" % (total, cap))
    elems = spec.elements()
    for x in itertools.product(elems, repeat=n):
        px = quotient.project(x)
        pphix = quotient.project(phi(x))
        for y in itertools.product(elems, repeat=qdim):
            my = quotient_map.apply(y)
            for lam in elems:
                left = induced.evaluate([a + lam * b for a, b in zip(px, y)])
                right = induced.evaluate([a + lam * b for a, b in zip(pphix, my)])
                if left != right:
                    return False
    return True
